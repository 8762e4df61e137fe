//! Report objects. JSON output serialises them; the table view is rendered
//! from the same values.

use std::fmt::Write;

use nilcoh::chevalley::{cohomology_dims, euler_characteristic, poincare_duality_check};
use nilcoh::cstruct::Classification;
use nilcoh::dolbeault::DolbeaultComplex;
use nilcoh::fibration::{
    adapted_series, check_series, closed_ascending_series, conjecture_status, BundleKind,
    ConjectureStatus, SeriesReport, StepVerdict, Verdict,
};
use nilcoh::spectral::{hochschild_serre, Page, SpectralTable};
use nilcoh::{catalog, LieAlgebra, Subspace};
use serde::Serialize;

use crate::args::{PageRange, RunConfig};
use crate::input::{load_filtration, parse_ideal, CliResult, Resolved};

pub trait Render {
    fn render(&self, out: &mut String);
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Right-aligned grid with `p` down the side and `q` across.
fn grid(out: &mut String, corner: &str, cells: &[Vec<usize>]) {
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let width = cells
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .chain((0..cols).map(|q| format!("q={q}").len()))
        .max()
        .unwrap_or(1);
    let side = cells.len().saturating_sub(1).to_string().len() + 2;
    let side = side.max(corner.len());
    let _ = write!(out, "{corner:<side$}");
    for q in 0..cols {
        let _ = write!(out, " {:>width$}", format!("q={q}"));
    }
    out.push('\n');
    for (p, row) in cells.iter().enumerate() {
        let _ = write!(out, "{:<side$}", format!("p={p}"));
        for x in row {
            let _ = write!(out, " {x:>width$}");
        }
        out.push('\n');
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    dim: usize,
    level: String,
    jacobi_ok: bool,
    nilpotent: bool,
    nu: Option<usize>,
    center_dim: usize,
    descending_dims: Vec<usize>,
    ascending_dims: Vec<usize>,
    complex_structure: Option<StructureCheck>,
}

#[derive(Serialize)]
struct StructureCheck {
    square_is_minus_one: bool,
    integrable: bool,
    nijenhuis_vanishes: bool,
    onezero_closed: bool,
    rational: bool,
}

impl Render for CheckReport {
    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "dimension: {} over {}", self.dim, self.level);
        let _ = writeln!(out, "Jacobi identity: {}", yes_no(self.jacobi_ok));
        let _ = writeln!(out, "nilpotent: {}", yes_no(self.nilpotent));
        if let Some(nu) = self.nu {
            let _ = writeln!(out, "step length: {nu}");
        }
        let _ = writeln!(out, "centre dimension: {}", self.center_dim);
        let _ = writeln!(out, "descending central series dims: {}", join(&self.descending_dims));
        let _ = writeln!(out, "ascending central series dims: {}", join(&self.ascending_dims));
        match &self.complex_structure {
            None => out.push_str("complex structure: none\n"),
            Some(s) => {
                let _ = writeln!(out, "J^2 = -1: {}", yes_no(s.square_is_minus_one));
                let _ = writeln!(
                    out,
                    "integrable: {} (Nijenhuis {}, g^{{1,0}} closed {})",
                    yes_no(s.integrable),
                    yes_no(s.nijenhuis_vanishes),
                    yes_no(s.onezero_closed)
                );
                let _ = writeln!(out, "J rational: {}", yes_no(s.rational));
            }
        }
    }
}

pub fn check(input: &Resolved) -> CliResult<CheckReport> {
    let l = &input.algebra;
    let complex_structure = match &input.j {
        None => None,
        Some(j) => {
            let nijenhuis_vanishes = j.nijenhuis_vanishes(l)?;
            let onezero_closed = j.onezero_is_closed(l)?;
            Some(StructureCheck {
                square_is_minus_one: true,
                integrable: j.is_integrable(l)?,
                nijenhuis_vanishes,
                onezero_closed,
                rational: j.is_rational(),
            })
        }
    };
    let v = l.validate();
    Ok(CheckReport {
        dim: l.dim(),
        level: l.level().to_string(),
        jacobi_ok: v.jacobi_ok,
        nilpotent: v.nilpotent,
        nu: v.nu,
        center_dim: l.center().dim(),
        descending_dims: l.descending_series()?.steps.iter().map(Subspace::dim).collect(),
        ascending_dims: l.ascending_series()?.steps.iter().map(Subspace::dim).collect(),
        complex_structure,
    })
}

#[derive(Serialize)]
pub struct BettiReport {
    betti: Vec<usize>,
    euler_characteristic: i64,
    poincare_duality: bool,
}

impl Render for BettiReport {
    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "betti numbers b_0..b_{}:", self.betti.len() - 1);
        let _ = writeln!(out, "{}", join(&self.betti));
        let _ = writeln!(out, "euler characteristic: {}", self.euler_characteristic);
        let _ = writeln!(out, "poincare duality: {}", yes_no(self.poincare_duality));
    }
}

pub fn betti(l: &LieAlgebra) -> CliResult<BettiReport> {
    let betti = cohomology_dims(l)?;
    Ok(BettiReport {
        euler_characteristic: euler_characteristic(&betti),
        poincare_duality: poincare_duality_check(&betti),
        betti,
    })
}

#[derive(Serialize)]
pub struct StatusSummary {
    verdict: Verdict,
    criterion: Option<nilcoh::fibration::Criterion>,
    reason: Option<String>,
}

impl From<&ConjectureStatus> for StatusSummary {
    fn from(s: &ConjectureStatus) -> Self {
        StatusSummary {
            verdict: s.verdict,
            criterion: s.criterion,
            reason: s.reason.clone(),
        }
    }
}

fn criterion_name(c: Option<nilcoh::fibration::Criterion>) -> String {
    c.and_then(|c| serde_json::to_value(c).ok())
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_else(|| "none".into())
}

#[derive(Serialize)]
pub struct HodgeReport {
    m: usize,
    /// RREF basis of `g^{1,0}`; forms are expanded in its dual basis.
    onezero_basis: Vec<Vec<String>>,
    /// `h[p][q]`
    hodge: Vec<Vec<usize>>,
    totals: Vec<usize>,
    betti: Vec<usize>,
    serre_duality: bool,
    froelicher_inequality: bool,
    status: StatusSummary,
}

impl Render for HodgeReport {
    fn render(&self, out: &mut String) {
        out.push_str("g^{1,0} spanned by (dual basis used for the forms):\n");
        for v in &self.onezero_basis {
            let _ = writeln!(out, "  ({})", v.join(", "));
        }
        let _ = writeln!(out, "Dolbeault numbers h^{{p,q}} of the Lie algebra (m = {}):", self.m);
        grid(out, "h", &self.hodge);
        let _ = writeln!(out, "totals by degree: {}", join(&self.totals));
        let _ = writeln!(out, "betti numbers:    {}", join(&self.betti));
        let _ = writeln!(out, "serre duality: {}", yes_no(self.serre_duality));
        let _ = writeln!(out, "froelicher inequality: {}", yes_no(self.froelicher_inequality));
        match self.status.verdict {
            Verdict::Certified => {
                let _ = writeln!(
                    out,
                    "* certified equal to the Dolbeault numbers of the nilmanifold for the \
                     coordinate rational structure (criterion: {})",
                    criterion_name(self.status.criterion)
                );
            }
            Verdict::Unknown => {
                let _ = writeln!(
                    out,
                    "* NOT certified: these are Lie-algebra numbers only and need not equal \
                     those of the nilmanifold ({})",
                    self.status.reason.as_deref().unwrap_or("no criterion applies")
                );
            }
        }
    }
}

pub fn hodge(input: &Resolved) -> CliResult<HodgeReport> {
    let (l, j) = (&input.algebra, input.structure()?);
    let dc = DolbeaultComplex::new(l, j)?;
    dc.verify_identities()?;
    let h = dc.hodge_numbers();
    let betti = cohomology_dims(l)?;
    let status = conjecture_status(l, j, &[])?;
    Ok(HodgeReport {
        m: h.m,
        onezero_basis: basis_strings(j.onezero()),
        totals: h.totals(),
        serre_duality: h.serre_duality_check(),
        froelicher_inequality: h.froelicher_inequality_check(&betti),
        hodge: h.h,
        betti,
        status: (&status).into(),
    })
}

#[derive(Serialize)]
pub struct PagesView {
    pages: Vec<Page>,
    infinity: Page,
    stable_page: usize,
    abutment: Vec<usize>,
}

impl PagesView {
    fn new(table: SpectralTable, range: Option<PageRange>) -> Self {
        PagesView {
            pages: table
                .pages
                .into_iter()
                .filter(|p| p.r.is_none_or(|r| range.is_none_or(|g| g.contains(r))))
                .collect(),
            infinity: table.infinity,
            stable_page: table.stable_page,
            abutment: table.abutment,
        }
    }
}

impl Render for PagesView {
    fn render(&self, out: &mut String) {
        for page in &self.pages {
            let _ = writeln!(out, "E_{}:", page.r.unwrap_or_default());
            grid(out, "", &page.cells);
        }
        out.push_str("E_inf:\n");
        grid(out, "", &self.infinity.cells);
        let _ = writeln!(out, "stable from page: {}", self.stable_page);
        let _ = writeln!(out, "abutment: {}", join(&self.abutment));
    }
}

#[derive(Serialize)]
pub struct FroelicherReport {
    #[serde(flatten)]
    pages: PagesView,
    degenerates_at_first_page: bool,
}

impl Render for FroelicherReport {
    fn render(&self, out: &mut String) {
        out.push_str("Frölicher spectral sequence (p = holomorphic degree):\n");
        self.pages.render(out);
        let _ = writeln!(
            out,
            "degenerates at the first page: {}",
            yes_no(self.degenerates_at_first_page)
        );
    }
}

pub fn froelicher(input: &Resolved, range: Option<PageRange>) -> CliResult<FroelicherReport> {
    let (l, j) = (&input.algebra, input.structure()?);
    let table = nilcoh::spectral::froelicher(l, j)?;
    Ok(FroelicherReport {
        degenerates_at_first_page: table.stable_page == 1,
        pages: PagesView::new(table, range),
    })
}

#[derive(Serialize)]
pub struct HochschildSerreReport {
    ideal_dim: usize,
    ideal_basis: Vec<Vec<String>>,
    central: bool,
    quotient_betti: Vec<usize>,
    ideal_betti: Vec<usize>,
    tensor_check: Option<bool>,
    #[serde(flatten)]
    pages: PagesView,
}

impl Render for HochschildSerreReport {
    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "ideal of dimension {} spanned by:", self.ideal_dim);
        for v in &self.ideal_basis {
            let _ = writeln!(out, "  ({})", v.join(", "));
        }
        let _ = writeln!(out, "central: {}", yes_no(self.central));
        let _ = writeln!(out, "betti of the quotient: {}", join(&self.quotient_betti));
        let _ = writeln!(out, "betti of the ideal:    {}", join(&self.ideal_betti));
        if let Some(ok) = self.tensor_check {
            let _ = writeln!(out, "E_2 = H(g/h) ⊗ H(h): {}", yes_no(ok));
        }
        out.push_str("Hochschild-Serre spectral sequence (p = quotient degree):\n");
        self.pages.render(out);
    }
}

fn basis_strings(s: &Subspace) -> Vec<Vec<String>> {
    s.basis_vectors()
        .map(|v| v.iter().map(ToString::to_string).collect())
        .collect()
}

pub fn hochschild_serre_report(
    l: &LieAlgebra,
    ideal: &str,
    range: Option<PageRange>,
) -> CliResult<HochschildSerreReport> {
    let h = parse_ideal(l, ideal)?;
    let hs = hochschild_serre(l, &h)?;
    Ok(HochschildSerreReport {
        ideal_dim: h.dim(),
        ideal_basis: basis_strings(&h),
        central: hs.central,
        quotient_betti: hs.quotient_betti,
        ideal_betti: hs.ideal_betti,
        tensor_check: hs.tensor_check,
        pages: PagesView::new(hs.table, range),
    })
}

#[derive(Serialize)]
pub struct SeriesView {
    name: String,
    dims: Vec<usize>,
    steps: Vec<StepVerdict>,
    kind: BundleKind,
    bases: Vec<Vec<Vec<String>>>,
}

impl SeriesView {
    fn new(name: String, report: &SeriesReport) -> Self {
        SeriesView {
            name,
            dims: report.dims.clone(),
            steps: report.steps.clone(),
            kind: report.kind,
            bases: report.filtration.iter().map(basis_strings).collect(),
        }
    }
}

impl Render for SeriesView {
    fn render(&self, out: &mut String) {
        let kind = match self.kind {
            BundleKind::None => "not a torus bundle series",
            BundleKind::TorusBundle => "torus bundle series",
            BundleKind::PrincipalTorusBundle => "principal torus bundle series",
        };
        let _ = writeln!(out, "{}: dims {} ({kind})", self.name, join(&self.dims));
        out.push_str("  step dim rational ideal J-invariant abelian central\n");
        for s in &self.steps {
            let _ = writeln!(
                out,
                "  {:>4} {:>3} {:>8} {:>5} {:>11} {:>7} {:>7}",
                s.index,
                s.dim,
                yes_no(s.rational),
                yes_no(s.ideal),
                yes_no(s.j_invariant),
                yes_no(s.abelian_quotient),
                yes_no(s.central_quotient)
            );
        }
    }
}

#[derive(Serialize)]
pub struct SeriesListReport {
    series: Vec<SeriesView>,
}

impl Render for SeriesListReport {
    fn render(&self, out: &mut String) {
        for s in &self.series {
            s.render(out);
        }
    }
}

pub fn series(input: &Resolved, config: &RunConfig) -> CliResult<SeriesListReport> {
    let (l, j) = (&input.algebra, input.structure()?);
    j.require_integrable(l)?;
    let candidates: Vec<(String, Vec<Subspace>)> = match &config.filtration {
        Some(path) => vec![load_filtration(path, l.dim())?],
        None => {
            let mut adapted = adapted_series(l, j)?;
            adapted.reverse();
            vec![
                ("ascending central series".into(), l.ascending_series()?.steps),
                ("J-adapted descending series".into(), adapted),
                ("J-closed ascending central series".into(), closed_ascending_series(l, j)?),
            ]
        }
    };
    let series = candidates
        .into_iter()
        .map(|(name, f)| Ok(SeriesView::new(name, &check_series(l, j, &f)?)))
        .collect::<CliResult<_>>()?;
    Ok(SeriesListReport { series })
}

#[derive(Serialize)]
pub struct ClassifyReport {
    #[serde(flatten)]
    classification: Classification,
    integrable: bool,
}

impl Render for ClassifyReport {
    fn render(&self, out: &mut String) {
        let c = &self.classification;
        let _ = writeln!(out, "integrable: {}", yes_no(self.integrable));
        let _ = writeln!(out, "abelian: {}", yes_no(c.abelian));
        let _ = writeln!(out, "complex parallelisable: {}", yes_no(c.parallelisable));
        let _ = writeln!(out, "rational: {}", yes_no(c.rational));
        let _ = writeln!(out, "nilpotent: {}", yes_no(c.nilpotent_j));
    }
}

pub fn classify(input: &Resolved) -> CliResult<ClassifyReport> {
    let (l, j) = (&input.algebra, input.structure()?);
    Ok(ClassifyReport {
        integrable: j.is_integrable(l)?,
        classification: j.classify(l)?,
    })
}

#[derive(Serialize)]
pub struct StatusReport {
    verdict: Verdict,
    criterion: Option<nilcoh::fibration::Criterion>,
    evidence: Option<String>,
    reason: Option<String>,
    scope: String,
    classification: Classification,
    candidates: Vec<SeriesView>,
}

impl Render for StatusReport {
    fn render(&self, out: &mut String) {
        let verdict = match self.verdict {
            Verdict::Certified => "certified",
            Verdict::Unknown => "unknown",
        };
        let _ = writeln!(out, "verdict: {verdict}");
        if self.criterion.is_some() {
            let _ = writeln!(out, "criterion: {}", criterion_name(self.criterion));
        }
        if let Some(e) = &self.evidence {
            let _ = writeln!(out, "evidence: {e}");
        }
        if let Some(r) = &self.reason {
            let _ = writeln!(out, "reason: {r}");
        }
        let _ = writeln!(out, "scope: {}", self.scope);
        out.push_str("candidates:\n");
        for c in &self.candidates {
            c.render(out);
        }
    }
}

pub fn status(input: &Resolved, config: &RunConfig) -> CliResult<StatusReport> {
    let (l, j) = (&input.algebra, input.structure()?);
    let extra = match &config.filtration {
        Some(path) => vec![load_filtration(path, l.dim())?],
        None => Vec::new(),
    };
    let s = conjecture_status(l, j, &extra)?;
    Ok(StatusReport {
        verdict: s.verdict,
        criterion: s.criterion,
        evidence: s.evidence.clone(),
        reason: s.reason.clone(),
        scope: s.scope.clone(),
        classification: s.classification,
        candidates: s
            .candidates
            .iter()
            .map(|c| SeriesView::new(c.name.clone(), &c.report))
            .collect(),
    })
}

#[derive(Serialize)]
pub struct CatalogRow {
    name: String,
    dim: usize,
    description: String,
    structures: Vec<String>,
}

#[derive(Serialize)]
pub struct CatalogReport {
    entries: Vec<CatalogRow>,
}

impl Render for CatalogReport {
    fn render(&self, out: &mut String) {
        for e in &self.entries {
            let _ = write!(out, "{:<12} dim {}  {}", e.name, e.dim, e.description);
            if !e.structures.is_empty() {
                let _ = write!(out, "  [J: {}]", e.structures.join(", "));
            }
            out.push('\n');
        }
    }
}

pub fn catalog_list() -> CatalogReport {
    CatalogReport {
        entries: catalog::all()
            .into_iter()
            .map(|e| CatalogRow {
                dim: e.algebra.dim(),
                structures: e.structures.iter().map(|s| s.name.clone()).collect(),
                name: e.name,
                description: e.description,
            })
            .collect(),
    }
}
