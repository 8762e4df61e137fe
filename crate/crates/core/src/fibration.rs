//! Rational J-invariant filtrations and the torus-bundle-series test.
//!
//! A filtration `0 = S^0 ⊂ S^1 ⊂ … ⊂ S^t = g` is a torus bundle series for
//! `J` when every step is rational for the rational structure spanned by the
//! coordinate basis and an ideal in the next step, every step is
//! J-invariant, and every quotient `S^i / S^{i-1}` is abelian. It is principal
//! if moreover `S^i / S^{i-1}` is central in `g / S^{i-1}`.
//!
//! Only a fixed list of candidate filtrations is examined; an `unknown`
//! status means none of them passed, not that no series exists.

use serde::Serialize;

use crate::cstruct::{Classification, ComplexStructure};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BundleKind {
    None,
    TorusBundle,
    PrincipalTorusBundle,
}

/// Verdicts for step `S^i` (`i ≥ 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepVerdict {
    pub index: usize,
    pub dim: usize,
    pub rational: bool,
    /// Ideal in the next step; vacuous for `S^t = g`.
    pub ideal: bool,
    pub j_invariant: bool,
    /// `[S^i, S^i] ⊆ S^{i-1}`.
    pub abelian_quotient: bool,
    /// `[S^i, g] ⊆ S^{i-1}`.
    pub central_quotient: bool,
}

impl StepVerdict {
    pub fn torus_bundle(&self) -> bool {
        self.rational && self.ideal && self.j_invariant && self.abelian_quotient
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    #[serde(skip)]
    pub filtration: Vec<Subspace>,
    pub dims: Vec<usize>,
    pub steps: Vec<StepVerdict>,
    pub kind: BundleKind,
}

/// `C^i_J = C^i + J C^i` for the descending central series, consecutive
/// repetitions removed: `g = C^0_J ⊋ … ⊋ 0`. Each step is re-checked to be a
/// J-invariant ideal.
pub fn adapted_series(l: &LieAlgebra, j: &ComplexStructure) -> Result<Vec<Subspace>> {
    j.require_integrable(l)?;
    let mut out: Vec<Subspace> = Vec::new();
    for c in l.descending_series()?.steps {
        let closed = j.closure(&c)?;
        if out.last() != Some(&closed) {
            out.push(closed);
        }
    }
    for (i, s) in out.iter().enumerate() {
        if !j.is_invariant(s)? || !l.is_ideal(s)? {
            return Err(Error::Internal(format!(
                "step {i} of the J-adapted descending series is not a J-invariant ideal"
            )));
        }
    }
    Ok(out)
}

/// The ascending central series with each step replaced by its J-closure.
pub fn closed_ascending_series(l: &LieAlgebra, j: &ComplexStructure) -> Result<Vec<Subspace>> {
    let mut out: Vec<Subspace> = Vec::new();
    for z in l.ascending_series()?.steps {
        let closed = j.closure(&z)?;
        if out.last() != Some(&closed) {
            out.push(closed);
        }
    }
    Ok(out)
}

/// Evaluates conditions (a), (b), (c), (c') on an ascending filtration from
/// `0` to `g`.
pub fn check_series(
    l: &LieAlgebra,
    j: &ComplexStructure,
    filtration: &[Subspace],
) -> Result<SeriesReport> {
    let n = l.dim();
    let (first, last) = match (filtration.first(), filtration.last()) {
        (Some(f), Some(g)) if filtration.len() >= 2 => (f, g),
        _ => {
            return Err(Error::MalformedFiltration(
                "a filtration needs at least the steps 0 and g".into(),
            ))
        }
    };
    if filtration.iter().any(|s| s.ambient_dim() != n) {
        return Err(Error::MalformedFiltration(format!(
            "every step must lie in a space of dimension {n}"
        )));
    }
    if !first.is_zero() || !last.is_full() {
        return Err(Error::MalformedFiltration(
            "a filtration must start at 0 and end at g".into(),
        ));
    }
    for w in filtration.windows(2) {
        if !w[0].is_subspace_of(&w[1])? {
            return Err(Error::MalformedFiltration(
                "filtration steps are not nested".into(),
            ));
        }
    }
    let g = Subspace::full(n);
    let t = filtration.len() - 1;
    let mut steps = Vec::with_capacity(t);
    for i in 1..=t {
        let s = &filtration[i];
        let below = &filtration[i - 1];
        let ideal = i == t || l.bracket_lands_in(s, &filtration[i + 1], s)?;
        steps.push(StepVerdict {
            index: i,
            dim: s.dim(),
            rational: s.is_rational(),
            ideal,
            j_invariant: j.is_invariant(s)?,
            abelian_quotient: l.bracket_lands_in(s, s, below)?,
            central_quotient: l.bracket_lands_in(s, &g, below)?,
        });
    }
    let kind = if !steps.iter().all(StepVerdict::torus_bundle) {
        BundleKind::None
    } else if steps.iter().all(|s| s.central_quotient) {
        BundleKind::PrincipalTorusBundle
    } else {
        BundleKind::TorusBundle
    };
    Ok(SeriesReport {
        dims: filtration.iter().map(Subspace::dim).collect(),
        filtration: filtration.to_vec(),
        steps,
        kind,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Criterion {
    #[serde(rename = "abelian-J")]
    AbelianJ,
    #[serde(rename = "parallelisable")]
    Parallelisable,
    #[serde(rename = "rational-J")]
    RationalJ,
    #[serde(rename = "torus-bundle-series")]
    TorusBundleSeries,
}

/// A named candidate filtration and its report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub name: String,
    pub report: SeriesReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureStatus {
    pub verdict: Verdict,
    pub criterion: Option<Criterion>,
    /// Name of the candidate in `candidates` that certified, if any.
    pub evidence: Option<String>,
    pub reason: Option<String>,
    pub classification: Classification,
    pub candidates: Vec<Candidate>,
    pub scope: String,
}

const SCOPE: &str = "valid for this complex structure and the rational structure spanned by the coordinate basis only";
pub const NO_CANDIDATE: &str = "no rational J-invariant candidate filtration";

/// Tries, in order: abelian J, complex parallelisable (both via the
/// ascending central series), rational J (via the adapted descending series),
/// then any passing candidate among the adapted series, the J-closed
/// ascending central series and the supplied filtrations.
pub fn conjecture_status(
    l: &LieAlgebra,
    j: &ComplexStructure,
    extra: &[(String, Vec<Subspace>)],
) -> Result<ConjectureStatus> {
    let classification = j.classify(l)?;
    let mut candidates = Vec::new();

    let ascending = l.ascending_series()?.steps;
    let ascending_report = check_series(l, j, &ascending)?;
    candidates.push(Candidate {
        name: "ascending central series".into(),
        report: ascending_report,
    });
    let mut adapted = adapted_series(l, j)?;
    adapted.reverse();
    candidates.push(Candidate {
        name: "J-adapted descending series".into(),
        report: check_series(l, j, &adapted)?,
    });
    candidates.push(Candidate {
        name: "J-closed ascending central series".into(),
        report: check_series(l, j, &closed_ascending_series(l, j)?)?,
    });
    for (name, filtration) in extra {
        candidates.push(Candidate {
            name: name.clone(),
            report: check_series(l, j, filtration)?,
        });
    }

    let principal = |c: &Candidate| c.report.kind == BundleKind::PrincipalTorusBundle;
    let passes = |c: &Candidate| c.report.kind != BundleKind::None;
    let rational_base = l.constants().level() == crate::arith::Level::Rational;

    let mut found: Option<(Criterion, usize)> = None;
    if classification.abelian && principal(&candidates[0]) {
        found = Some((Criterion::AbelianJ, 0));
    } else if classification.parallelisable && principal(&candidates[0]) {
        found = Some((Criterion::Parallelisable, 0));
    } else if classification.rational && rational_base && passes(&candidates[1]) {
        found = Some((Criterion::RationalJ, 1));
    } else if let Some(pos) = candidates.iter().skip(1).position(passes) {
        found = Some((Criterion::TorusBundleSeries, pos + 1));
    }
    Ok(match found {
        Some((criterion, pos)) => ConjectureStatus {
            verdict: Verdict::Certified,
            criterion: Some(criterion),
            evidence: Some(candidates[pos].name.clone()),
            reason: None,
            classification,
            candidates,
            scope: SCOPE.into(),
        },
        None => ConjectureStatus {
            verdict: Verdict::Unknown,
            criterion: None,
            evidence: None,
            reason: Some(NO_CANDIDATE.into()),
            classification,
            candidates,
            scope: SCOPE.into(),
        },
    })
}
