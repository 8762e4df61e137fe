//! Dimensions of the pages of the spectral sequence of a filtered cochain
//! complex, computed directly from
//!
//! ```text
//! Z_r^{p,q} = F^p A^{p+q} ∩ d⁻¹(F^{p+r} A^{p+q+1})
//! B_r^{p,q} = F^p A^{p+q} ∩ d(F^{p-r} A^{p+q-1})
//! E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + B_{r-1}^{p,q})
//! ```
//!
//! Instances: the Frölicher filtration by holomorphic degree and the
//! Hochschild–Serre filtration by an ideal.

use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::{cohomology_dims, euler_characteristic, CochainComplex, ExteriorBasis};
use crate::cstruct::ComplexStructure;
use crate::dolbeault::DolbeaultComplex;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{unit_vector, Matrix, Subspace};

/// A cochain complex `A^0 → … → A^N` with a descending filtration
/// `A^n = F^0 ⊇ F^1 ⊇ … ⊇ F^{P+1} = 0` preserved by `d`.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    complex: CochainComplex,
    /// `filtration[n][p] = F^p A^n` for `p = 0, …, P + 1`.
    filtration: Vec<Vec<Subspace>>,
    max_p: usize,
    max_q: usize,
}

/// `dim E_r^{p,q}` for `0 ≤ p ≤ P`, `0 ≤ q ≤ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Page {
    /// `None` for the limit page.
    pub r: Option<usize>,
    /// `cells[p][q]`
    pub cells: Vec<Vec<usize>>,
}

impl Page {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.cells
            .get(p)
            .and_then(|row| row.get(q))
            .copied()
            .unwrap_or(0)
    }

    /// `Σ_{p+q=n} dim E^{p,q}`.
    pub fn degree_totals(&self, top: usize) -> Vec<usize> {
        let mut out = vec![0; top + 1];
        for (p, row) in self.cells.iter().enumerate() {
            for (q, &x) in row.iter().enumerate() {
                if p + q <= top {
                    out[p + q] += x;
                }
            }
        }
        out
    }

    fn same_cells(&self, other: &Page) -> bool {
        self.cells == other.cells
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralTable {
    /// `E_0, E_1, …` up to the first page at which every later page agrees.
    pub pages: Vec<Page>,
    pub infinity: Page,
    /// First `r ≥ 1` with `E_r = E_{r+1} = E_{r+2}`.
    pub stable_page: usize,
    /// `dim H^n` of the total complex.
    pub abutment: Vec<usize>,
}

impl SpectralTable {
    pub fn page(&self, r: usize) -> &Page {
        self.pages.get(r).unwrap_or(&self.infinity)
    }
}

fn coordinate_filtration(
    dims: &[usize],
    max_p: usize,
    weight: impl Fn(usize, usize) -> usize,
) -> Vec<Vec<Subspace>> {
    dims.iter()
        .enumerate()
        .map(|(n, &dim)| {
            (0..=max_p + 1)
                .map(|p| Subspace::coordinate(dim, (0..dim).filter(|&pos| weight(n, pos) >= p)))
                .collect()
        })
        .collect()
}

impl FilteredComplex {
    /// `filtration[n][p]` must satisfy `F^0 = A^n`, `F^{P+1} = 0`, be
    /// nested, and be preserved by `d`.
    pub fn new(
        complex: CochainComplex,
        filtration: Vec<Vec<Subspace>>,
        max_q: usize,
    ) -> Result<Self> {
        let dims = complex.dims().to_vec();
        if filtration.len() != dims.len() {
            return Err(Error::IncompatibleFiltration(format!(
                "filtration given in {} degrees, complex has {}",
                filtration.len(),
                dims.len()
            )));
        }
        let max_p = filtration
            .first()
            .map(|f| f.len().saturating_sub(2))
            .unwrap_or(0);
        for (n, steps) in filtration.iter().enumerate() {
            if steps.len() != max_p + 2 {
                return Err(Error::IncompatibleFiltration(format!(
                    "degree {n} has {} filtration steps, expected {}",
                    steps.len(),
                    max_p + 2
                )));
            }
            if steps.iter().any(|s| s.ambient_dim() != dims[n]) {
                return Err(Error::IncompatibleFiltration(format!(
                    "filtration step in the wrong space in degree {n}"
                )));
            }
            if !steps[0].is_full() || !steps[max_p + 1].is_zero() {
                return Err(Error::IncompatibleFiltration(format!(
                    "degree {n}: F^0 must be everything and F^{} must vanish",
                    max_p + 1
                )));
            }
            for w in steps.windows(2) {
                if !w[1].is_subspace_of(&w[0])? {
                    return Err(Error::IncompatibleFiltration(format!(
                        "degree {n}: filtration is not descending"
                    )));
                }
            }
            if let Some(d) = complex.differential(n) {
                for (p, step) in steps.iter().enumerate() {
                    if !step.image_under(d)?.is_subspace_of(&filtration[n + 1][p])? {
                        return Err(Error::IncompatibleFiltration(format!(
                            "d does not preserve F^{p} in degree {n}"
                        )));
                    }
                }
            }
        }
        Ok(FilteredComplex {
            complex,
            filtration,
            max_p,
            max_q,
        })
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn max_p(&self) -> usize {
        self.max_p
    }

    pub fn max_q(&self) -> usize {
        self.max_q
    }

    fn top(&self) -> usize {
        self.complex.dims().len() - 1
    }

    /// `F^p A^n` for any integer `p`.
    fn step(&self, n: usize, p: i64) -> &Subspace {
        let steps = &self.filtration[n];
        let idx = p.clamp(0, self.max_p as i64 + 1) as usize;
        &steps[idx]
    }

    /// `d⁻¹(F^s A^{n+1}) ⊆ A^n`.
    fn preimage(&self, n: usize, s: i64) -> Result<Subspace> {
        match self.complex.differential(n) {
            Some(d) => Subspace::preimage(d, self.step(n + 1, s)),
            None => Ok(Subspace::full(self.complex.dims()[n])),
        }
    }

    /// `d(F^s A^{n-1}) ⊆ A^n`.
    fn image(&self, n: usize, s: i64) -> Result<Subspace> {
        if n == 0 {
            return Ok(Subspace::zero(self.complex.dims()[0]));
        }
        let d = self.complex.differential(n - 1).expect("n ≤ top");
        self.step(n - 1, s).image_under(d)
    }

    /// `Z_r^{p}` and `B_r^{p}` in degree `n`; `r = None` gives the limits
    /// `F^p ∩ ker d` and `F^p ∩ im d`.
    fn cycles_and_boundaries(&self, r: Option<i64>, p: i64, n: usize) -> Result<(Subspace, Subspace)> {
        let f = self.step(n, p);
        let (pre, img) = match r {
            Some(r) => (self.preimage(n, p + r)?, self.image(n, p - r)?),
            None => (
                self.preimage(n, self.max_p as i64 + 1)?,
                self.image(n, 0)?,
            ),
        };
        Ok((f.intersection(&pre)?, f.intersection(&img)?))
    }

    /// All `(p, n)` with `0 ≤ p ≤ P + 1` and `0 ≤ n ≤ N`.
    fn level(&self, r: Option<i64>) -> Result<Vec<Vec<(Subspace, Subspace)>>> {
        let top = self.top();
        let cells: Vec<(usize, usize)> = (0..=self.max_p + 1)
            .flat_map(|p| (0..=top).map(move |n| (p, n)))
            .collect();
        let computed: Vec<(Subspace, Subspace)> = cells
            .par_iter()
            .map(|&(p, n)| self.cycles_and_boundaries(r, p as i64, n))
            .collect::<Result<_>>()?;
        let mut out: Vec<Vec<(Subspace, Subspace)>> = Vec::with_capacity(self.max_p + 2);
        let mut it = computed.into_iter();
        for _ in 0..=self.max_p + 1 {
            out.push(it.by_ref().take(top + 1).collect());
        }
        Ok(out)
    }

    fn page_from_levels(
        &self,
        r: Option<usize>,
        current: &[Vec<(Subspace, Subspace)>],
        previous: &[Vec<(Subspace, Subspace)>],
    ) -> Result<Page> {
        let top = self.top();
        let mut cells = vec![vec![0; self.max_q + 1]; self.max_p + 1];
        for p in 0..=self.max_p {
            for n in 0..=top {
                let z = &current[p][n].0;
                let denominator = previous[p + 1][n].0.sum(&previous[p][n].1)?;
                if !denominator.is_subspace_of(z)? {
                    return Err(Error::Internal(format!(
                        "page {r:?}: boundaries not inside cycles at p={p}, n={n}"
                    )));
                }
                let dim = z.dim() - denominator.dim();
                if dim == 0 {
                    continue;
                }
                match n.checked_sub(p).filter(|&q| q <= self.max_q) {
                    Some(q) => cells[p][q] = dim,
                    None => {
                        return Err(Error::Internal(format!(
                            "nonzero entry outside the table at p={p}, n={n}"
                        )))
                    }
                }
            }
        }
        Ok(Page { r, cells })
    }

    /// `dim E_r^{p,q}` for one page.
    pub fn page(&self, r: usize) -> Result<Page> {
        let r = r as i64;
        let current = self.level(Some(r))?;
        let previous = self.level(Some(r - 1))?;
        self.page_from_levels(Some(r as usize), &current, &previous)
    }

    pub fn infinity_page(&self) -> Result<Page> {
        let limit = self.level(None)?;
        self.page_from_levels(None, &limit, &limit)
    }

    /// All pages until three consecutive pages agree, plus `E_∞`, with the
    /// structural checks: monotone dimensions, constant Euler
    /// characteristic, convergence to the cohomology of the total complex.
    pub fn spectral_table(&self) -> Result<SpectralTable> {
        let top = self.top();
        let abutment = self.complex.cohomology_dims();
        let infinity = self.infinity_page()?;
        let mut previous = self.level(Some(-1))?;
        let mut pages: Vec<Page> = Vec::new();
        let mut stable_page = None;
        for r in 0..=top + 3 {
            let current = self.level(Some(r as i64))?;
            pages.push(self.page_from_levels(Some(r), &current, &previous)?);
            previous = current;
            if r >= 3 {
                let s = r - 2;
                if pages[s].same_cells(&pages[s + 1]) && pages[s + 1].same_cells(&pages[s + 2]) {
                    stable_page = Some(s);
                    break;
                }
            }
        }
        let stable_page = stable_page
            .ok_or_else(|| Error::Internal("spectral sequence did not stabilise".into()))?;
        if stable_page > top + 1 {
            return Err(Error::Internal(format!(
                "stabilised at page {stable_page}, beyond the bound {}",
                top + 1
            )));
        }
        if !pages[stable_page].same_cells(&infinity) {
            return Err(Error::Internal(format!(
                "page {stable_page} repeats but differs from the limit page"
            )));
        }
        for w in pages.windows(2) {
            let grows = w[0]
                .cells
                .iter()
                .flatten()
                .zip(w[1].cells.iter().flatten())
                .any(|(a, b)| b > a);
            if grows {
                return Err(Error::Internal("page dimensions increased".into()));
            }
        }
        let chi = |page: &Page| euler_characteristic(&page.degree_totals(top));
        if pages.iter().any(|page| chi(page) != chi(&infinity)) {
            return Err(Error::Internal(
                "Euler characteristic changes between pages".into(),
            ));
        }
        if infinity.degree_totals(top) != abutment {
            return Err(Error::Internal(
                "limit page does not add up to the cohomology".into(),
            ));
        }
        Ok(SpectralTable {
            pages,
            infinity,
            stable_page,
            abutment,
        })
    }
}

/// Filtration of the complexified complex by holomorphic degree:
/// `F^p = ⊕_{s ≥ p} Λ^{s,•}`.
pub fn froelicher_filtration(dolbeault: &DolbeaultComplex) -> Result<FilteredComplex> {
    let m = dolbeault.m();
    let complex = dolbeault.total_complex().clone();
    let n = complex.dims().len() - 1;
    let bases: Vec<ExteriorBasis> = (0..=n).map(|k| ExteriorBasis::new(n, k)).collect();
    let filtration = coordinate_filtration(complex.dims(), m, |k, pos| {
        bases[k].tuple(pos).iter().filter(|&&x| x < m).count()
    });
    FilteredComplex::new(complex, filtration, m)
}

/// Frölicher pages; the first page is checked against the Dolbeault numbers
/// and the abutment against the Betti numbers of the real algebra.
pub fn froelicher(l: &LieAlgebra, j: &ComplexStructure) -> Result<SpectralTable> {
    let dolbeault = DolbeaultComplex::new(l, j)?;
    let table = froelicher_filtration(&dolbeault)?.spectral_table()?;
    let hodge = dolbeault.hodge_numbers();
    if table.page(1).cells != hodge.h {
        return Err(Error::Internal(
            "first Frölicher page differs from the Dolbeault numbers".into(),
        ));
    }
    if table.abutment != cohomology_dims(l)? {
        return Err(Error::Internal(
            "Frölicher abutment differs from the Betti numbers".into(),
        ));
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HochschildSerre {
    pub table: SpectralTable,
    pub central: bool,
    pub quotient_betti: Vec<usize>,
    pub ideal_betti: Vec<usize>,
    /// `dim E_2^{p,q} = b_p(g/h) b_q(h)`; evaluated only for central `h`.
    pub tensor_check: Option<bool>,
}

/// Basis `e_c (c ∉ pivots of h), then the RREF basis of h`, as columns.
fn adapted_basis(h: &Subspace) -> Result<Matrix> {
    let n = h.ambient_dim();
    let mut columns: Vec<Vec<_>> = h
        .complement_indices()
        .into_iter()
        .map(|c| unit_vector(n, c))
        .collect();
    columns.extend(h.basis_vectors().map(<[_]>::to_vec));
    Ok(Matrix::from_rows(n, columns)?.transpose())
}

/// Filtration by the number of arguments allowed in the ideal `h`:
/// `F^p Λ^n = {α : α vanishes once n-p+1 arguments lie in h}`.
pub fn hochschild_serre(l: &LieAlgebra, h: &Subspace) -> Result<HochschildSerre> {
    if !l.is_ideal(h)? {
        return Err(Error::NotIdeal);
    }
    let n = l.dim();
    let a = n - h.dim();
    let adapted = l.constants().change_basis(&adapted_basis(h)?)?;
    let complex = CochainComplex::from_constants(&adapted)?;
    let bases: Vec<ExteriorBasis> = (0..=n).map(|k| ExteriorBasis::new(n, k)).collect();
    let filtration = coordinate_filtration(complex.dims(), a, |k, pos| {
        bases[k].tuple(pos).iter().filter(|&&x| x < a).count()
    });
    let table = FilteredComplex::new(complex, filtration, h.dim())?.spectral_table()?;
    let quotient_betti = cohomology_dims(&l.quotient(h)?)?;
    let ideal_betti = cohomology_dims(&l.restrict(h)?)?;
    let central = h.is_subspace_of(&l.center())?;
    let tensor_check = central.then(|| {
        let e2 = table.page(2);
        (0..=a).all(|p| (0..=h.dim()).all(|q| e2.get(p, q) == quotient_betti[p] * ideal_betti[q]))
    });
    Ok(HochschildSerre {
        table,
        central,
        quotient_betti,
        ideal_betti,
        tensor_check,
    })
}
