//! Lie algebras given by structure constants in a distinguished basis.
//!
//! Indices are 0-based throughout the library; the file format and the CLI
//! use 1-based indices to match the usual `e_1, …, e_n` notation.

mod delta;

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::{Level, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, Matrix, Subspace};

pub use delta::{from_delta, DeltaTerm, FormType};

/// Full antisymmetric table of structure constants `[b_i, b_j] = Σ_k c_{ij}^k b_k`
/// over any scalar level, including complex bases of `g ⊗ ℂ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<Scalar>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants {
            dim,
            table: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// `c_{ij}^k`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.table[self.idx(i, j, k)]
    }

    /// Sets `c_{ij}^k = c` and `c_{ji}^k = -c`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let a = self.idx(j, i, k);
        self.table[a] = -&c;
        let b = self.idx(i, j, k);
        self.table[b] = c;
    }

    /// `[b_i, b_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let start = self.idx(i, j, 0);
        self.table[start..start + self.dim].to_vec()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "bracket of vectors of length {} and {} in dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let coeff = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o = o.add_mul(&coeff, c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Scalar::is_zero)
    }

    pub fn level(&self) -> Level {
        self.table
            .iter()
            .fold(Level::Rational, |acc, x| acc.join(x.level()))
    }

    /// Structure constants in the basis formed by the columns of `basis`.
    pub fn change_basis(&self, basis: &Matrix) -> Result<StructureConstants> {
        if basis.rows() != self.dim || basis.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "change of basis must be {0}x{0}",
                self.dim
            )));
        }
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|c| basis.column(c)).collect();
        let mut out = StructureConstants::zero(self.dim);
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let br = self.bracket(&cols[a], &cols[b])?;
                let coords = inv.apply(&br)?;
                for (c, x) in coords.into_iter().enumerate() {
                    out.set(a, b, c, x);
                }
            }
        }
        Ok(out)
    }

    /// Restriction to the span of a subset of basis vectors, which must be
    /// closed under the bracket.
    pub fn restrict_to_indices(&self, indices: &[usize]) -> Result<StructureConstants> {
        let mut out = StructureConstants::zero(indices.len());
        let inside: HashSet<usize> = indices.iter().copied().collect();
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate().skip(a + 1) {
                for k in 0..self.dim {
                    let c = self.get(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    if !inside.contains(&k) {
                        return Err(Error::NotSubalgebra);
                    }
                    let pos = indices.iter().position(|&x| x == k).expect("inside");
                    out.set(a, b, pos, c.clone());
                }
            }
        }
        Ok(out)
    }

    /// First triple `i < j < k` violating the Jacobi identity.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut sum = vec![Scalar::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket_basis(a, b);
                        let outer = self.bracket(&inner, &unit_vector(n, c)).expect("dims");
                        for (s, o) in sum.iter_mut().zip(outer) {
                            *s = &*s + o;
                        }
                    }
                    if sum.iter().any(|x| !x.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// One structure constant `[e_i, e_j] ∋ c·e_k` with `i < j` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Scalar,
}

impl Bracket {
    pub fn new(i: usize, j: usize, k: usize, c: Scalar) -> Self {
        Bracket { i, j, k, c }
    }
}

/// A real Lie algebra: structure constants in ℚ or ℚ(t) with respect to a
/// distinguished basis whose ℚ-span is the rational structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    constants: StructureConstants,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Ascending,
    Descending,
    AdaptedToJ,
}

/// A chain of subspaces together with the nilpotency index `nu`
/// (`steps.len() == nu + 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSeries {
    pub kind: SeriesKind,
    pub steps: Vec<Subspace>,
    pub nu: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub jacobi_ok: bool,
    /// First failing triple, 0-based.
    pub jacobi_failure: Option<(usize, usize, usize)>,
    pub nilpotent: bool,
    pub nu: Option<usize>,
}

impl LieAlgebra {
    /// Builds an algebra from its nonzero brackets. Each `(i, j, k)` may
    /// appear at most once and must satisfy `i < j`; constants must be real.
    pub fn new(dim: usize, brackets: &[Bracket]) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut constants = StructureConstants::zero(dim);
        for b in brackets {
            if b.i >= b.j {
                return Err(Error::Schema(format!(
                    "bracket indices must satisfy i < j, got ({}, {})",
                    b.i + 1,
                    b.j + 1
                )));
            }
            if b.j >= dim || b.k >= dim {
                return Err(Error::Schema(format!(
                    "bracket index out of range for dimension {dim}"
                )));
            }
            if !seen.insert((b.i, b.j, b.k)) {
                return Err(Error::Schema(format!(
                    "duplicate bracket ({}, {}, {})",
                    b.i + 1,
                    b.j + 1,
                    b.k + 1
                )));
            }
            if !b.c.is_real() {
                return Err(Error::NonReal(b.c.to_string()));
            }
            constants.set(b.i, b.j, b.k, b.c.clone());
        }
        Ok(LieAlgebra { constants })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            constants: StructureConstants::zero(dim),
        }
    }

    /// Wraps a real table of structure constants.
    pub fn from_constants(constants: StructureConstants) -> Result<Self> {
        if let Some(x) = constants.table.iter().find(|x| !x.is_real()) {
            return Err(Error::NonReal(x.to_string()));
        }
        Ok(LieAlgebra { constants })
    }

    pub fn dim(&self) -> usize {
        self.constants.dim
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// Base field level of the structure constants (ℚ or ℚ(t)).
    pub fn level(&self) -> Level {
        self.constants.level()
    }

    /// Nonzero constants with `i < j`, in lexicographic `(i, j, k)` order.
    pub fn brackets(&self) -> Vec<Bracket> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.constants.get(i, j, k);
                    if !c.is_zero() {
                        out.push(Bracket::new(i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.constants.bracket(x, y)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_abelian()
    }

    /// Matrix of `x ↦ [x, e_j]`.
    pub fn ad_right(&self, j: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, i| self.constants.get(i, j, k).clone())
    }

    pub fn validate(&self) -> ValidationReport {
        let jacobi_failure = self.constants.jacobi_failure();
        let nu = self.descending_series().ok().map(|s| s.nu);
        ValidationReport {
            jacobi_ok: jacobi_failure.is_none(),
            jacobi_failure,
            nilpotent: nu.is_some(),
            nu,
        }
    }

    /// `[a, b]` for subspaces, as a subspace.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        let n = self.dim();
        let mut gens = Vec::new();
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                let z = self.bracket(x, y)?;
                if z.iter().any(|s| !s.is_zero()) {
                    gens.push(z);
                }
            }
        }
        Subspace::span(n, gens)
    }

    /// `C^0 = g`, `C^{i+1} = [C^i, g]`.
    pub fn descending_series(&self) -> Result<CentralSeries> {
        let n = self.dim();
        let g = Subspace::full(n);
        let mut steps = vec![g.clone()];
        loop {
            let last = steps.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let next = self.bracket_subspaces(last, &g)?;
            if &next == last {
                return Err(Error::NotNilpotent);
            }
            steps.push(next);
        }
        let nu = steps.len() - 1;
        Ok(CentralSeries {
            kind: SeriesKind::Descending,
            steps,
            nu,
        })
    }

    /// `{x : [x, g] ⊆ w}`.
    pub fn centralizer_mod(&self, w: &Subspace) -> Result<Subspace> {
        let n = self.dim();
        let mut acc = Subspace::full(n);
        for j in 0..n {
            let pre = Subspace::preimage(&self.ad_right(j), w)?;
            acc = acc.intersection(&pre)?;
            if acc.dim() == w.dim() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn center(&self) -> Subspace {
        self.centralizer_mod(&Subspace::zero(self.dim()))
            .expect("dimensions agree")
    }

    /// `Z^0 = 0`, `Z^{i+1} = {x : [x, g] ⊆ Z^i}`.
    pub fn ascending_series(&self) -> Result<CentralSeries> {
        let n = self.dim();
        let mut steps = vec![Subspace::zero(n)];
        loop {
            let last = steps.last().expect("nonempty");
            if last.is_full() {
                break;
            }
            let next = self.centralizer_mod(last)?;
            if &next == last {
                return Err(Error::NotNilpotent);
            }
            steps.push(next);
        }
        let nu = steps.len() - 1;
        Ok(CentralSeries {
            kind: SeriesKind::Ascending,
            steps,
            nu,
        })
    }

    pub fn central_series(&self, kind: SeriesKind) -> Result<CentralSeries> {
        match kind {
            SeriesKind::Ascending => self.ascending_series(),
            SeriesKind::Descending => self.descending_series(),
            SeriesKind::AdaptedToJ => Err(Error::Schema(
                "the J-adapted series needs a complex structure".into(),
            )),
        }
    }

    /// `[h, g] ⊆ h`.
    pub fn is_ideal(&self, h: &Subspace) -> Result<bool> {
        let n = self.dim();
        self.check_ambient(h)?;
        for x in h.basis_vectors() {
            for j in 0..n {
                if !h.contains(&self.bracket(x, &unit_vector(n, j))?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `[h, h] ⊆ h`.
    pub fn is_subalgebra(&self, h: &Subspace) -> Result<bool> {
        self.check_ambient(h)?;
        let basis: Vec<&[Scalar]> = h.basis_vectors().collect();
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                if !h.contains(&self.bracket(x, y)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `[h, h] ⊆ w`.
    pub fn bracket_lands_in(&self, a: &Subspace, b: &Subspace, w: &Subspace) -> Result<bool> {
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                if !w.contains(&self.bracket(x, y)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_ambient(&self, h: &Subspace) -> Result<()> {
        if h.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of K^{} in a Lie algebra of dimension {}",
                h.ambient_dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// `g/h` in the basis given by the images of the standard basis vectors
    /// that greedily complete the RREF basis of `h`.
    pub fn quotient(&self, h: &Subspace) -> Result<LieAlgebra> {
        if !self.is_ideal(h)? {
            return Err(Error::NotIdeal);
        }
        let comp = h.complement_indices();
        let mut constants = StructureConstants::zero(comp.len());
        for (a, &i) in comp.iter().enumerate() {
            for (b, &j) in comp.iter().enumerate().skip(a + 1) {
                let br = self.constants.bracket_basis(i, j);
                for (c, x) in quotient_coordinates(h, &comp, &br).into_iter().enumerate() {
                    if !x.is_zero() {
                        constants.set(a, b, c, x);
                    }
                }
            }
        }
        LieAlgebra::from_constants(constants)
    }

    /// `h` as a Lie algebra in its RREF basis.
    pub fn restrict(&self, h: &Subspace) -> Result<LieAlgebra> {
        if !self.is_subalgebra(h)? {
            return Err(Error::NotSubalgebra);
        }
        let basis: Vec<&[Scalar]> = h.basis_vectors().collect();
        let mut constants = StructureConstants::zero(basis.len());
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let br = self.bracket(basis[a], basis[b])?;
                let coords = h.coordinates(&br)?.ok_or(Error::NotSubalgebra)?;
                for (c, x) in coords.into_iter().enumerate() {
                    if !x.is_zero() {
                        constants.set(a, b, c, x);
                    }
                }
            }
        }
        LieAlgebra::from_constants(constants)
    }

    /// The same algebra in the real basis formed by the columns of `basis`.
    pub fn change_basis(&self, basis: &Matrix) -> Result<LieAlgebra> {
        LieAlgebra::from_constants(self.constants.change_basis(basis)?)
    }
}

/// Coordinates of the class of `v` in `g/h` with respect to the standard
/// vectors `e_c` (`c ∈ comp`) completing the RREF basis of `h`.
pub fn quotient_coordinates(h: &Subspace, comp: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    comp.iter()
        .map(|&c| {
            h.basis_vectors()
                .zip(h.pivots())
                .fold(v[c].clone(), |acc, (row, &p)| acc - &v[p] * &row[c])
        })
        .collect()
}
