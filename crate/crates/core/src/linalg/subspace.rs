use crate::arith::Scalar;
use crate::error::{Error, Result};

use super::Matrix;

/// A subspace of `K^n` stored by the RREF of a basis.
///
/// The RREF basis is canonical, so two subspaces are equal exactly when
/// their stored matrices are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::coordinate(ambient, 0..ambient)
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let basis = Matrix::from_fn(idx.len(), ambient, |r, c| {
            if idx[r] == c {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        Subspace {
            ambient,
            basis,
            pivots: idx,
        }
    }

    /// Row space of a matrix whose rows are generators.
    pub fn from_generators(generators: Matrix) -> Self {
        let ambient = generators.cols();
        let (basis, pivots) = generators.rref_with_pivots();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        Ok(Subspace::from_generators(Matrix::from_rows(ambient, vectors)?))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The RREF basis matrix (one basis vector per row).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        self.basis.row_vectors()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of K^{} and K^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in K^{}",
                v.len(),
                self.ambient
            )));
        }
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (row, c) in self.basis.row_vectors().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = &*x - c * b;
                }
            }
        }
        Ok(residual.iter().all(Scalar::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        for v in self.basis_vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        Ok(Subspace::from_generators(self.basis.vstack(&other.basis)?))
    }

    /// Intersection by the Zassenhaus method: reduce `[[A, A], [B, 0]]` and
    /// keep the right halves of rows whose left half vanishes.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let n = self.ambient;
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&Matrix::zeros(other.dim(), n))?;
        let (r, pivots) = top.vstack(&bottom)?.rref_with_pivots();
        let rows: Vec<Vec<Scalar>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(row, _)| r.row(row)[n..].to_vec())
            .collect();
        Subspace::span(n, rows)
    }

    /// Vectors annihilated by every basis vector under the bilinear pairing
    /// `⟨u, v⟩ = Σ u_k v_k` (no conjugation).
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        self.basis.kernel()
    }

    /// `{v : f v ∈ target}` for a map `f` whose codomain is the ambient space
    /// of `target`.
    pub fn preimage(f: &Matrix, target: &Subspace) -> Result<Subspace> {
        if f.rows() != target.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map with {} rows into K^{}",
                f.rows(),
                target.ambient
            )));
        }
        if target.is_full() {
            return Ok(Subspace::full(f.cols()));
        }
        if target.is_zero() {
            return Ok(f.kernel());
        }
        let ann = target.annihilator();
        Ok(ann.basis.mul(f)?.kernel())
    }

    /// Image `f(self)` inside the codomain of `f`.
    pub fn image_under(&self, f: &Matrix) -> Result<Subspace> {
        if f.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map with {} columns applied to a subspace of K^{}",
                f.cols(),
                self.ambient
            )));
        }
        if self.is_zero() {
            return Ok(Subspace::zero(f.rows()));
        }
        Ok(Subspace::from_generators(self.basis.mul(&f.transpose())?))
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            basis: self.basis.conj(),
            pivots: self.pivots.clone(),
        }
    }

    /// `dim(self / sub)`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        if !sub.is_subspace_of(self)? {
            return Err(Error::DimensionMismatch(
                "quotient by a subspace that is not contained".into(),
            ));
        }
        Ok(self.dim() - sub.dim())
    }

    /// True iff the subspace is spanned by vectors with coordinates in ℚ,
    /// i.e. it is rational for the rational structure of the coordinate
    /// basis. The RREF basis is canonical, so it suffices to inspect it.
    pub fn is_rational(&self) -> bool {
        self.basis.entries().iter().all(Scalar::is_rational)
    }

    /// True when every basis entry is real (no Gaussian part).
    pub fn is_real(&self) -> bool {
        self.basis.entries().iter().all(Scalar::is_real)
    }

    /// Greedy completion of the RREF basis by standard basis vectors of
    /// lowest index. Returns the indices of the added vectors.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}
