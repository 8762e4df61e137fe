//! Dense exact matrices and canonical (RREF) subspaces.

mod matrix;
mod subspace;

pub use matrix::Matrix;
pub use subspace::Subspace;

use crate::arith::Scalar;

/// Standard basis vector `e_k` of `K^n` (0-based).
pub fn unit_vector(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

pub fn conj_vector(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(Scalar::conj).collect()
}
