//! The Chevalley–Eilenberg complex `(Λ•g*, d)` with trivial coefficients.
//!
//! Cochains are expanded in the basis `e^I = e^{i_1} ∧ … ∧ e^{i_k}` with
//! `i_1 < … < i_k` enumerated lexicographically. The differential is
//! `(dα)(x_1, …, x_{k+1}) = Σ_{a<b} (-1)^{a+b} α([x_a, x_b], x_1, …, x̂_a, …, x̂_b, …)`,
//! so on one-forms `dα(x, y) = -α([x, y])`.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, StructureConstants};
use crate::linalg::Matrix;

/// Lexicographically ordered increasing index tuples of length `k` in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorBasis {
    ambient: usize,
    degree: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ExteriorBasis {
    pub fn new(ambient: usize, degree: usize) -> Self {
        let tuples: Vec<Vec<usize>> = (0..ambient).combinations(degree).collect();
        let index = tuples
            .iter()
            .enumerate()
            .map(|(pos, t)| (t.clone(), pos))
            .collect();
        ExteriorBasis {
            ambient,
            degree,
            tuples,
            index,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn tuple(&self, pos: usize) -> &[usize] {
        &self.tuples[pos]
    }

    /// Position of an increasing tuple.
    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// Position and sign of `e^{s_1} ∧ … ∧ e^{s_k}` for an arbitrary sequence,
    /// or `None` if an index repeats.
    pub fn sorted_position(&self, seq: &[usize]) -> Option<(usize, bool)> {
        let (sorted, negative) = sort_with_sign(seq)?;
        self.position(&sorted).map(|p| (p, negative))
    }
}

/// Sorts a sequence of distinct indices; the flag is the parity of the
/// permutation. `None` if an index repeats.
pub fn sort_with_sign(seq: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = seq.to_vec();
    let mut negative = false;
    // Insertion sort; sequences are short.
    for a in 1..v.len() {
        let mut b = a;
        while b > 0 && v[b - 1] > v[b] {
            v.swap(b - 1, b);
            negative = !negative;
            b -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

fn signed(c: &Scalar, negative: bool) -> Scalar {
    if negative {
        -c
    } else {
        c.clone()
    }
}

/// Matrix of `d_k: Λ^k → Λ^{k+1}` from the evaluation formula on basis
/// vectors.
pub fn chevalley_differential(c: &StructureConstants, k: usize) -> Matrix {
    let n = c.dim();
    let source = ExteriorBasis::new(n, k);
    let target = ExteriorBasis::new(n, k + 1);
    let mut d = Matrix::zeros(target.len(), source.len());
    if k >= n {
        return d;
    }
    for (row, jt) in target.tuples().iter().enumerate() {
        for a in 0..jt.len() {
            for b in a + 1..jt.len() {
                let negative_pair = (a + b) % 2 == 1;
                let rest: Vec<usize> = jt
                    .iter()
                    .enumerate()
                    .filter(|&(s, _)| s != a && s != b)
                    .map(|(_, &x)| x)
                    .collect();
                for l in 0..n {
                    let coeff = c.get(jt[a], jt[b], l);
                    if coeff.is_zero() || rest.contains(&l) {
                        continue;
                    }
                    // e^I(e_l, rest) with I = {l} ∪ rest in increasing order.
                    let below = rest.iter().filter(|&&x| x < l).count();
                    let mut idx = rest.clone();
                    idx.insert(below, l);
                    let col = source.position(&idx).expect("tuple of the right degree");
                    let negative = negative_pair ^ (below % 2 == 1);
                    d[(row, col)] = &d[(row, col)] + signed(coeff, negative);
                }
            }
        }
    }
    d
}

/// Matrix of `d_k` obtained by extending `de^l = -Σ_{i<j} c_{ij}^l e^i ∧ e^j`
/// to `Λ^k` as a degree-one antiderivation.
pub fn antiderivation_differential(c: &StructureConstants, k: usize) -> Matrix {
    let n = c.dim();
    let source = ExteriorBasis::new(n, k);
    let target = ExteriorBasis::new(n, k + 1);
    let mut d = Matrix::zeros(target.len(), source.len());
    if k >= n {
        return d;
    }
    // Two-form parts of de^l.
    let de: Vec<Vec<(usize, usize, Scalar)>> = (0..n)
        .map(|l| {
            (0..n)
                .tuple_combinations()
                .filter_map(|(i, j)| {
                    let x = c.get(i, j, l);
                    (!x.is_zero()).then(|| (i, j, -x))
                })
                .collect()
        })
        .collect();
    for (col, it) in source.tuples().iter().enumerate() {
        for (s, &l) in it.iter().enumerate() {
            for (i, j, x) in &de[l] {
                let mut seq = Vec::with_capacity(k + 1);
                seq.extend_from_slice(&it[..s]);
                seq.push(*i);
                seq.push(*j);
                seq.extend_from_slice(&it[s + 1..]);
                if let Some((row, negative)) = target.sorted_position(&seq) {
                    let negative = negative ^ (s % 2 == 1);
                    d[(row, col)] = &d[(row, col)] + signed(x, negative);
                }
            }
        }
    }
    d
}

/// `(Λ•, d)` with differentials `d_0, …, d_{n-1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl CochainComplex {
    /// Builds the complex of a set of structure constants and checks `d² = 0`.
    pub fn from_constants(c: &StructureConstants) -> Result<Self> {
        let n = c.dim();
        let differentials: Vec<Matrix> = (0..n)
            .into_par_iter()
            .map(|k| chevalley_differential(c, k))
            .collect();
        CochainComplex::from_differentials(1, differentials)
    }

    pub fn new(l: &LieAlgebra) -> Result<Self> {
        CochainComplex::from_constants(l.constants())
    }

    /// Any sequence of composable matrices with vanishing consecutive
    /// products, starting in a space of dimension `bottom`.
    pub fn from_differentials(bottom: usize, differentials: Vec<Matrix>) -> Result<Self> {
        let mut dims = vec![bottom];
        dims.extend(differentials.iter().map(Matrix::rows));
        for (k, d) in differentials.iter().enumerate() {
            if d.cols() != dims[k] {
                return Err(Error::DimensionMismatch(format!(
                    "d_{k} has {} columns, expected {}",
                    d.cols(),
                    dims[k]
                )));
            }
        }
        for (k, pair) in differentials.windows(2).enumerate() {
            if pair[0].rows() != pair[1].cols() {
                return Err(Error::DimensionMismatch(format!(
                    "d_{k} and d_{} are not composable",
                    k + 1
                )));
            }
            if !pair[1].mul(&pair[0])?.is_zero() {
                return Err(Error::Internal(format!("d_{} d_{k} is not zero", k + 1)));
            }
        }
        Ok(CochainComplex {
            dims,
            differentials,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_k`; `None` from the top degree on.
    pub fn differential(&self, k: usize) -> Option<&Matrix> {
        self.differentials.get(k)
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.par_iter().map(Matrix::rank).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let incoming = if k == 0 { 0 } else { ranks[k - 1] };
                self.dims[k] - out - incoming
            })
            .collect()
    }
}

/// Betti numbers `b_0, …, b_n` of the algebra.
pub fn cohomology_dims(l: &LieAlgebra) -> Result<Vec<usize>> {
    Ok(CochainComplex::new(l)?.cohomology_dims())
}

/// `b_k = b_{n-k}` for all `k`.
pub fn poincare_duality_check(betti: &[usize]) -> bool {
    betti.iter().eq(betti.iter().rev())
}

/// Alternating sum of a dimension vector.
pub fn euler_characteristic(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Bracket;

    fn heisenberg3() -> LieAlgebra {
        LieAlgebra::new(3, &[Bracket::new(0, 1, 2, Scalar::one())]).unwrap()
    }

    fn h7() -> LieAlgebra {
        let m1 = Scalar::from_int(-1);
        LieAlgebra::new(
            6,
            &[
                Bracket::new(0, 1, 3, m1.clone()),
                Bracket::new(0, 2, 4, m1.clone()),
                Bracket::new(1, 2, 5, m1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn basis_enumeration() {
        let b = ExteriorBasis::new(4, 2);
        assert_eq!(b.len(), 6);
        assert_eq!(b.tuple(0), &[0, 1]);
        assert_eq!(b.tuple(5), &[2, 3]);
        assert_eq!(b.sorted_position(&[3, 1]), Some((4, true)));
        assert_eq!(b.sorted_position(&[1, 1]), None);
    }

    #[test]
    fn heisenberg_one_forms() {
        let d = chevalley_differential(heisenberg3().constants(), 1);
        // Column e^3, row e^1∧e^2.
        assert_eq!(d[(0, 2)], Scalar::from_int(-1));
        assert!(d.column(0).iter().all(Scalar::is_zero));
        assert!(d.column(1).iter().all(Scalar::is_zero));
    }

    #[test]
    fn h7_one_forms() {
        let d = chevalley_differential(h7().constants(), 1);
        let two = ExteriorBasis::new(6, 2);
        assert_eq!(d[(two.position(&[0, 1]).unwrap(), 3)], Scalar::one());
        assert_eq!(d[(two.position(&[0, 2]).unwrap(), 4)], Scalar::one());
        assert_eq!(d[(two.position(&[1, 2]).unwrap(), 5)], Scalar::one());
        assert_eq!(d.rank(), 3);
    }

    #[test]
    fn both_constructions_agree() {
        for l in [heisenberg3(), h7()] {
            for k in 0..=l.dim() {
                assert_eq!(
                    chevalley_differential(l.constants(), k),
                    antiderivation_differential(l.constants(), k)
                );
            }
        }
    }

    #[test]
    fn betti_examples() {
        assert_eq!(cohomology_dims(&LieAlgebra::abelian(3)).unwrap(), vec![1, 3, 3, 1]);
        let b = cohomology_dims(&heisenberg3()).unwrap();
        assert_eq!(b, vec![1, 2, 2, 1]);
        assert!(poincare_duality_check(&b));
        assert_eq!(euler_characteristic(&b), 0);
    }
}
