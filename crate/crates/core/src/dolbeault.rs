//! The bigraded complex `Λ^{p,q}g*` of an integrable structure, the operators
//! `∂` and `∂̄`, and Lie-algebra Dolbeault numbers.
//!
//! The complexification is written in the basis `Z_1, …, Z_m, Z̄_1, …, Z̄_m`
//! where `Z_a` are the RREF basis rows of `g^{1,0}`. Forms are expanded in the
//! dual basis `ω^1, …, ω^m, ω̄^1, …, ω̄^m`, so a degree-k basis tuple has
//! bidegree (number of indices `< m`, number of indices `≥ m`). `∂` and `∂̄`
//! are the two surviving blocks of the complexified Chevalley differential.

use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::{chevalley_differential, CochainComplex, ExteriorBasis};
use crate::cstruct::ComplexStructure;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, StructureConstants};
use crate::linalg::Matrix;

/// Positions of the bidegree-(p,q) tuples inside the degree-(p+q) exterior
/// basis on `2m` indices. Ordered lexicographically in the pair `(P, Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedBasis {
    pub p: usize,
    pub q: usize,
    pub m: usize,
    /// `(P, Q)` with `Q` indexing `ω̄^1, …, ω̄^m` from 0.
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
    pub positions: Vec<usize>,
}

impl BigradedBasis {
    fn new(m: usize, p: usize, q: usize, full: &ExteriorBasis) -> Self {
        let mut pairs = Vec::new();
        let mut positions = Vec::new();
        for (pos, t) in full.tuples().iter().enumerate() {
            let (holo, anti): (Vec<usize>, Vec<usize>) = t.iter().partition(|&&x| x < m);
            if holo.len() == p && anti.len() == q {
                pairs.push((holo, anti.into_iter().map(|x| x - m).collect()));
                positions.push(pos);
            }
        }
        BigradedBasis {
            p,
            q,
            m,
            pairs,
            positions,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// `h^{p,q}` for `0 ≤ p, q ≤ m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeDiamond {
    pub m: usize,
    /// `h[p][q]`
    pub h: Vec<Vec<usize>>,
}

impl HodgeDiamond {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.h[p][q]
    }

    /// `Σ_{p+q=k} h^{p,q}` for `k = 0, …, 2m`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; 2 * self.m + 1];
        for (p, row) in self.h.iter().enumerate() {
            for (q, &x) in row.iter().enumerate() {
                out[p + q] += x;
            }
        }
        out
    }

    /// `h^{p,q} = h^{m-p,m-q}`.
    pub fn serre_duality_check(&self) -> bool {
        let m = self.m;
        (0..=m).all(|p| (0..=m).all(|q| self.h[p][q] == self.h[m - p][m - q]))
    }

    /// `Σ_{p+q=k} h^{p,q} ≥ b_k` for every `k`.
    pub fn froelicher_inequality_check(&self, betti: &[usize]) -> bool {
        let totals = self.totals();
        totals.len() == betti.len() && totals.iter().zip(betti).all(|(h, b)| h >= b)
    }
}

/// The complexified Chevalley complex in the (1,0)/(0,1) frame together with
/// its `∂` and `∂̄` blocks.
#[derive(Clone, Debug)]
pub struct DolbeaultComplex {
    m: usize,
    frame: Matrix,
    constants: StructureConstants,
    complex: CochainComplex,
    bases: Vec<Vec<BigradedBasis>>,
    del: Vec<Vec<Matrix>>,
    delbar: Vec<Vec<Matrix>>,
}

impl DolbeaultComplex {
    /// Fails with [`Error::NonIntegrable`] if `d` has a component outside
    /// bidegrees `(p+1,q)` and `(p,q+1)`.
    pub fn new(l: &LieAlgebra, j: &ComplexStructure) -> Result<Self> {
        if l.dim() != j.dim() {
            return Err(Error::DimensionMismatch(format!(
                "J of size {} on a Lie algebra of dimension {}",
                j.dim(),
                l.dim()
            )));
        }
        let n = l.dim();
        let m = n / 2;
        let mut columns = j.onezero_rows();
        columns.extend(j.zeroone_rows());
        let frame = Matrix::from_rows(n, columns)?.transpose();
        let constants = l.constants().change_basis(&frame)?;
        let complex = CochainComplex::from_constants(&constants)?;
        let exterior: Vec<ExteriorBasis> = (0..=n).map(|k| ExteriorBasis::new(n, k)).collect();
        let bases: Vec<Vec<BigradedBasis>> = (0..=m)
            .map(|p| {
                (0..=m)
                    .map(|q| BigradedBasis::new(m, p, q, &exterior[p + q]))
                    .collect()
            })
            .collect();
        for k in 0..n {
            check_bidegrees(m, complex.differential(k).expect("k < n"), &exterior[k], &exterior[k + 1])?;
        }
        let block = |p: usize, q: usize, tp: usize, tq: usize| -> Matrix {
            let source = &bases[p][q];
            if tp > m || tq > m {
                return Matrix::zeros(0, source.len());
            }
            let target = &bases[tp][tq];
            complex
                .differential(p + q)
                .expect("p + q < n when the target exists")
                .select_rows(&target.positions)
                .select_cols(&source.positions)
        };
        let del = (0..=m)
            .map(|p| (0..=m).map(|q| block(p, q, p + 1, q)).collect())
            .collect();
        let delbar = (0..=m)
            .map(|p| (0..=m).map(|q| block(p, q, p, q + 1)).collect())
            .collect();
        let out = DolbeaultComplex {
            m,
            frame,
            constants,
            complex,
            bases,
            del,
            delbar,
        };
        out.check_antiholomorphic_part()?;
        Ok(out)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Columns `Z_1, …, Z_m, Z̄_1, …, Z̄_m` in the real basis.
    pub fn frame(&self) -> &Matrix {
        &self.frame
    }

    /// Structure constants of `g ⊗ ℂ` in the frame.
    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// The complexified Chevalley complex in the frame's dual basis.
    pub fn total_complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn basis(&self, p: usize, q: usize) -> &BigradedBasis {
        &self.bases[p][q]
    }

    /// `∂: Λ^{p,q} → Λ^{p+1,q}` (zero rows when `p = m`).
    pub fn del(&self, p: usize, q: usize) -> &Matrix {
        &self.del[p][q]
    }

    /// `∂̄: Λ^{p,q} → Λ^{p,q+1}` (zero rows when `q = m`).
    pub fn delbar(&self, p: usize, q: usize) -> &Matrix {
        &self.delbar[p][q]
    }

    /// `∂² = 0`, `∂̄² = 0` and `∂∂̄ + ∂̄∂ = 0` on every bidegree.
    pub fn verify_identities(&self) -> Result<()> {
        let m = self.m;
        for p in 0..=m {
            for q in 0..=m {
                if p < m && !self.del[p + 1][q].mul(&self.del[p][q])?.is_zero() {
                    return Err(Error::Internal(format!("∂² ≠ 0 on Λ^{{{p},{q}}}")));
                }
                if q < m && !self.delbar[p][q + 1].mul(&self.delbar[p][q])?.is_zero() {
                    return Err(Error::Internal(format!("∂̄² ≠ 0 on Λ^{{{p},{q}}}")));
                }
                if p < m && q < m {
                    let a = self.delbar[p + 1][q].mul(&self.del[p][q])?;
                    let b = self.del[p][q + 1].mul(&self.delbar[p][q])?;
                    if !a.add(&b)?.is_zero() {
                        return Err(Error::Internal(format!(
                            "∂∂̄ + ∂̄∂ ≠ 0 on Λ^{{{p},{q}}}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// On `Λ^{0,•}`, `∂̄` must be the Chevalley differential of the subalgebra
    /// `g^{0,1}`.
    fn check_antiholomorphic_part(&self) -> Result<()> {
        let m = self.m;
        let anti: Vec<usize> = (m..2 * m).collect();
        let sub = self.constants.restrict_to_indices(&anti)?;
        for q in 0..m {
            if chevalley_differential(&sub, q) != self.delbar[0][q] {
                return Err(Error::Internal(format!(
                    "∂̄ on Λ^{{0,{q}}} differs from the differential of g^{{0,1}}"
                )));
            }
        }
        Ok(())
    }

    pub fn hodge_numbers(&self) -> HodgeDiamond {
        let m = self.m;
        let cells: Vec<(usize, usize)> = (0..=m).flat_map(|p| (0..=m).map(move |q| (p, q))).collect();
        let ranks: Vec<usize> = cells
            .par_iter()
            .map(|&(p, q)| self.delbar[p][q].rank())
            .collect();
        let rank = |p: usize, q: usize| ranks[p * (m + 1) + q];
        let h = (0..=m)
            .map(|p| {
                (0..=m)
                    .map(|q| {
                        let incoming = if q == 0 { 0 } else { rank(p, q - 1) };
                        self.bases[p][q].len() - rank(p, q) - incoming
                    })
                    .collect()
            })
            .collect();
        HodgeDiamond { m, h }
    }
}

fn check_bidegrees(
    m: usize,
    d: &Matrix,
    source: &ExteriorBasis,
    target: &ExteriorBasis,
) -> Result<()> {
    let bidegree = |t: &[usize]| {
        let p = t.iter().filter(|&&x| x < m).count();
        (p, t.len() - p)
    };
    for (col, s) in source.tuples().iter().enumerate() {
        let (p, q) = bidegree(s);
        for (row, t) in target.tuples().iter().enumerate() {
            if d[(row, col)].is_zero() {
                continue;
            }
            let bd = bidegree(t);
            if bd != (p + 1, q) && bd != (p, q + 1) {
                return Err(Error::NonIntegrable);
            }
        }
    }
    Ok(())
}

/// `(∂, ∂̄)` on `Λ^{p,q}`.
pub fn del_delbar(
    l: &LieAlgebra,
    j: &ComplexStructure,
    p: usize,
    q: usize,
) -> Result<(Matrix, Matrix)> {
    let complex = DolbeaultComplex::new(l, j)?;
    if p > complex.m() || q > complex.m() {
        return Err(Error::DimensionMismatch(format!(
            "bidegree ({p},{q}) exceeds complex dimension {}",
            complex.m()
        )));
    }
    Ok((complex.del(p, q).clone(), complex.delbar(p, q).clone()))
}

pub fn hodge_numbers(l: &LieAlgebra, j: &ComplexStructure) -> Result<HodgeDiamond> {
    Ok(DolbeaultComplex::new(l, j)?.hodge_numbers())
}
