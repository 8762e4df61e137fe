//! Left-invariant complex structures `J` on a real Lie algebra.

use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::lie::{CentralSeries, LieAlgebra, SeriesKind};
use crate::linalg::{conj_vector, unit_vector, Matrix, Subspace};

/// A real endomorphism `J` with `J² = -I`.
///
/// The `+i` eigenspace `g^{1,0}` inside the complexified coordinate space is
/// derived on first use and cached; the cache does not take part in
/// equality.
#[derive(Clone, Debug)]
pub struct ComplexStructure {
    j: Matrix,
    onezero: OnceLock<Subspace>,
}

impl PartialEq for ComplexStructure {
    fn eq(&self, other: &Self) -> bool {
        self.j == other.j
    }
}

impl Eq for ComplexStructure {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub abelian: bool,
    pub parallelisable: bool,
    pub rational: bool,
    pub nilpotent_j: bool,
}

impl ComplexStructure {
    /// Checks squareness, even size, real entries and `J² = -I`.
    pub fn new(j: Matrix) -> Result<Self> {
        if !j.is_square() {
            return Err(Error::NotComplexStructure("J must be square".into()));
        }
        if !j.rows().is_multiple_of(2) {
            return Err(Error::NotComplexStructure(
                "J needs an even-dimensional space".into(),
            ));
        }
        if let Some(x) = j.entries().iter().find(|x| !x.is_real()) {
            return Err(Error::NonReal(x.to_string()));
        }
        let square = j.mul(&j)?;
        if square != Matrix::identity(j.rows()).scale(&Scalar::from_int(-1)) {
            return Err(Error::NotComplexStructure("J^2 != -I".into()));
        }
        Ok(ComplexStructure {
            j,
            onezero: OnceLock::new(),
        })
    }

    /// The unique real `J` whose `+i` eigenspace is spanned by `rows`.
    pub fn from_onezero_basis(rows: &Matrix) -> Result<Self> {
        let n = rows.cols();
        if !n.is_multiple_of(2) || rows.rows() != n / 2 {
            return Err(Error::NotComplexStructure(format!(
                "a (1,0)-basis of a {n}-dimensional algebra needs {} rows, got {}",
                n / 2,
                rows.rows()
            )));
        }
        if rows.rank() != n / 2 {
            return Err(Error::NotComplexStructure(
                "the (1,0)-vectors are linearly dependent".into(),
            ));
        }
        let both = rows.vstack(&rows.conj())?;
        if both.rank() != n {
            return Err(Error::NotComplexStructure(
                "the (1,0)-space meets its conjugate".into(),
            ));
        }
        // J = P D P^{-1} with P the eigenvectors as columns.
        let p = both.transpose();
        let m = n / 2;
        let d = Matrix::from_fn(n, n, |r, c| match (r == c, r < m) {
            (false, _) => Scalar::zero(),
            (true, true) => Scalar::i(),
            (true, false) => -Scalar::i(),
        });
        let p_inv = p.inverse().expect("rank n");
        let j = p.mul(&d)?.mul(&p_inv)?;
        let cs = ComplexStructure::new(j).map_err(|e| {
            Error::Internal(format!("reconstructed J is not a complex structure: {e}"))
        })?;
        let _ = cs.onezero.set(Subspace::from_generators(rows.clone()));
        Ok(cs)
    }

    /// The standard structure `e_{2a} ↦ e_{2a+1}`, `e_{2a+1} ↦ -e_{2a}` whose
    /// (1,0)-vectors are `e_{2a} - i e_{2a+1}` (0-based).
    pub fn standard(n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::NotComplexStructure(
                "J needs an even-dimensional space".into(),
            ));
        }
        let mut j = Matrix::zeros(n, n);
        for a in 0..n / 2 {
            j[(2 * a + 1, 2 * a)] = Scalar::one();
            j[(2 * a, 2 * a + 1)] = Scalar::from_int(-1);
        }
        ComplexStructure::new(j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    /// `g^{1,0}`, the `+i` eigenspace, in RREF.
    pub fn onezero(&self) -> &Subspace {
        self.onezero.get_or_init(|| {
            let n = self.dim();
            let shifted = self
                .j
                .sub(&Matrix::identity(n).scale(&Scalar::i()))
                .expect("square");
            shifted.kernel()
        })
    }

    /// `g^{0,1} = conj(g^{1,0})`.
    pub fn zeroone(&self) -> Subspace {
        self.onezero().conj()
    }

    pub fn is_rational(&self) -> bool {
        self.j.entries().iter().all(Scalar::is_rational)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.j.apply(v)
    }

    pub fn image(&self, w: &Subspace) -> Result<Subspace> {
        w.image_under(&self.j)
    }

    pub fn is_invariant(&self, w: &Subspace) -> Result<bool> {
        Ok(&self.image(w)? == w)
    }

    /// `w + J w`, the smallest J-invariant subspace containing `w`.
    pub fn closure(&self, w: &Subspace) -> Result<Subspace> {
        w.sum(&self.image(w)?)
    }

    /// `w ∩ J w`, the largest J-invariant subspace of `w`.
    pub fn interior(&self, w: &Subspace) -> Result<Subspace> {
        w.intersection(&self.image(w)?)
    }

    /// The same structure in the basis formed by the columns of `basis`.
    pub fn change_basis(&self, basis: &Matrix) -> Result<ComplexStructure> {
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        ComplexStructure::new(inv.mul(&self.j)?.mul(basis)?)
    }

    fn check_dim(&self, l: &LieAlgebra) -> Result<()> {
        if l.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "J of size {} on a Lie algebra of dimension {}",
                self.dim(),
                l.dim()
            )));
        }
        Ok(())
    }

    /// `[x,y] - [Jx,Jy] + J[Jx,y] + J[x,Jy] = 0` on all basis pairs.
    pub fn nijenhuis_vanishes(&self, l: &LieAlgebra) -> Result<bool> {
        self.check_dim(l)?;
        let n = self.dim();
        let images: Vec<Vec<Scalar>> = (0..n).map(|c| self.j.column(c)).collect();
        for a in 0..n {
            for b in a + 1..n {
                let (x, y) = (unit_vector(n, a), unit_vector(n, b));
                let (jx, jy) = (&images[a], &images[b]);
                let t1 = l.bracket(&x, &y)?;
                let t2 = l.bracket(jx, jy)?;
                let t3 = self.apply(&l.bracket(jx, &y)?)?;
                let t4 = self.apply(&l.bracket(&x, jy)?)?;
                let nonzero = (0..n).any(|k| !(&t1[k] - &t2[k] + &t3[k] + &t4[k]).is_zero());
                if nonzero {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `[g^{1,0}, g^{1,0}] ⊆ g^{1,0}`.
    pub fn onezero_is_closed(&self, l: &LieAlgebra) -> Result<bool> {
        self.check_dim(l)?;
        let v = self.onezero();
        l.bracket_lands_in(v, v, v)
    }

    /// Integrability; both criteria are evaluated and must agree.
    pub fn is_integrable(&self, l: &LieAlgebra) -> Result<bool> {
        let nijenhuis = self.nijenhuis_vanishes(l)?;
        let closed = self.onezero_is_closed(l)?;
        if nijenhuis != closed {
            return Err(Error::Internal(format!(
                "Nijenhuis test says {nijenhuis} but eigenspace closure says {closed}"
            )));
        }
        Ok(nijenhuis)
    }

    pub fn require_integrable(&self, l: &LieAlgebra) -> Result<()> {
        if self.is_integrable(l)? {
            Ok(())
        } else {
            Err(Error::NonIntegrable)
        }
    }

    /// `t^0 = 0`, `t^{i+1} = {x : [x,g] ⊆ t^i and [Jx,g] ⊆ t^i}`, i.e. the
    /// largest J-invariant part of the preimage of the centre of `g/t^i`.
    /// Stops when the chain becomes stationary.
    pub fn adapted_ascending_series(&self, l: &LieAlgebra) -> Result<CentralSeries> {
        self.check_dim(l)?;
        let n = self.dim();
        let mut steps = vec![Subspace::zero(n)];
        loop {
            let last = steps.last().expect("nonempty");
            if last.is_full() {
                break;
            }
            let next = self.interior(&l.centralizer_mod(last)?)?;
            if &next == last {
                break;
            }
            steps.push(next);
        }
        let nu = steps.len() - 1;
        Ok(CentralSeries {
            kind: SeriesKind::AdaptedToJ,
            steps,
            nu,
        })
    }

    pub fn classify(&self, l: &LieAlgebra) -> Result<Classification> {
        self.require_integrable(l)?;
        let v = self.onezero();
        let vbar = self.zeroone();
        let zero = Subspace::zero(self.dim());
        let abelian = l.bracket_lands_in(v, v, &zero)?;
        let parallelisable = l.bracket_lands_in(v, &vbar, &zero)?;
        let nilpotent_j = self
            .adapted_ascending_series(l)?
            .steps
            .last()
            .is_some_and(Subspace::is_full);
        Ok(Classification {
            abelian,
            parallelisable,
            rational: self.is_rational(),
            nilpotent_j,
        })
    }

    /// A basis of `g^{1,0}` as row vectors (the RREF basis).
    pub fn onezero_rows(&self) -> Vec<Vec<Scalar>> {
        self.onezero().basis_vectors().map(<[Scalar]>::to_vec).collect()
    }

    /// Conjugates of [`Self::onezero_rows`].
    pub fn zeroone_rows(&self) -> Vec<Vec<Scalar>> {
        self.onezero_rows().iter().map(|r| conj_vector(r)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Bracket;
    use crate::parse_scalar;

    fn s(x: &str) -> Scalar {
        parse_scalar(x).unwrap()
    }

    fn rows(n: usize, rs: &[&[&str]]) -> Matrix {
        Matrix::from_rows(n, rs.iter().map(|r| r.iter().map(|x| s(x)).collect()).collect())
            .unwrap()
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

    fn h7_j(lambda: &str) -> ComplexStructure {
        let l = lambda;
        let x2_e1 = format!("({l})*i");
        let x3_e4 = l.to_string();
        ComplexStructure::from_onezero_basis(&rows(
            6,
            &[
                &["1", "-i", "0", "0", "0", "0"],
                &[&x2_e1, "0", "1", "-i", "0", "0"],
                &["0", "0", "0", &x3_e4, "-1", "i"],
            ],
        ))
        .unwrap()
    }

    #[test]
    fn rotation_from_onezero_row() {
        let j = ComplexStructure::from_onezero_basis(&rows(2, &[&["1", "-i"]])).unwrap();
        assert_eq!(j.matrix(), &Matrix::from_ints(&[&[0, -1], &[1, 0]]));
        assert_eq!(j, ComplexStructure::standard(2).unwrap());
    }

    #[test]
    fn onezero_round_trip() {
        let j = h7_j("0");
        let fresh = ComplexStructure::new(j.matrix().clone()).unwrap();
        assert_eq!(fresh.onezero(), j.onezero());
        let js = h7_j("t");
        assert!(js.matrix().entries().iter().all(Scalar::is_real));
        assert!(!js.is_rational());
        let fresh = ComplexStructure::new(js.matrix().clone()).unwrap();
        assert_eq!(fresh.onezero(), js.onezero());
    }

    #[test]
    fn rejects_bad_onezero_data() {
        let dependent = rows(4, &[&["1", "-i", "0", "0"], &["2", "-2*i", "0", "0"]]);
        assert!(ComplexStructure::from_onezero_basis(&dependent).is_err());
        let real = rows(2, &[&["1", "0"]]);
        assert!(ComplexStructure::from_onezero_basis(&real).is_err());
        assert!(ComplexStructure::new(Matrix::identity(2)).is_err());
    }

    #[test]
    fn integrability_examples() {
        let ab = LieAlgebra::abelian(4);
        assert!(ComplexStructure::standard(4).unwrap().is_integrable(&ab).unwrap());
        assert!(h7_j("0").is_integrable(&h7()).unwrap());
        assert!(h7_j("t").is_integrable(&h7()).unwrap());
        let bad = ComplexStructure::from_onezero_basis(&rows(
            6,
            &[
                &["1", "0", "-i", "0", "0", "0"],
                &["0", "1", "0", "0", "-i", "0"],
                &["0", "0", "0", "1", "0", "-i"],
            ],
        ))
        .unwrap();
        assert!(!bad.is_integrable(&h7()).unwrap());
        assert!(matches!(bad.classify(&h7()), Err(Error::NonIntegrable)));
    }

    #[test]
    fn invariance_and_closure() {
        let j0 = h7_j("0");
        let centre = Subspace::coordinate(6, [3, 4, 5]);
        assert!(!j0.is_invariant(&centre).unwrap());
        assert!(j0.is_invariant(&Subspace::coordinate(6, [4, 5])).unwrap());
        assert_eq!(
            j0.closure(&centre).unwrap(),
            Subspace::coordinate(6, [2, 3, 4, 5])
        );
        assert_eq!(j0.interior(&centre).unwrap(), Subspace::coordinate(6, [4, 5]));
    }

    #[test]
    fn h7_classification() {
        let c = h7_j("0").classify(&h7()).unwrap();
        assert!(!c.abelian && !c.parallelisable && c.rational);
        let c = h7_j("t").classify(&h7()).unwrap();
        assert!(!c.rational);
        assert!(h7_j("1/2").classify(&h7()).unwrap().rational);
    }
}
