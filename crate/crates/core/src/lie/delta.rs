//! Two-step nilpotent algebras with integrable J built from prescribed
//! differentials of (1,0)-forms.
//!
//! With `g^{1,0} = V ⊕ W` and dual (1,0)-forms `ω^a`, a map
//! `δ: W* → Λ²V* ⊕ (V* ⊗ V̄*)` is extended to `d` on `g*_ℂ` by zero on
//! `V* ⊕ V̄*` and by `δ + δ̄` on `W* ⊕ W̄*`. The real algebra is recovered from
//! `dα(x, y) = -α([x, y])`.

use serde::{Deserialize, Serialize};

use crate::arith::Scalar;
use crate::cstruct::ComplexStructure;
use crate::error::{Error, Result};

use super::{Bracket, LieAlgebra};

/// Type of a two-form built from (1,0)-forms on `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormType {
    /// `ω^a ∧ ω^b`
    Holomorphic,
    /// `ω^a ∧ ω̄^b`
    Mixed,
    /// `ω̄^a ∧ ω̄^b`; never integrable, always rejected.
    Antiholomorphic,
}

/// `δ(ω^{dimV + target}) += coeff · form(a, b)`, indices 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTerm {
    pub target: usize,
    pub form: FormType,
    pub a: usize,
    pub b: usize,
    pub coeff: Scalar,
}

impl DeltaTerm {
    pub fn new(target: usize, form: FormType, a: usize, b: usize, coeff: Scalar) -> Self {
        DeltaTerm {
            target,
            form,
            a,
            b,
            coeff,
        }
    }
}

/// Complex one-form `ω^a = e^{2a} + i e^{2a+1}` in real coordinates.
fn omega(n: usize, a: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[2 * a] = Scalar::one();
    v[2 * a + 1] = Scalar::i();
    v
}

fn omega_bar(n: usize, a: usize) -> Vec<Scalar> {
    omega(n, a).iter().map(Scalar::conj).collect()
}

/// Builds the real `2(dimV + dimW)`-dimensional algebra and the structure
/// whose (1,0)-space is `V ⊕ W`. The real basis is ordered
/// `e_{2a}, e_{2a+1}` for the a-th complex direction, V first.
pub fn from_delta(
    dim_v: usize,
    dim_w: usize,
    delta: &[DeltaTerm],
) -> Result<(LieAlgebra, ComplexStructure)> {
    let m = dim_v + dim_w;
    let n = 2 * m;
    // forms[w][i][j] is the coefficient of e^i ∧ e^j (i < j) in dω^{dimV + w}.
    let mut forms = vec![vec![vec![Scalar::zero(); n]; n]; dim_w];
    for term in delta {
        if term.target >= dim_w {
            return Err(Error::InvalidDelta(format!(
                "target {} outside W of dimension {dim_w}",
                term.target + 1
            )));
        }
        if term.a >= dim_v || term.b >= dim_v {
            return Err(Error::InvalidDelta(format!(
                "form indices ({}, {}) outside V of dimension {dim_v}",
                term.a + 1,
                term.b + 1
            )));
        }
        let (alpha, beta) = match term.form {
            FormType::Holomorphic => (omega(n, term.a), omega(n, term.b)),
            FormType::Mixed => (omega(n, term.a), omega_bar(n, term.b)),
            FormType::Antiholomorphic => {
                return Err(Error::InvalidDelta(
                    "a component in the conjugate square of V* breaks integrability".into(),
                ))
            }
        };
        let table = &mut forms[term.target];
        for i in 0..n {
            for j in i + 1..n {
                let wedge = &alpha[i] * &beta[j] - &alpha[j] * &beta[i];
                if !wedge.is_zero() {
                    table[i][j] = table[i][j].add_mul(&term.coeff, &wedge);
                }
            }
        }
    }
    let mut brackets = Vec::new();
    for (w, table) in forms.iter().enumerate() {
        let re_index = 2 * (dim_v + w);
        for i in 0..n {
            for j in i + 1..n {
                let coeff = &table[i][j];
                if coeff.is_zero() {
                    continue;
                }
                // d e^{re} = Re dω, d e^{im} = Im dω; c_{ij}^k = -(d e^k)_{ij}.
                let re = coeff.real_part();
                let im = coeff.imag_part();
                if !re.is_zero() {
                    brackets.push(Bracket::new(i, j, re_index, -re));
                }
                if !im.is_zero() {
                    brackets.push(Bracket::new(i, j, re_index + 1, -im));
                }
            }
        }
    }
    let algebra = LieAlgebra::new(n, &brackets)?;
    let j = ComplexStructure::standard(n)?;
    Ok((algebra, j))
}
