//! Seeded random nilpotent algebras with integrable complex structures.
//!
//! Construction: random two-step data `δ` on `V ⊕ W`, then up to two central
//! extensions by a random closed form of type (2,0)+(1,1), then a random
//! rational change of basis so that neither the constants nor `J` are in
//! normal form.

use nilcoh::dolbeault::DolbeaultComplex;
use nilcoh::lie::{from_delta, DeltaTerm, FormType, StructureConstants};
use nilcoh::{ComplexStructure, LieAlgebra, Matrix, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn small(rng: &mut ChaCha8Rng, bound: i64) -> Scalar {
    Scalar::from_int(rng.gen_range(-bound..=bound))
}

fn gaussian(rng: &mut ChaCha8Rng) -> Scalar {
    let re = small(rng, 2);
    let im = small(rng, 2);
    &re + &(&im * &Scalar::i())
}

fn random_delta(rng: &mut ChaCha8Rng, dim_v: usize, dim_w: usize) -> Vec<DeltaTerm> {
    let mut terms = Vec::new();
    for w in 0..dim_w {
        for _ in 0..rng.gen_range(0..=3) {
            let mixed = dim_v < 2 || rng.gen_bool(0.5);
            let (form, a, b) = if mixed {
                (FormType::Mixed, rng.gen_range(0..dim_v), rng.gen_range(0..dim_v))
            } else {
                let a = rng.gen_range(0..dim_v - 1);
                (FormType::Holomorphic, a, rng.gen_range(a + 1..dim_v))
            };
            let c = gaussian(rng);
            if !c.is_zero() {
                terms.push(DeltaTerm::new(w, form, a, b, c));
            }
        }
    }
    terms
}

/// Adds a complex direction `ω` with `dω = σ` for a random closed `σ` of
/// type (2,0)+(1,1); `J` is extended by the standard rotation.
fn central_extension(
    rng: &mut ChaCha8Rng,
    l: &LieAlgebra,
    j: &ComplexStructure,
) -> (LieAlgebra, ComplexStructure) {
    let n = l.dim();
    let dc = DolbeaultComplex::new(l, j).expect("integrable");
    let m = dc.m();
    let two = nilcoh::chevalley::ExteriorBasis::new(n, 2);
    let allowed: Vec<usize> = (0..two.len())
        .filter(|&pos| two.tuple(pos).iter().filter(|&&x| x < m).count() >= 1)
        .collect();
    let d2 = match dc.total_complex().differential(2) {
        Some(d) => d.select_cols(&allowed),
        None => Matrix::zeros(0, allowed.len()),
    };
    let kernel = d2.kernel();
    let mut sigma = vec![Scalar::zero(); two.len()];
    for v in kernel.basis_vectors() {
        let f = small(rng, 2);
        for (k, x) in v.iter().enumerate() {
            sigma[allowed[k]] = &sigma[allowed[k]] + &(&f * x);
        }
    }
    // Real coefficients of σ: ω^a ∧ ω^b has e^i∧e^j coefficient
    // Q[a][i] Q[b][j] - Q[a][j] Q[b][i] with Q the inverse frame.
    let q = dc.frame().inverse().expect("frame is a basis");
    let mut constants = StructureConstants::zero(n + 2);
    for b in l.brackets() {
        constants.set(b.i, b.j, b.k, b.c.clone());
    }
    for i in 0..n {
        for jj in i + 1..n {
            let mut coeff = Scalar::zero();
            for (pos, s) in sigma.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let t = two.tuple(pos);
                let w = &(&q[(t[0], i)] * &q[(t[1], jj)]) - &(&q[(t[0], jj)] * &q[(t[1], i)]);
                coeff = coeff.add_mul(s, &w);
            }
            // d e^{n} = Re σ, d e^{n+1} = Im σ and c_{ij}^k = -(d e^k)_{ij}.
            if !coeff.is_zero() {
                constants.set(i, jj, n, -coeff.real_part());
                constants.set(i, jj, n + 1, -coeff.imag_part());
            }
        }
    }
    let algebra = LieAlgebra::from_constants(constants).expect("real constants");
    let mut jm = Matrix::zeros(n + 2, n + 2);
    for r in 0..n {
        for c in 0..n {
            jm[(r, c)] = j.matrix()[(r, c)].clone();
        }
    }
    jm[(n + 1, n)] = Scalar::one();
    jm[(n, n + 1)] = Scalar::from_int(-1);
    (algebra, ComplexStructure::new(jm).expect("J^2 = -1"))
}

fn random_basis(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let p = Matrix::from_fn(n, n, |r, c| {
            if r == c {
                Scalar::from_int(rng.gen_range(1..=2))
            } else if rng.gen_bool(0.4) {
                small(rng, 1)
            } else {
                Scalar::zero()
            }
        });
        if p.rank() == n {
            return p;
        }
    }
}

/// A random nilpotent algebra of real dimension at most 6 with an
/// integrable complex structure.
pub fn integrable_instance(rng: &mut ChaCha8Rng) -> (LieAlgebra, ComplexStructure) {
    let dim_v = rng.gen_range(1..=3);
    let dim_w = rng.gen_range(0..=3 - dim_v);
    let delta = random_delta(rng, dim_v, dim_w);
    let (mut l, mut j) = from_delta(dim_v, dim_w, &delta).expect("valid delta");
    while l.dim() < 6 && rng.gen_bool(0.5) {
        (l, j) = central_extension(rng, &l, &j);
    }
    let p = random_basis(rng, l.dim());
    let l2 = l.change_basis(&p).expect("invertible");
    let j2 = j.change_basis(&p).expect("invertible");
    (l2, j2)
}

/// A random structure `P^{-1} J_0 P` on a random algebra, integrable or not.
pub fn arbitrary_structure(rng: &mut ChaCha8Rng) -> (LieAlgebra, ComplexStructure) {
    let (l, _) = integrable_instance(rng);
    let p = random_basis(rng, l.dim());
    let j = ComplexStructure::standard(l.dim())
        .unwrap()
        .change_basis(&p)
        .unwrap();
    (l, j)
}

