use nilcoh::{parse_scalar, Matrix, Scalar, Subspace};
use num_rational::BigRational;
use proptest::prelude::*;

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `(a + b t + c t²) / (1 + d t) + i (e + f t)` with small coefficients.
fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -3i64..=3, -2i64..=2, -2i64..=2, -3i64..=3, -2i64..=2, 1i64..=4).prop_map(
        |(a, b, c, d, e, f, den)| {
            let t = Scalar::t();
            let num = &(&int(a) + &(&int(b) * &t)) + &(&int(c) * &(&t * &t));
            let denom = &int(1) + &(&int(d) * &t);
            let re = num.div(&denom).expect("1 + d t is nonzero");
            let im = &int(e) + &(&int(f) * &t);
            &re.div(&int(den)).unwrap() + &(&im * &Scalar::i())
        },
    )
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

fn matrix(rows: usize, cols: usize, entry: BoxedStrategy<Scalar>) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(entry, rows * cols).prop_map(move |v| {
        Matrix::from_fn(rows, cols, |r, c| v[r * cols + c].clone())
    })
}

/// Sparse-ish entries so that kernels are usually nontrivial.
fn sparse_rational() -> BoxedStrategy<Scalar> {
    prop_oneof![3 => Just(Scalar::zero()), 2 => rational()].boxed()
}

fn sparse_parametric() -> BoxedStrategy<Scalar> {
    prop_oneof![
        3 => Just(Scalar::zero()),
        1 => rational(),
        1 => (-2i64..=2).prop_map(|k| &Scalar::t() + &int(k)),
    ]
    .boxed()
}

fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    (0..=n).prop_flat_map(move |k| matrix(k, n, sparse_rational())).prop_map(Subspace::from_generators)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x + &Scalar::zero(), x.clone());
        prop_assert_eq!(&x * &Scalar::one(), x);
    }

    #[test]
    fn inverses(x in scalar()) {
        if x.is_zero() {
            prop_assert!(x.inv().is_err());
        } else {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation(x in scalar(), y in scalar()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert!((&x + &x.conj()).is_real());
        prop_assert_eq!(&x.real_part() + &(&x.imag_part() * &Scalar::i()), x);
    }

    #[test]
    fn render_parse_round_trip(x in scalar()) {
        prop_assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in scalar(), y in scalar(), n in -5i64..=5) {
        let at = BigRational::from_integer(n.into());
        if let (Some(a), Some(b), Some(p)) = (x.eval_t(&at), y.eval_t(&at), (&x * &y).eval_t(&at)) {
            prop_assert_eq!(p, &a * &b);
        }
    }

    #[test]
    fn rank_nullity(a in matrix(4, 5, sparse_parametric())) {
        let kernel = a.kernel();
        prop_assert_eq!(a.rank() + kernel.dim(), 5);
        for v in kernel.basis_vectors() {
            prop_assert!(a.apply(v).unwrap().iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(a.image().dim(), a.rank());
    }

    #[test]
    fn rref_is_idempotent(a in matrix(4, 5, sparse_parametric())) {
        let r = a.rref();
        prop_assert_eq!(r.rref(), r.clone());
        prop_assert_eq!(r.rank(), a.rank());
    }

    #[test]
    fn inverse_of_unit_lower_times_upper(l in matrix(4, 4, sparse_rational()), u in matrix(4, 4, sparse_rational())) {
        let lower = Matrix::from_fn(4, 4, |r, c| match r.cmp(&c) {
            std::cmp::Ordering::Equal => Scalar::one(),
            std::cmp::Ordering::Greater => l[(r, c)].clone(),
            std::cmp::Ordering::Less => Scalar::zero(),
        });
        let upper = Matrix::from_fn(4, 4, |r, c| match r.cmp(&c) {
            std::cmp::Ordering::Equal => &Scalar::t() + &int(r as i64),
            std::cmp::Ordering::Less => u[(r, c)].clone(),
            std::cmp::Ordering::Greater => Scalar::zero(),
        });
        let a = lower.mul(&upper).unwrap();
        let inv = a.inverse().expect("det is a nonzero polynomial");
        prop_assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(4));
    }

    #[test]
    fn dimension_formula(u in subspace(5), v in subspace(5)) {
        let sum = u.sum(&v).unwrap();
        let meet = u.intersection(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap() && meet.is_subspace_of(&v).unwrap());
        prop_assert!(u.is_subspace_of(&sum).unwrap() && v.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn modular_law(u in subspace(5), v in subspace(5), w in subspace(5)) {
        // Force U ⊆ W.
        let w = w.sum(&u).unwrap();
        let left = w.intersection(&u.sum(&v).unwrap()).unwrap();
        let right = u.sum(&w.intersection(&v).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn annihilator_and_preimage(u in subspace(5), f in matrix(4, 5, sparse_rational()), t in subspace(4)) {
        prop_assert_eq!(u.annihilator().annihilator(), u.clone());
        prop_assert_eq!(u.annihilator().dim() + u.dim(), 5);
        let pre = Subspace::preimage(&f, &t).unwrap();
        prop_assert!(pre.image_under(&f).unwrap().is_subspace_of(&t).unwrap());
        prop_assert!(f.kernel().is_subspace_of(&pre).unwrap());
    }
}
