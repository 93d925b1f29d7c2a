use hyperleg_core::braid::*;
use hyperleg_core::exactcore::{series_pow, Quad, RatFunc, Sqrt2, QT};
use hyperleg_core::holonomic::{operator_substitute, DiffOperator};
use hyperleg_core::monodromy::{standard_j, symplectic_reflection};
use hyperleg_core::{Field, Matrix, Poly, Ring, TruncatedSeries, UniPoly};
use proptest::prelude::*;
use rug::Rational;

fn rat() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(a, b)| Rational::from((a, b)))
}

fn upoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rat(), 0..6).prop_map(Poly::new)
}

fn quad() -> impl Strategy<Value = Quad<Sqrt2>> {
    (rat(), rat()).prop_map(|(a, b)| Quad::new(a, b))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries<Rational>> {
    prop::collection::vec(rat(), order + 1).prop_map(move |c| TruncatedSeries::new(c, order))
}

fn unit_quad() -> impl Strategy<Value = Quad<Sqrt2>> {
    // powers of the fundamental unit 1 + √2, with sign
    (0u32..4, any::<bool>()).prop_map(|(k, neg)| {
        let u = Quad::<Sqrt2>::from_ints(1, 1).powu(k);
        if neg {
            u.neg()
        } else {
            u
        }
    })
}

fn move_word() -> impl Strategy<Value = Vec<BraidMove>> {
    prop::collection::vec(prop::sample::select(BraidMove::ALL.to_vec()), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in upoly(), b in upoly(), c in upoly()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn quad_ring_axioms_and_conjugation(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.norm(), a.conj().norm());
    }

    #[test]
    fn series_truncation_consistency(a in series(10), b in series(10), m in 0usize..10) {
        prop_assert_eq!(a.mul(&b).truncate(m), a.truncate(m).mul(&b.truncate(m)));
        prop_assert_eq!(a.add(&b).truncate(m), a.truncate(m).add(&b.truncate(m)));
    }

    #[test]
    fn series_power_law(mut a in series(8), p in (-6i64..6, 1i64..5), q in (-6i64..6, 1i64..5)) {
        a.set_coeff(0, Rational::from(1));
        let (p, q) = (Rational::from(p), Rational::from(q));
        let lhs = series_pow(&a, &p).unwrap().mul(&series_pow(&a, &q).unwrap());
        let rhs = series_pow(&a, &Rational::from(&p + &q)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_functorial(m1 in (1i64..5, -3i64..3, -3i64..3, 1i64..5), m2 in (1i64..5, -3i64..3, -3i64..3, 1i64..5)) {
        let mob = |(a, b, c, d): (i64, i64, i64, i64)| -> Option<QT> {
            (a * d - b * c != 0).then(|| RatFunc::new(UniPoly::from_i64s(&[b, a]), UniPoly::from_i64s(&[d, c])))
        };
        let (Some(f), Some(g)) = (mob(m1), mob(m2)) else { return Ok(()) };
        let l = DiffOperator::new(vec![UniPoly::from_i64s(&[1, 1]), UniPoly::from_i64s(&[0, 2, 1]), UniPoly::from_i64s(&[1, 0, 1])]).unwrap();
        let twice = operator_substitute(&operator_substitute(&l, &f).unwrap(), &g).unwrap();
        let once = operator_substitute(&l, &f.compose(&g)).unwrap();
        prop_assert!(twice.equal_up_to_factor(&once));
    }

    #[test]
    fn braid_words_preserve_product_and_invert(w in move_word()) {
        let seed = seed_zeta8();
        let mut t = seed.clone();
        for &mv in &w {
            t = braid_move(&t, mv).unwrap();
            prop_assert_eq!(tuple_product(&t), tuple_product(&seed));
        }
        for &mv in w.iter().rev() {
            t = braid_move(&t, mv.inverse()).unwrap();
        }
        prop_assert_eq!(t, seed);
    }

    #[test]
    fn fingerprint_is_conjugation_invariant(w in move_word(), g in (unit_quad(), quad(), quad())) {
        let (d, b, c) = g;
        // determinant-one conjugator
        let up = Matrix::from_rows(vec![vec![d.clone(), b], vec![Quad::zero(), d.inv()]]);
        let low = Matrix::from_rows(vec![vec![Quad::one(), Quad::zero()], vec![c, Quad::one()]]);
        let x = up.mul(&low);
        let xi = x.inverse().unwrap();
        let mut t = seed_zeta8();
        for &mv in &w {
            t = braid_move(&t, mv).unwrap();
        }
        let s: MatrixTuple<Sqrt2> = t.clone().map(|m| xi.mul(&m).mul(&x));
        prop_assert_eq!(fingerprint(&s), fingerprint(&t));
        prop_assert!(tuple_equivalent(&AnyTuple::Sqrt2(t), &AnyTuple::Sqrt2(s)).unwrap());
    }

    #[test]
    fn orbit_is_independent_of_visit_order(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = orbit_enumerate_with(&seed_zeta8(), 1000, &OrbitOptions { shuffle_seed: Some(s1) }).unwrap();
        let b = orbit_enumerate_with(&seed_zeta8(), 1000, &OrbitOptions { shuffle_seed: Some(s2) }).unwrap();
        prop_assert_eq!(a.fingerprints, b.fingerprints);
    }

    #[test]
    fn reflections_are_symplectic(d in prop::array::uniform4(-3i64..4)) {
        let j = standard_j();
        let t = symplectic_reflection(&d, &j);
        prop_assert_eq!(t.transpose().mul(&j).mul(&t), j);
        prop_assert!(t.det() == 1);
    }
}
