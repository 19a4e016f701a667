use klr_core::arith::{order_of_zero, quantum_integer, rat, LaurentPoly, MPoly, RatFunc, SignedQPower};
use klr_core::cartan::CartanError;
use klr_core::CartanDatum;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((-4i64..5, -5i64..6), 0..5).prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(k, c)| (k, rat(c)))))
}

// polynomials in q (var 0) and z (var 1)
fn mpoly() -> impl Strategy<Value = MPoly> {
    proptest::collection::vec((0u32..3, 0u32..3, -4i64..5), 0..4).prop_map(|t| {
        let mut p = MPoly::zero();
        for (a, b, c) in t {
            p = &p + &(&(&MPoly::var_pow(0, a) * &MPoly::var_pow(1, b)) * &MPoly::constant(rat(c)));
        }
        p
    })
}

fn nonzero_mpoly() -> impl Strategy<Value = MPoly> {
    mpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (mpoly(), nonzero_mpoly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn signed_power() -> impl Strategy<Value = SignedQPower> {
    (prop::bool::ANY, -3i64..4).prop_map(|(s, e)| SignedQPower::new(if s { 1 } else { -1 }, e))
}

/// `Π (z - c_k)^{±1}` times a nonzero constant in `q`.
fn factored() -> impl Strategy<Value = (RatFunc, Vec<(SignedQPower, bool)>)> {
    (proptest::collection::vec((signed_power(), prop::bool::ANY), 0..4), 1i64..4, -2i64..3).prop_map(|(fs, c, e)| {
        let z = RatFunc::var(1);
        let mut f = RatFunc::q_pow(e).scale(&rat(c));
        for (p, up) in &fs {
            let lin = &z - &p.to_ratfunc();
            f = if *up { &f * &lin } else { &f / &lin };
        }
        (f, fs)
    })
}

fn eval_poly(p: &MPoly, pt: &[RatFunc]) -> RatFunc {
    RatFunc::from_poly(p.clone()).substitute(pt)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn mpoly_ring_axioms(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn quantum_integers_are_bar_invariant(n in -6i64..7, d in 1u32..4) {
        let x = quantum_integer(n, d);
        prop_assert_eq!(x.bar(), x);
    }

    #[test]
    fn order_of_zero_is_additive((f, ff) in factored(), (g, _) in factored(), c in signed_power()) {
        let of = order_of_zero(&f, c).unwrap();
        let og = order_of_zero(&g, c).unwrap();
        prop_assert_eq!(order_of_zero(&(&f * &g), c).unwrap(), of + og);
        // oracle: count the linear factors through c
        let expect: i64 = ff.iter().filter(|(p, _)| *p == c).map(|(_, up)| if *up { 1 } else { -1 }).sum();
        prop_assert_eq!(of, expect);
    }

    #[test]
    fn reduction_is_idempotent_and_keeps_values(n in mpoly(), d in nonzero_mpoly(), g in nonzero_mpoly(),
                                                pts in proptest::collection::vec((-7i64..8, 1i64..5, -7i64..8, 1i64..5), 5)) {
        let f = RatFunc::new(&n * &g, &d * &g).unwrap();
        prop_assert_eq!(f.clone(), RatFunc::new(n.clone(), d.clone()).unwrap());
        prop_assert_eq!(RatFunc::new(f.num().clone(), f.den().clone()).unwrap(), f.clone());
        for (a, b, c, e) in pts {
            let pt = [RatFunc::constant(klr_core::arith::ratio(a, b)), RatFunc::constant(klr_core::arith::ratio(c, e))];
            let den = eval_poly(&(&d * &g), &pt);
            if den.is_zero() || eval_poly(f.den(), &pt).is_zero() {
                continue;
            }
            prop_assert_eq!(&eval_poly(&(&n * &g), &pt) / &den, f.substitute(&pt));
        }
    }
}

fn finite_data() -> Vec<CartanDatum> {
    let mut v: Vec<CartanDatum> = (1..=4).map(CartanDatum::type_a).collect();
    v.push(CartanDatum::type_d(4));
    v.push(CartanDatum::type_d(5));
    for m in [vec![vec![2, -2], vec![-1, 2]], vec![vec![2, -1], vec![-3, 2]], vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]] {
        v.push(CartanDatum::new(m).unwrap());
    }
    v
}

#[test]
fn simple_reflections_permute_positive_roots() {
    for d in finite_data() {
        let roots = d.positive_roots().unwrap();
        for i in 0..d.rank() {
            let ai = d.simple_root(i);
            let neg: Vec<i64> = ai.iter().map(|x| -x).collect();
            assert_eq!(d.reflect(i, &ai), neg);
            let mut img: Vec<Vec<i64>> = roots.iter().filter(|r| **r != ai).map(|r| d.reflect(i, r)).collect();
            let mut rest: Vec<Vec<i64>> = roots.iter().filter(|r| **r != ai).cloned().collect();
            img.sort();
            rest.sort();
            assert_eq!(img, rest, "{:?} s_{i}", d.matrix());
        }
    }
}

proptest! {
    #[test]
    fn bilinear_form_is_symmetric(pick in 0usize..9, x in proptest::collection::vec(-3i64..4, 5), y in proptest::collection::vec(-3i64..4, 5)) {
        let d = &finite_data()[pick];
        let n = d.rank();
        prop_assert_eq!(d.pair_roots(&x[..n], &y[..n]), d.pair_roots(&y[..n], &x[..n]));
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(d.form(i, j), d.form(j, i));
            }
        }
    }

    #[test]
    fn acceptance_matches_the_symmetrizability_oracle(off in proptest::collection::vec(-3i64..1, 6)) {
        let mut it = off.iter();
        let a: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| if i == j { 2 } else { *it.next().unwrap() }).collect()).collect();
        let pattern = (0..3).all(|i| (0..3).all(|j| (a[i][j] == 0) == (a[j][i] == 0)));
        let cycle = a[0][1] * a[1][2] * a[2][0] == a[1][0] * a[2][1] * a[0][2];
        let got = CartanDatum::new(a.clone());
        prop_assert_eq!(got.is_ok(), pattern && cycle, "{:?}", a);
        if !pattern {
            prop_assert!(matches!(got, Err(CartanError::ZeroPattern(..))));
        } else if !cycle {
            prop_assert_eq!(got, Err(CartanError::NotSymmetrizable));
        }
    }
}
