use std::collections::BTreeMap;

use klr_core::arith::{rat, LaurentPoly};
use klr_core::klr::checks::{closure_ranks, graded_dim_equivalence};
use klr_core::klr::{perm, shuffle_character, Gen, KlrAlgebra, KlrElement, KlrMonomial, QFamily};
use klr_core::CartanDatum;
use proptest::prelude::*;

fn a2() -> (CartanDatum, QFamily) {
    let d = CartanDatum::type_a(2);
    let q = QFamily::from_quiver(&d, &[vec![0, 1], vec![0, 0]]).unwrap();
    (d, q)
}

fn random_monomial(alg: &KlrAlgebra, seed: &[u32]) -> KlrMonomial {
    let n = alg.n();
    let perms = perm::all_perms(n);
    let p = perms[seed[0] as usize % perms.len()].clone();
    let w = &alg.words()[seed[1] as usize % alg.words().len()];
    let exps = (0..n).map(|k| seed[2 + k] % 2).collect();
    KlrMonomial { perm: p, exps, word: w.iter().map(|&x| x as u8).collect() }
}

fn compatible_pair(alg: &KlrAlgebra, s1: &[u32], s2: &[u32]) -> (KlrElement, KlrElement) {
    let a = random_monomial(alg, s1);
    let mut b = random_monomial(alg, s2);
    // force the left idempotent of b to equal the right idempotent of a
    let target: Vec<u8> = a.word.clone();
    b.word = perm::act(&perm::inverse(&b.perm), &target);
    (KlrElement::from_monomial(a), KlrElement::from_monomial(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn multiplication_is_associative(s in proptest::collection::vec(0u32..1000, 18)) {
        let (d, q) = a2();
        let alg = KlrAlgebra::new(d, q, vec![2, 1]);
        let (a, b) = compatible_pair(&alg, &s[0..5], &s[5..10]);
        let (_, c) = compatible_pair(&alg, &s[5..10], &s[10..15]);
        let c = {
            let bm = b.terms().keys().next().unwrap().clone();
            let mut cm = c.terms().keys().next().unwrap().clone();
            cm.word = perm::act(&perm::inverse(&cm.perm), &bm.word);
            KlrElement::from_monomial(cm)
        };
        let left = alg.multiply(&alg.multiply(&a, &b), &c);
        let right = alg.multiply(&a, &alg.multiply(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn psi_is_multiplicative_and_involutive(s in proptest::collection::vec(0u32..1000, 10)) {
        let d = CartanDatum::type_a(1);
        let alg = KlrAlgebra::new(d.clone(), QFamily::standard(&d), vec![3]);
        let (a, b) = compatible_pair(&alg, &s[0..5], &s[5..10]);
        let ab = alg.multiply(&a, &b);
        prop_assert_eq!(alg.psi(&ab), alg.multiply(&alg.psi(&a), &alg.psi(&b)));
        prop_assert_eq!(alg.psi(&alg.psi(&a)), a);
    }

    #[test]
    fn products_are_homogeneous(s in proptest::collection::vec(0u32..1000, 10)) {
        let d = CartanDatum::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let alg = KlrAlgebra::new(d.clone(), QFamily::standard(&d), vec![1, 2]);
        let (a, b) = compatible_pair(&alg, &s[0..5], &s[5..10]);
        let ab = alg.multiply(&a, &b);
        if !ab.is_zero() {
            let da = alg.homogeneous_degree(&a).unwrap();
            let db = alg.homogeneous_degree(&b).unwrap();
            prop_assert_eq!(alg.homogeneous_degree(&ab), Some(da + db));
        }
    }
}

#[test]
fn psi_is_not_an_antihomomorphism() {
    let d = CartanDatum::type_a(1);
    let alg = KlrAlgebra::new(d.clone(), QFamily::standard(&d), vec![2]);
    let t = alg.tau(0);
    let x = alg.x(0);
    let lhs = alg.psi(&alg.multiply(&t, &x));
    let anti = alg.multiply(&alg.psi(&x), &alg.psi(&t));
    assert_ne!(lhs, anti);
}

fn check_formula(datum: CartanDatum, q: QFamily, max_height: usize, cutoff: i64) {
    let r = graded_dim_equivalence(&datum, &q, max_height, cutoff);
    assert!(r.passed, "{:?}", r.mismatches);
}

#[test]
fn graded_dims_match_brute_force_sl2() {
    let d = CartanDatum::type_a(1);
    check_formula(d.clone(), QFamily::standard(&d), 3, 12);
}

#[test]
fn graded_dims_match_brute_force_a2() {
    let (d, q) = a2();
    check_formula(d, q, 3, 12);
}

#[test]
fn graded_dim_example_sl2() {
    let d = CartanDatum::type_a(1);
    let alg = KlrAlgebra::new(d.clone(), QFamily::standard(&d), vec![2]);
    // (1 + q^-2) / (1 - q^2)^2
    let s = alg.graded_dim_hom(&[0, 0], &[0, 0], 4);
    let expect = LaurentPoly::from_terms([(-2, rat(1)), (0, rat(3)), (2, rat(5)), (4, rat(7))]);
    assert_eq!(s.poly(), &expect);
}

/// Character of `R e(νν') / (x_k e, internal τ_l e)` computed by closure.
fn induced_character_by_quotient(alg: &KlrAlgebra, nu: &[usize], nu2: &[usize]) -> BTreeMap<Vec<usize>, LaurentPoly> {
    let mut w = nu.to_vec();
    w.extend_from_slice(nu2);
    let n = w.len();
    let e = alg.idempotent(&w);
    let mut ideal = Vec::new();
    for k in 0..n {
        ideal.push(alg.left_mul_gen(&Gen::X(k), &e));
    }
    for l in 0..n - 1 {
        if l + 1 != nu.len() {
            ideal.push(alg.left_mul_gen(&Gen::T(l), &e));
        }
    }
    let maxf = (0..alg.datum().rank()).map(|i| alg.datum().form(i, i)).max().unwrap();
    let hi = (n * n) as i64 * maxf;
    let all = closure_ranks(alg, vec![e], hi);
    let sub = closure_ranks(alg, ideal.into_iter().filter(|x| !x.is_zero()).collect(), hi);
    let mut out: BTreeMap<Vec<usize>, LaurentPoly> = BTreeMap::new();
    for ((mu, d), r) in all {
        if d > hi - (n * n) as i64 {
            continue;
        }
        let s = sub.get(&(mu.clone(), d)).copied().unwrap_or(0);
        if r > s {
            out.entry(mu).or_default().add_term(d, rat((r - s) as i64));
        }
    }
    out
}

#[test]
fn shuffle_character_matches_quotient() {
    let (d, q) = a2();
    let cases: Vec<(Vec<usize>, Vec<usize>)> = vec![
        (vec![0], vec![0]),
        (vec![0], vec![1]),
        (vec![1], vec![0]),
        (vec![0, 1], vec![0]),
        (vec![1], vec![0, 1]),
        (vec![0, 1], vec![1]),
    ];
    for (a, b) in cases {
        let mut content = vec![0i64; 2];
        for &i in a.iter().chain(&b) {
            content[i] += 1;
        }
        let alg = KlrAlgebra::new(d.clone(), q.clone(), content);
        let expect = induced_character_by_quotient(&alg, &a, &b);
        assert_eq!(shuffle_character(&d, &a, &b), expect, "{a:?} ∘ {b:?}");
    }
}

#[test]
fn shuffle_of_two_letters_sl2() {
    let d = CartanDatum::type_a(1);
    let ch = shuffle_character(&d, &[0], &[0]);
    assert_eq!(ch[&vec![0, 0]], LaurentPoly::from_terms([(0, rat(1)), (-2, rat(1))]));
}

fn gen_word(alg: &KlrAlgebra, raw: &[(u8, u32)]) -> Vec<Gen> {
    let n = alg.n();
    raw.iter()
        .map(|&(k, i)| match k {
            0 => Gen::X(i as usize % n),
            1 => Gen::T(i as usize % (n - 1)),
            _ => Gen::E(alg.words()[i as usize % alg.words().len()].clone()),
        })
        .collect()
}

fn confluence_algebras() -> Vec<KlrAlgebra> {
    let (d, q) = a2();
    let a3 = CartanDatum::type_a(3);
    vec![KlrAlgebra::new(d, q, vec![2, 1]), KlrAlgebra::new(a3.clone(), QFamily::standard(&a3), vec![1, 1, 1])]
}

fn raw_word() -> impl Strategy<Value = Vec<(u8, u32)>> {
    proptest::collection::vec((0u8..3, 0u32..100), 0..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normal_form_is_idempotent_and_products_associate(w1 in raw_word(), w2 in raw_word(), w3 in raw_word(), pick in 0usize..2) {
        let alg = &confluence_algebras()[pick];
        let nf = |w: &[(u8, u32)]| alg.normal_form(&[(rat(1), gen_word(alg, w))]);
        let (a, b, c) = (nf(&w1), nf(&w2), nf(&w3));
        let again: Vec<_> = a.terms().iter().map(|(m, c)| (c.clone(), KlrAlgebra::monomial_gens(m))).collect();
        prop_assert_eq!(alg.normal_form(&again), a.clone());
        prop_assert_eq!(alg.multiply(&a, &alg.multiply(&b, &c)), alg.multiply(&alg.multiply(&a, &b), &c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sum_of_idempotents_is_central(w in raw_word(), pick in 0usize..2) {
        let alg = &confluence_algebras()[pick];
        let x = alg.normal_form(&[(rat(1), gen_word(alg, &w))]);
        let e = alg.one();
        prop_assert_eq!(alg.multiply(&e, &x), x.clone());
        prop_assert_eq!(alg.multiply(&x, &e), x);
    }
}
