use klr_core::arith::rat;
use klr_core::klr::checks::relation_suite;
use klr_core::klr::{Gen, KlrAlgebra, QFamily};
use klr_core::CartanDatum;

fn check_all(datum: CartanDatum, q: QFamily, max_n: usize) {
    let r = relation_suite(&datum, &q, max_n);
    assert!(r.passed, "{:?}", r.failures);
    assert!(r.relations > 0 && r.probes > 0);
}

#[test]
fn sl2_relations_rewrite_to_zero() {
    let d = CartanDatum::type_a(1);
    check_all(d.clone(), QFamily::standard(&d), 4);
}

#[test]
fn a2_quiver_family_relations_rewrite_to_zero() {
    let d = CartanDatum::type_a(2);
    let q = QFamily::from_quiver(&d, &[vec![0, 1], vec![0, 0]]).unwrap();
    check_all(d, q, 4);
}

#[test]
fn b2_relations_rewrite_to_zero() {
    let d = CartanDatum::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
    check_all(d.clone(), QFamily::standard(&d), 4);
}

#[test]
fn normal_form_of_tau_squared_on_equal_letters_vanishes() {
    let d = CartanDatum::type_a(1);
    let alg = KlrAlgebra::new(d.clone(), QFamily::standard(&d), vec![2]);
    let r = alg.normal_form(&[(rat(1), vec![Gen::T(0), Gen::T(0), Gen::E(vec![0, 0])])]);
    assert!(r.is_zero());
}
