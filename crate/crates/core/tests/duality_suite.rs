use klr_core::arith::{RatFunc, SignedQPower};
use klr_core::dynkin::*;
use klr_core::klr::KlrMonomial;
use klr_core::rmatrix::{fundamental_rep, hom_dimension};
use klr_core::swquiver::*;

#[test]
fn vector_window_pipeline() {
    for (lo, hi) in [(-3, 3), (-5, 5), (0, 4)] {
        let dd = DualityDatum::vector_window(3, lo, hi).unwrap();
        let q = build_quiver(&dd).unwrap();
        let m = dd.len();
        let expect: std::collections::BTreeMap<(usize, usize), u32> = (0..m - 1).map(|k| ((k, k + 1), 1)).collect();
        assert_eq!(q.quiver.arrows, expect);
        for i in 0..m {
            for j in 0..m {
                let a = if i == j {
                    2
                } else if i.abs_diff(j) == 1 {
                    -1
                } else {
                    0
                };
                assert_eq!(q.cartan[i][j], a);
                let swapped: UvPoly = q.q_poly(j, i).into_iter().map(|((x, y), c)| ((y, x), c)).collect();
                assert_eq!(q.q_poly(i, j), swapped);
            }
            if i + 1 < m {
                assert_eq!(q.q_string(i, i + 1), "u - v");
            }
        }
    }
}

#[test]
fn shifted_window_gives_isomorphic_quiver() {
    let a = build_quiver(&DualityDatum::vector_window(2, -2, 2).unwrap()).unwrap();
    let b = build_quiver(&DualityDatum::vector_window(2, 7, 11).unwrap()).unwrap();
    assert_eq!(a.quiver.arrows, b.quiver.arrows);
    assert_eq!(a.cartan, b.cartan);
}

use klr_core::klr::UvPoly;

#[test]
fn klr_instances() {
    let dd = DualityDatum::vector_window(3, 0, 3).unwrap();
    let r = instantiate_klr(&dd, &[0, 1, 1, 0]).unwrap();
    assert_eq!(r.n(), 2);
    assert_eq!(r.datum().a(1, 2), -1);
    let r1 = instantiate_klr(&dd, &[0, 0, 1, 0]).unwrap();
    assert_eq!(r1.words().len(), 1);
    // disconnected pair: τ² e(ν) = e(ν)
    let r = instantiate_klr(&dd, &[1, 0, 1, 0]).unwrap();
    for w in r.words() {
        let e = r.idempotent(w);
        let t = r.multiply(&r.tau(0), &r.multiply(&r.tau(0), &e));
        assert_eq!(t, r.idempotent(w));
    }
    let _ = KlrMonomial::idempotent(&[0]);
}

#[test]
fn duality_images() {
    let dd = DualityDatum::vector_window(3, -2, 2).unwrap();
    // vertex index k corresponds to j = k - 2
    let one = duality_on_onedim(&dd, &[2]).unwrap();
    assert_eq!(one.dim(), 3);
    let pair = duality_on_onedim(&dd, &[2, 3]).unwrap();
    assert_eq!(pair.dim(), 3);
    assert!(pair.top_simple);
    // V(ϖ_2) at (-q)^{2a+1}, a = 0
    let w2 = fundamental_rep(3, 2).unwrap().rescaled(&SignedQPower::minus_q(1).to_ratfunc());
    assert_eq!(hom_dimension(pair.rep.as_ref().unwrap(), &w2), 1);
    let triple = duality_on_onedim(&dd, &[1, 2, 3]).unwrap();
    assert_eq!(triple.dim(), 1);
    let dd2 = DualityDatum::vector_window(2, -2, 2).unwrap();
    assert!(duality_on_onedim(&dd2, &[1, 2, 3]).unwrap().rep.is_none());
    assert!(matches!(duality_on_onedim(&dd, &[3, 2]), Err(SwError::NotRealizable(..))));
    assert!(matches!(duality_on_onedim(&dd, &[2, 2]), Err(SwError::NotRealizable(..))));
    assert!(matches!(duality_on_onedim(&dd, &[0, 2]), Err(SwError::NotRealizable(..))));
}

#[test]
fn character_multiplicativity() {
    // the composite through both factors has the rank of the concatenated word
    let dd = DualityDatum::vector_window(4, 0, 4).unwrap();
    for (a, b) in [(vec![0], vec![1]), (vec![0, 1], vec![2]), (vec![1], vec![2, 3])] {
        let mut nu = a.clone();
        nu.extend(&b);
        let whole = duality_on_onedim(&dd, &nu).unwrap();
        let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
        assert_eq!(whole.dim(), binom(4, nu.len()));
    }
}

#[test]
fn pole_is_reported() {
    let mut dd = DualityDatum::vector_window(2, 0, 1).unwrap();
    assert_eq!(dd.d(0, 1).unwrap(), 1);
    let inv = (&RatFunc::var(1) - &RatFunc::q_pow(2)).inv().unwrap();
    dd.denominators.insert((1, 1), inv);
    assert!(matches!(build_quiver(&dd), Err(SwError::NegativeOrder { order: -1, .. })));
}

#[test]
fn repetition_quivers() {
    let q = DynkinQuiver::linear_a(2, false);
    let h = HeightFunction::new(&q, vec![1, 0]).unwrap();
    let r = repetition_quiver(&q, &h, -4, 4).unwrap();
    for &(i, p) in &r.vertices {
        assert_eq!((p - h.xi[i]).rem_euclid(2), 0);
        if p < 4 {
            assert_eq!(r.out_degree((i, p)), 1);
        }
    }
    let a1 = DynkinQuiver::linear_a(1, false);
    let r = repetition_quiver(&a1, &HeightFunction::new(&a1, vec![0]).unwrap(), -4, 4).unwrap();
    assert!(r.arrows.is_empty());
    assert_eq!(r.vertices.len(), 5);
    let d4 = DynkinQuiver::d4_star(false);
    let h = HeightFunction::canonical(&d4);
    let r = repetition_quiver(&d4, &h, -6, 6).unwrap();
    let hub = (0..4).find(|&i| d4.datum.neighbours(i).len() == 3).unwrap();
    for &(i, p) in &r.vertices {
        if i == hub && p < 6 {
            assert_eq!(r.out_degree((i, p)), 3);
        }
    }
    assert!(repetition_quiver(&q, &HeightFunction { xi: vec![0, 0] }, -2, 2).is_err());
}

#[test]
fn adapted_coxeter_elements() {
    assert_eq!(adapted_coxeter(&DynkinQuiver::linear_a(2, false)).unwrap().word, vec![0, 1]);
    assert_eq!(adapted_coxeter(&DynkinQuiver::linear_a(2, true)).unwrap().word, vec![1, 0]);
    let c = adapted_coxeter(&DynkinQuiver::linear_a(3, false)).unwrap();
    assert_eq!(c.adapted_orders, vec![vec![0, 1, 2]]);
    // alternating orientation has several adapted orders, all the same element
    let alt = DynkinQuiver::new(klr_core::CartanDatum::type_a(3), vec![(0, 1), (2, 1)]).unwrap();
    assert_eq!(adapted_coxeter(&alt).unwrap().adapted_orders.len(), 2);
    let d4 = adapted_coxeter(&DynkinQuiver::d4_star(true)).unwrap();
    assert_eq!(d4.adapted_orders.len(), 6);
    let a4 = DynkinQuiver::new(klr_core::CartanDatum::type_a(4), vec![(1, 0), (1, 2), (3, 2)]).unwrap();
    assert!(adapted_coxeter(&a4).unwrap().adapted_orders.len() >= 2);
}

#[test]
fn gamma_values() {
    let d4 = DynkinQuiver::d4_star(true);
    let hub = (0..4).find(|&i| d4.datum.neighbours(i).len() == 3).unwrap();
    assert_eq!(gamma(&d4, hub), vec![1, 1, 1, 1]);
    for i in 0..4 {
        if i != hub {
            assert_eq!(gamma(&d4, i), d4.datum.simple_root(i));
        }
    }
}

fn all_quivers() -> Vec<DynkinQuiver> {
    let mut v = vec![DynkinQuiver::linear_a(1, false)];
    for n in 2..=3 {
        v.push(DynkinQuiver::linear_a(n, false));
        v.push(DynkinQuiver::linear_a(n, true));
    }
    v.push(DynkinQuiver::new(klr_core::CartanDatum::type_a(3), vec![(0, 1), (2, 1)]).unwrap());
    v.push(DynkinQuiver::new(klr_core::CartanDatum::type_a(3), vec![(1, 0), (1, 2)]).unwrap());
    v.push(DynkinQuiver::d4_star(true));
    v.push(DynkinQuiver::d4_star(false));
    v
}

#[test]
fn phi_is_a_bijection() {
    for q in all_quivers() {
        let h = HeightFunction::canonical(&q);
        let (lo, hi) = default_window(&q, &h).unwrap();
        let phi = phi_map(&q, &h, lo, hi).unwrap();
        let roots = q.datum.positive_roots().unwrap();
        for r in &phi.rows {
            assert!(roots.contains(&r.root));
        }
        for i in 0..q.rank() {
            assert_eq!(phi.get(i, h.xi[i]).unwrap().root, gamma(&q, i));
            assert_eq!(phi.get(i, h.xi[i]).unwrap().j, 0);
        }
        // full τ-period below the base row: every (root, 0) exactly once
        for b in &roots {
            assert!(phi.preimage(b, 0).is_some(), "{b:?} missing");
            assert!(phi.preimage(b, -1).is_some(), "{b:?} missing at j = -1");
        }
        // shifting ξ shifts p
        let phi2 = phi_map(&q, &h.shifted(4), lo + 4, hi + 4).unwrap();
        for r in &phi.rows {
            let s = phi2.get(r.i, r.p + 4).unwrap();
            assert_eq!((&s.root, s.j), (&r.root, r.j));
        }
    }
}

#[test]
fn thm_g0_type_a() {
    for q in all_quivers() {
        if !is_type_a(&q.datum) {
            assert!(matches!(verify_thm_g0(&q, &HeightFunction::canonical(&q)), Err(DynkinError::NotTypeA)));
            continue;
        }
        let h = HeightFunction::canonical(&q);
        let rep = verify_thm_g0(&q, &h).unwrap();
        assert!(rep.passed);
        assert!(rep.max_pole_order <= 1);
        let rep2 = verify_thm_g0(&q, &h.shifted(-3)).unwrap();
        assert_eq!(rep.gamma_arrows, rep2.gamma_arrows);
    }
    let q = DynkinQuiver::linear_a(2, false);
    let cq = build_cq_datum(&q, &HeightFunction::new(&q, vec![1, 0]).unwrap()).unwrap();
    assert_eq!(cq.vertices, vec![(0, 1), (0, -1)]);
    assert_eq!(cq.coxeter_number, 3);
    assert_eq!(cq.datum.x, vec![SignedQPower::minus_q(4), SignedQPower::minus_q(2)]);
    assert_eq!(cq.datum.s, vec![1, 1]);
}
