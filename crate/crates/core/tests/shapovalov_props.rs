use klr_core::arith::{quantum_integer, LaurentPoly};
use klr_core::klr::words_of_content;
use klr_core::shapovalov::{gram_rank, HighestWeight};
use klr_core::CartanDatum;
use proptest::prelude::*;

type Mat = Vec<Vec<LaurentPoly>>;

fn mat_vec(m: &Mat, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// `V(m)` for `sl_2` on `v_0, …, v_m`: `f v_k = v_{k+1}`, `e v_k = [k][m-k+1] v_{k-1}`.
fn explicit_sl2(m: usize) -> (Mat, Mat) {
    let d = m + 1;
    let mut e = vec![vec![LaurentPoly::zero(); d]; d];
    let mut f = e.clone();
    for k in 0..d {
        if k + 1 < d {
            f[k + 1][k] = LaurentPoly::one();
        }
        if k > 0 {
            e[k - 1][k] = &quantum_integer(k as i64, 1) * &quantum_integer((m - k + 1) as i64, 1);
        }
    }
    (e, f)
}

#[test]
fn sl2_form_matches_the_explicit_module() {
    for m in 0..=4usize {
        let (e, f) = explicit_sl2(m);
        let hw = HighestWeight::new(CartanDatum::type_a(1), vec![m as i64]).unwrap();
        for k in 0..=m + 1 {
            // (f^k v_0, f^k v_0) = coefficient of v_0 in e^k f^k v_0
            let mut v = vec![LaurentPoly::zero(); m + 1];
            v[0] = LaurentPoly::one();
            for _ in 0..k {
                v = mat_vec(&f, &v);
            }
            for _ in 0..k {
                v = mat_vec(&e, &v);
            }
            let w = vec![0usize; k];
            assert_eq!(hw.shapovalov(&w, &w), v[0], "m = {m}, k = {k}");
        }
    }
    // the 3-dimensional module: (f v, f v) = [2], (f² v, f² v) = [2]²
    let hw = HighestWeight::new(CartanDatum::type_a(1), vec![2]).unwrap();
    let two = quantum_integer(2, 1);
    assert_eq!(hw.shapovalov(&[0], &[0]), two);
    assert_eq!(hw.shapovalov(&[0, 0], &[0, 0]), &two * &two);
}

#[test]
fn b2_serre_with_height_two_probes() {
    let b2 = CartanDatum::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
    let hw = HighestWeight::new(b2, vec![1, 1]).unwrap();
    assert!(hw.serre_check(0, 1, 2).unwrap().passed);
    assert!(hw.serre_check(1, 0, 1).unwrap().passed);
}

fn datum(pick: usize) -> CartanDatum {
    match pick {
        0 => CartanDatum::type_a(1),
        1 => CartanDatum::type_a(2),
        _ => CartanDatum::new(vec![vec![2, -2], vec![-1, 2]]).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn form_is_symmetric_and_content_orthogonal(pick in 0usize..3, lam in proptest::collection::vec(0i64..3, 2),
                                                 b1 in proptest::collection::vec(0i64..3, 2), b2 in proptest::collection::vec(0i64..3, 2)) {
        let d = datum(pick);
        let n = d.rank();
        let hw = HighestWeight::new(d, lam[..n].to_vec()).unwrap();
        let (b1, b2) = (&b1[..n], &b2[..n]);
        prop_assume!(b1.iter().sum::<i64>() <= 3 && b2.iter().sum::<i64>() <= 3);
        for nu in words_of_content(b1) {
            for mu in words_of_content(b1) {
                prop_assert_eq!(hw.shapovalov(&nu, &mu), hw.shapovalov(&mu, &nu));
            }
            if b1 != b2 {
                for mu in words_of_content(b2) {
                    prop_assert!(hw.shapovalov(&nu, &mu).is_zero());
                }
            }
        }
    }

    #[test]
    fn sl2_gram_entries_are_bar_invariant(l in 0i64..5, h in 0i64..5) {
        let hw = HighestWeight::new(CartanDatum::type_a(1), vec![l]).unwrap();
        let w = vec![0usize; h as usize];
        let x = hw.shapovalov(&w, &w);
        prop_assert_eq!(x.bar(), x);
    }

    #[test]
    fn gram_rank_ignores_word_order(pick in 0usize..3, lam in proptest::collection::vec(0i64..3, 2),
                                    beta in proptest::collection::vec(0i64..3, 2), perm in Just(()).prop_perturb(|_, mut r| r.next_u64())) {
        let d = datum(pick);
        let n = d.rank();
        let hw = HighestWeight::new(d, lam[..n].to_vec()).unwrap();
        prop_assume!(beta[..n].iter().sum::<i64>() <= 3);
        let (words, g) = hw.gram(&beta[..n]);
        let mut order: Vec<usize> = (0..words.len()).collect();
        let mut s = perm;
        for k in (1..order.len()).rev() {
            order.swap(k, (s % (k as u64 + 1)) as usize);
            s /= k as u64 + 1;
        }
        let shuffled: Vec<Vec<LaurentPoly>> = order.iter().map(|&a| order.iter().map(|&b| g[a][b].clone()).collect()).collect();
        prop_assert_eq!(gram_rank(&shuffled), gram_rank(&g));
        prop_assert_eq!(gram_rank(&g), hw.weight_multiplicity(&beta[..n]));
    }
}
