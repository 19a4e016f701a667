//! Whole-suite checks: defining relations over all words of bounded length,
//! and the closed graded-dimension formula against degreewise span ranks.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::{perm, words_of_content, Gen, KlrAlgebra, KlrElement, KlrMonomial, QFamily, Word};
use crate::arith::{rat, Echelon, LaurentPoly, Rational};
use crate::cartan::CartanDatum;

/// All `β ∈ Z_{≥0}^rank` of height `n`.
pub fn contents(rank: usize, n: usize) -> Vec<Vec<i64>> {
    fn rec(k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur[k] = a;
            rec(k + 1, left - a, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, n as i64, &mut vec![0; rank], &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub max_length: usize,
    pub relations: usize,
    /// Relation instances also applied to basis monomials.
    pub probes: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Rewrites every defining relation on `e(ν)` to normal form for all words of
/// length `≤ max_n`, and applies it to a few basis monomials with left word `ν`.
pub fn relation_suite(datum: &CartanDatum, q: &QFamily, max_n: usize) -> RelationReport {
    let mut relations = 0;
    let mut probes = 0;
    let mut failures = Vec::new();
    for n in 1..=max_n {
        for beta in contents(datum.rank(), n) {
            let alg = KlrAlgebra::new(datum.clone(), q.clone(), beta.clone());
            for nu in words_of_content(&beta) {
                for (name, expr) in alg.defining_relations(&nu) {
                    relations += 1;
                    let r = alg.normal_form(&expr);
                    if !r.is_zero() {
                        failures.push(format!("{name} on e({nu:?}) gives {r:?}"));
                    }
                    for p in perm::all_perms(n).into_iter().take(6) {
                        let word8: Vec<u8> = nu.iter().map(|&x| x as u8).collect();
                        let src = perm::act(&perm::inverse(&p), &word8);
                        let b = KlrElement::from_monomial(KlrMonomial { perm: p, exps: vec![1; n], word: src });
                        let mut acc = KlrElement::zero();
                        for (c, gens) in &expr {
                            let mut y = b.clone();
                            for g in gens.iter().rev() {
                                y = alg.left_mul_gen(g, &y);
                            }
                            acc = acc.add(&y.scale(c));
                        }
                        probes += 1;
                        if !acc.is_zero() {
                            failures.push(format!("{name} on e({nu:?}) times a basis monomial"));
                        }
                    }
                }
            }
        }
    }
    let passed = failures.is_empty();
    RelationReport { max_length: max_n, relations, probes, failures, passed }
}

/// Degreewise ranks of the left ideal generated by `seeds`, up to degree `hi`.
pub fn closure_ranks(alg: &KlrAlgebra, seeds: Vec<KlrElement>, hi: i64) -> BTreeMap<(Word, i64), usize> {
    let mut spans: BTreeMap<(Word, i64), Echelon<KlrMonomial, Rational>> = BTreeMap::new();
    let mut queue: VecDeque<KlrElement> = VecDeque::new();
    let push = |x: KlrElement, spans: &mut BTreeMap<(Word, i64), Echelon<KlrMonomial, Rational>>, queue: &mut VecDeque<KlrElement>| {
        if x.is_zero() {
            return;
        }
        let d = alg.homogeneous_degree(&x).expect("homogeneous");
        if d > hi {
            return;
        }
        let left = x.terms().keys().next().unwrap().left_word();
        let e = spans.entry((left, d)).or_default();
        if e.insert(x.terms().clone()).is_some() {
            queue.push_back(x);
        }
    };
    for s in seeds {
        push(s, &mut spans, &mut queue);
    }
    let n = alg.n();
    while let Some(x) = queue.pop_front() {
        for k in 0..n {
            push(alg.left_mul_gen(&Gen::X(k), &x), &mut spans, &mut queue);
        }
        for l in 0..n.saturating_sub(1) {
            push(alg.left_mul_gen(&Gen::T(l), &x), &mut spans, &mut queue);
        }
    }
    spans.into_iter().map(|(k, e)| (k, e.rank())).collect()
}

/// `dim_q e(μ) R e(ν)` for all `μ`, through degree `cutoff`, by spanning
/// `R e(ν)` from `e(ν)` under left multiplication.
pub fn brute_force_graded_dims(alg: &KlrAlgebra, nu: &[usize], cutoff: i64) -> BTreeMap<Word, LaurentPoly> {
    let maxf = (0..alg.datum().rank()).map(|i| alg.datum().form(i, i)).max().unwrap_or(2);
    let n = alg.n() as i64;
    // products can dip below their final degree by at most this much
    let slack = n * (n - 1) / 2 * maxf;
    let ranks = closure_ranks(alg, vec![alg.idempotent(nu)], cutoff + slack);
    let mut out: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
    for ((mu, d), r) in ranks {
        if d <= cutoff {
            out.entry(mu).or_default().add_term(d, rat(r as i64));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedDimReport {
    pub max_height: usize,
    pub cutoff: i64,
    pub comparisons: usize,
    pub mismatches: Vec<String>,
    pub passed: bool,
}

/// Closed formula against brute force for all `β` of height `1..=max_height`.
pub fn graded_dim_equivalence(datum: &CartanDatum, q: &QFamily, max_height: usize, cutoff: i64) -> GradedDimReport {
    let mut comparisons = 0;
    let mut mismatches = Vec::new();
    for h in 1..=max_height {
        for b in contents(datum.rank(), h) {
            let alg = KlrAlgebra::new(datum.clone(), q.clone(), b.clone());
            for nu in words_of_content(&b) {
                let brute = brute_force_graded_dims(&alg, &nu, cutoff);
                for mu in words_of_content(&b) {
                    let formula = alg.graded_dim_hom(&nu, &mu, cutoff);
                    let got = brute.get(&mu).cloned().unwrap_or_default();
                    comparisons += 1;
                    if formula.poly() != &got {
                        mismatches.push(format!("β {b:?}, ν {nu:?}, μ {mu:?}: {} vs {got}", formula.poly()));
                    }
                }
            }
        }
    }
    let passed = mismatches.is_empty();
    GradedDimReport { max_height, cutoff, comparisons, mismatches, passed }
}
