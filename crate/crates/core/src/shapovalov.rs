//! Word calculus on the highest-weight module `V(Λ)`: `e_i` acting on words
//! `f_{ν_n} ⋯ f_{ν_1} v_Λ`, the contravariant form, Gram ranks and Serre checks.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use crate::arith::{fraction_free_rank, quantum_factorial, quantum_integer, LaurentPoly, MPoly, Monomial, RatFunc};
use crate::cartan::{CartanDatum, Weight};
use crate::klr::{content, words_of_content, Word};

/// Combination of words `F_ν v_Λ = f_{ν_n} ⋯ f_{ν_1} v_Λ`; `ν_1` acts first.
pub type WordVector = BTreeMap<Word, RatFunc>;

fn add_to(v: &mut WordVector, w: Word, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(w.clone()).or_insert_with(RatFunc::zero);
    *e = &*e + &c;
    if e.is_zero() {
        v.remove(&w);
    }
}

/// The highest-weight module `V(Λ)` as seen through words in the `f_i`.
pub struct HighestWeight {
    datum: CartanDatum,
    lambda: Weight,
    memo: Mutex<HashMap<(Word, Word), LaurentPoly>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapovalovError {
    #[error("Serre element pairs nontrivially: {0}")]
    IdentityViolation(String),
    #[error("weight has wrong rank")]
    BadWeight,
}

#[derive(Debug, Clone, Serialize)]
pub struct SerreReport {
    pub i: usize,
    pub j: usize,
    pub probes: usize,
    pub passed: bool,
}

impl HighestWeight {
    pub fn new(datum: CartanDatum, lambda: Weight) -> Result<Self, ShapovalovError> {
        if lambda.len() != datum.rank() {
            return Err(ShapovalovError::BadWeight);
        }
        Ok(Self { datum, lambda, memo: Mutex::new(HashMap::new()) })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    /// `⟨h_i, Λ - content(prefix)⟩`
    fn pairing_after(&self, i: usize, prefix: &[usize]) -> i64 {
        let c = content(prefix, self.datum.rank());
        self.lambda[i] - self.datum.coroot_pairing(i, &c)
    }

    /// `e_i F_ν v_Λ = Σ_{k: ν_k = i} [⟨h_i, Λ - α_{ν_1} - … - α_{ν_{k-1}}⟩]_{q_i} F_{ν \ k} v_Λ`
    pub fn apply_e_word(&self, i: usize, nu: &[usize]) -> BTreeMap<Word, LaurentPoly> {
        let mut out: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
        for k in 0..nu.len() {
            if nu[k] != i {
                continue;
            }
            let m = self.pairing_after(i, &nu[..k]);
            let c = quantum_integer(m, self.datum.d(i) as u32);
            if c.is_zero() {
                continue;
            }
            let mut w = nu[..k].to_vec();
            w.extend_from_slice(&nu[k + 1..]);
            let e = out.entry(w).or_default();
            *e += &c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn apply_e(&self, i: usize, v: &WordVector) -> WordVector {
        let mut out = WordVector::new();
        for (w, c) in v {
            for (w2, x) in self.apply_e_word(i, w) {
                add_to(&mut out, w2, c * &RatFunc::from_laurent(&x));
            }
        }
        out
    }

    /// `(F_ν v_Λ, F_μ v_Λ)`, with `(v_Λ, v_Λ) = 1` and `(u, f_j w) = (e_j u, w)`.
    pub fn shapovalov(&self, nu: &[usize], mu: &[usize]) -> LaurentPoly {
        let r = self.datum.rank();
        if content(nu, r) != content(mu, r) {
            return LaurentPoly::zero();
        }
        if mu.is_empty() {
            return LaurentPoly::one();
        }
        let key = (nu.to_vec(), mu.to_vec());
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let j = *mu.last().unwrap();
        let rest = &mu[..mu.len() - 1];
        let mut acc = LaurentPoly::zero();
        for (w, c) in self.apply_e_word(j, nu) {
            acc += &(&c * &self.shapovalov(&w, rest));
        }
        self.memo.lock().unwrap().insert(key, acc.clone());
        acc
    }

    pub fn pair_vectors(&self, a: &WordVector, b: &WordVector) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (w1, c1) in a {
            for (w2, c2) in b {
                let s = self.shapovalov(w1, w2);
                if !s.is_zero() {
                    acc = &acc + &(&(c1 * c2) * &RatFunc::from_laurent(&s));
                }
            }
        }
        acc
    }

    /// Gram matrix over `I^β` (rows `ν`, columns `μ`, both in sorted order).
    pub fn gram(&self, beta: &[i64]) -> (Vec<Word>, Vec<Vec<LaurentPoly>>) {
        let words = words_of_content(beta);
        let g = words.iter().map(|a| words.iter().map(|b| self.shapovalov(a, b)).collect()).collect();
        (words, g)
    }

    /// `dim V(Λ)_{Λ-β}` as the rank of the Gram matrix over `Q(q)`.
    pub fn weight_multiplicity(&self, beta: &[i64]) -> usize {
        let (_, g) = self.gram(beta);
        gram_rank(&g)
    }

    /// Pairs `S_ij F_ρ v_Λ` against `F_π v_Λ` for all probe words `ρ` of height
    /// `extra` and all `π` of matching content.
    pub fn serre_check(&self, i: usize, j: usize, extra: usize) -> Result<SerreReport, ShapovalovError> {
        assert!(i != j);
        let n = self.datum.rank();
        let m = (1 - self.datum.a(i, j)) as usize;
        let di = self.datum.d(i) as u32;
        let mut probes = 0;
        for rho in all_words(n, extra) {
            let mut s = WordVector::new();
            for k in 0..=m {
                let a = m - k;
                let den = &quantum_factorial(a as u32, di) * &quantum_factorial(k as u32, di);
                let c = &RatFunc::int(if k % 2 == 0 { 1 } else { -1 }) / &RatFunc::from_laurent(&den);
                let mut w = rho.clone();
                w.extend(std::iter::repeat_n(i, k));
                w.push(j);
                w.extend(std::iter::repeat_n(i, a));
                add_to(&mut s, w, c);
            }
            let Some(any) = s.keys().next() else { continue };
            let c = content(any, n);
            for pi in words_of_content(&c) {
                probes += 1;
                let v = self.pair_vectors(&s, &WordVector::from([(pi.clone(), RatFunc::one())]));
                if !v.is_zero() {
                    return Err(ShapovalovError::IdentityViolation(format!("rho {rho:?}, pi {pi:?}: {v}")));
                }
            }
        }
        Ok(SerreReport { i, j, probes, passed: true })
    }
}

/// Rank over `Q(q)` of a matrix of Laurent polynomials.
pub fn gram_rank(g: &[Vec<LaurentPoly>]) -> usize {
    let rows: Vec<Vec<MPoly>> = g
        .iter()
        .map(|row| {
            let lo = row.iter().filter_map(|p| p.min_degree()).min().unwrap_or(0);
            row.iter()
                .map(|p| {
                    let mut m = MPoly::zero();
                    for (k, c) in p.terms() {
                        m.add_term(Monomial::var(0, (k - lo) as u32), c.clone());
                    }
                    m
                })
                .collect()
        })
        .collect();
    fraction_free_rank(rows)
}

fn all_words(rank: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..rank).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// `q^{(Λ,β) - (β,β)/2}`: relates graded block dimensions of the cyclotomic
/// quotient to Gram entries.
pub fn block_normalization_exponent(datum: &CartanDatum, lambda: &[i64], beta: &[i64]) -> i64 {
    datum.pair_weight_root(lambda, beta) - datum.pair_roots(beta, beta) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_values() {
        let d = CartanDatum::type_a(1);
        let v = HighestWeight::new(d.clone(), vec![1]).unwrap();
        assert_eq!(v.shapovalov(&[], &[]), LaurentPoly::one());
        assert_eq!(v.shapovalov(&[0], &[0]), LaurentPoly::one());
        assert!(v.shapovalov(&[0, 0], &[0, 0]).is_zero());
        let v2 = HighestWeight::new(d, vec![2]).unwrap();
        let two = quantum_integer(2, 1);
        assert_eq!(v2.shapovalov(&[0, 0], &[0, 0]), &two * &two);
        assert_eq!(v2.apply_e_word(0, &[0]), BTreeMap::from([(vec![], two.clone())]));
    }

    #[test]
    fn multiplicities() {
        let a2 = CartanDatum::type_a(2);
        let adj = HighestWeight::new(a2.clone(), vec![1, 1]).unwrap();
        assert_eq!(adj.weight_multiplicity(&[1, 1]), 2);
        assert_eq!(adj.weight_multiplicity(&[2, 2]), 1);
        assert_eq!(adj.weight_multiplicity(&[3, 0]), 0);
        let sl2 = HighestWeight::new(CartanDatum::type_a(1), vec![1]).unwrap();
        assert_eq!(sl2.weight_multiplicity(&[2]), 0);
    }

    #[test]
    fn serre_relations_pair_to_zero() {
        let a2 = CartanDatum::type_a(2);
        let v = HighestWeight::new(a2, vec![1, 1]).unwrap();
        assert!(v.serre_check(0, 1, 0).unwrap().passed);
        assert!(v.serre_check(1, 0, 1).unwrap().passed);
        let b2 = CartanDatum::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let v = HighestWeight::new(b2, vec![1, 1]).unwrap();
        assert!(v.serre_check(0, 1, 0).unwrap().passed);
        assert!(v.serre_check(1, 0, 1).unwrap().passed);
    }

    #[test]
    fn broken_serre_is_detected() {
        // wrong exponent: f_i f_j - f_j f_i is not a relation
        let a2 = CartanDatum::type_a(2);
        let v = HighestWeight::new(a2, vec![1, 1]).unwrap();
        let s = WordVector::from([(vec![0, 1], RatFunc::one()), (vec![1, 0], RatFunc::int(-1))]);
        let p = v.pair_vectors(&s, &WordVector::from([(vec![0, 1], RatFunc::one())]));
        assert!(!p.is_zero());
    }
}
