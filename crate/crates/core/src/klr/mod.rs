//! Quiver Hecke (KLR) algebras `R(β)` with a rewriting engine to the normal
//! basis `τ_{c(w)} x^a e(ν)`.
//!
//! Every product is reduced to two memoized left multiplications on basis
//! monomials with `a = 0`: by `x_m` and by `τ_l`.  Right multiplication by
//! `x^a e(ν)` only shifts exponents, so the caches stay small.

pub mod checks;
pub mod perm;
mod qfamily;
mod relations;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, series_inverse, LaurentPoly, Rational, TruncatedSeries};
use crate::cartan::CartanDatum;
pub use perm::Perm;
pub use qfamily::{QFamily, QFamilyError, QTerm, UvPoly};
pub use relations::Expr;

pub type Word = Vec<usize>;

/// Graded character: word ↦ Laurent polynomial.
pub type Character = BTreeMap<Word, LaurentPoly>;

/// Basis element `τ_{c(w)} x^a e(ν)`: `perm = w`, `exps = a`, `word = ν` (the right idempotent).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KlrMonomial {
    pub perm: Perm,
    pub exps: Vec<u32>,
    pub word: Vec<u8>,
}

impl KlrMonomial {
    pub fn idempotent(word: &[usize]) -> Self {
        let n = word.len();
        Self { perm: perm::identity(n), exps: vec![0; n], word: to_u8(word) }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn right_word(&self) -> Word {
        self.word.iter().map(|&x| x as usize).collect()
    }

    pub fn left_word(&self) -> Word {
        perm::act(&self.perm, &self.word).into_iter().map(|x| x as usize).collect()
    }

    fn left_u8(&self) -> Vec<u8> {
        perm::act(&self.perm, &self.word)
    }

    pub fn reduced_word(&self) -> Vec<usize> {
        perm::canonical_word(&self.perm)
    }

    fn shifted(&self, a: &[u32]) -> Self {
        Self { perm: self.perm.clone(), exps: self.exps.iter().zip(a).map(|(x, y)| x + y).collect(), word: self.word.clone() }
    }
}

impl fmt::Debug for KlrMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for l in self.reduced_word() {
            parts.push(format!("t{l}"));
        }
        for (k, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{k}")),
                e => parts.push(format!("x{k}^{e}")),
            }
        }
        let w: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
        parts.push(format!("e({})", w.join("")));
        write!(f, "{}", parts.join("*"))
    }
}

pub(crate) fn to_u8(w: &[usize]) -> Vec<u8> {
    w.iter().map(|&x| u8::try_from(x).expect("vertex index fits in u8")).collect()
}

type Terms = BTreeMap<KlrMonomial, Rational>;

fn add_into(acc: &mut Terms, m: KlrMonomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(e) => {
            *e += c;
            if e.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c);
        }
    }
}

fn axpy(acc: &mut Terms, c: &Rational, x: &Terms) {
    for (m, v) in x {
        add_into(acc, m.clone(), c * v);
    }
}

/// Element of `R(β)` in normal form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct KlrElement {
    terms: Terms,
}

impl KlrElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: KlrMonomial) -> Self {
        Self { terms: Terms::from([(m, rat(1))]) }
    }

    pub fn from_terms(terms: BTreeMap<KlrMonomial, Rational>) -> Self {
        let mut t = Terms::new();
        for (m, c) in terms {
            add_into(&mut t, m, c);
        }
        Self { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<KlrMonomial, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<KlrMonomial, Rational> {
        self.terms
    }

    pub fn coeff(&self, m: &KlrMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        axpy(&mut t, &rat(1), &o.terms);
        Self { terms: t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        axpy(&mut t, &rat(-1), &o.terms);
        Self { terms: t }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Right multiplication by `x^a`: exponents shift.
    pub fn right_mul_x(&self, a: &[u32]) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.shifted(a), c.clone())).collect() }
    }
}

impl fmt::Debug for KlrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Generator of `R(β)` for building expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    E(Word),
    X(usize),
    T(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KlrError {
    #[error("word {0:?} does not have content beta")]
    WrongContent(Word),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
}

/// Polynomial in `x_0 … x_{n-1}`: exponent vector ↦ coefficient.
pub type XPoly = BTreeMap<Vec<u32>, Rational>;

#[derive(Default)]
struct Caches {
    tau: HashMap<(u8, Perm, Vec<u8>), Arc<Terms>>,
    x: HashMap<(u8, Perm, Vec<u8>), Arc<Terms>>,
}

/// `R(β)` for fixed Cartan datum, polynomial family and `β`.
pub struct KlrAlgebra {
    datum: CartanDatum,
    qfam: QFamily,
    beta: Vec<i64>,
    n: usize,
    words: Vec<Word>,
    caches: Mutex<Caches>,
}

impl KlrAlgebra {
    pub fn new(datum: CartanDatum, qfam: QFamily, beta: Vec<i64>) -> Self {
        assert_eq!(beta.len(), datum.rank(), "beta has wrong rank");
        assert!(beta.iter().all(|&b| b >= 0), "beta must lie in the positive cone");
        let n = beta.iter().sum::<i64>() as usize;
        let words = words_of_content(&beta);
        Self { datum, qfam, beta, n, words, caches: Mutex::new(Caches::default()) }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn qfamily(&self) -> &QFamily {
        &self.qfam
    }

    pub fn beta(&self) -> &[i64] {
        &self.beta
    }

    /// Number of strands (height of `β`).
    pub fn n(&self) -> usize {
        self.n
    }

    /// All words of content `β`, sorted.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn has_word(&self, w: &[usize]) -> bool {
        self.words.binary_search(&w.to_vec()).is_ok()
    }

    pub fn cache_sizes(&self) -> (usize, usize) {
        let c = self.caches.lock().unwrap();
        (c.tau.len(), c.x.len())
    }

    // ---- degrees

    /// `deg τ_w e(ν) = -Σ_{a<b, w(a)>w(b)} (α_{ν_a}, α_{ν_b})`.
    pub fn tau_degree(&self, p: &[u8], word: &[u8]) -> i64 {
        let mut d = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    d -= self.datum.form(word[a] as usize, word[b] as usize);
                }
            }
        }
        d
    }

    pub fn degree(&self, m: &KlrMonomial) -> i64 {
        let xd: i64 = m.exps.iter().zip(&m.word).map(|(&e, &i)| e as i64 * self.datum.form(i as usize, i as usize)).sum();
        self.tau_degree(&m.perm, &m.word) + xd
    }

    /// Degree if homogeneous.
    pub fn homogeneous_degree(&self, x: &KlrElement) -> Option<i64> {
        let mut it = x.terms.keys().map(|m| self.degree(m));
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Largest `-deg τ_w e(ν)` over all `w` and `ν` of content `β`.
    pub fn max_negative_tau_degree(&self) -> i64 {
        let mut best = 0;
        for w in &self.words {
            let w8 = to_u8(w);
            for p in perm::all_perms(self.n) {
                best = best.max(-self.tau_degree(&p, &w8));
            }
        }
        best
    }

    /// Largest `deg τ_w e(ν)`.
    pub fn max_tau_degree(&self) -> i64 {
        let mut best = i64::MIN;
        for w in &self.words {
            let w8 = to_u8(w);
            for p in perm::all_perms(self.n) {
                best = best.max(self.tau_degree(&p, &w8));
            }
        }
        best
    }

    // ---- elements

    pub fn idempotent(&self, word: &[usize]) -> KlrElement {
        KlrElement::from_monomial(KlrMonomial::idempotent(word))
    }

    pub fn one(&self) -> KlrElement {
        KlrElement { terms: self.words.iter().map(|w| (KlrMonomial::idempotent(w), rat(1))).collect() }
    }

    pub fn x(&self, k: usize) -> KlrElement {
        self.left_mul_gen(&Gen::X(k), &self.one())
    }

    pub fn tau(&self, l: usize) -> KlrElement {
        self.left_mul_gen(&Gen::T(l), &self.one())
    }

    /// `τ_{c(w)} e(ν)`
    pub fn tau_w(&self, p: &[u8], word: &[usize]) -> KlrElement {
        KlrElement::from_monomial(KlrMonomial { perm: p.to_vec(), exps: vec![0; self.n], word: to_u8(word) })
    }

    // ---- memoized left multiplication

    fn base(p: &[u8], word: &[u8]) -> KlrMonomial {
        KlrMonomial { perm: p.to_vec(), exps: vec![0; p.len()], word: word.to_vec() }
    }

    fn single(p: &[u8], word: &[u8]) -> Terms {
        Terms::from([(Self::base(p, word), rat(1))])
    }

    fn shift_terms(base: &Terms, a: &[u32]) -> Terms {
        if a.iter().all(|&e| e == 0) {
            return base.clone();
        }
        base.iter().map(|(m, c)| (m.shifted(a), c.clone())).collect()
    }

    fn tau_terms(&self, l: usize, x: &Terms) -> Terms {
        let mut acc = Terms::new();
        for (m, c) in x {
            let b = self.tau_base(l, &m.perm, &m.word);
            axpy(&mut acc, c, &Self::shift_terms(&b, &m.exps));
        }
        acc
    }

    fn x_terms(&self, k: usize, x: &Terms) -> Terms {
        let mut acc = Terms::new();
        for (m, c) in x {
            let b = self.x_base(k, &m.perm, &m.word);
            axpy(&mut acc, c, &Self::shift_terms(&b, &m.exps));
        }
        acc
    }

    fn xpoly_terms(&self, poly: &XPoly, x: &Terms) -> Terms {
        let mut acc = Terms::new();
        for (e, c) in poly {
            let mut y = x.clone();
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    y = self.x_terms(k, &y);
                }
            }
            axpy(&mut acc, c, &y);
        }
        acc
    }

    /// `x_m · τ_{c(w)} e(ν)`
    fn x_base(&self, m: usize, p: &[u8], word: &[u8]) -> Arc<Terms> {
        let key = (m as u8, p.to_vec(), word.to_vec());
        if let Some(r) = self.caches.lock().unwrap().x.get(&key) {
            return r.clone();
        }
        let res = match perm::min_left_descent(p) {
            None => {
                let mut e = vec![0u32; p.len()];
                e[m] = 1;
                Terms::from([(KlrMonomial { perm: p.to_vec(), exps: e, word: word.to_vec() }, rat(1))])
            }
            Some(l1) => {
                let w1 = perm::left_mul_s(l1, p);
                let nu1 = perm::act(&w1, word);
                let m1 = if m == l1 {
                    l1 + 1
                } else if m == l1 + 1 {
                    l1
                } else {
                    m
                };
                let inner = self.x_base(m1, &w1, word);
                let mut r = self.tau_terms(l1, &inner);
                if nu1[l1] == nu1[l1 + 1] {
                    if m == l1 + 1 {
                        add_into(&mut r, Self::base(&w1, word), rat(1));
                    } else if m == l1 {
                        add_into(&mut r, Self::base(&w1, word), rat(-1));
                    }
                }
                r
            }
        };
        let res = Arc::new(res);
        self.caches.lock().unwrap().x.insert(key, res.clone());
        res
    }

    /// `τ_l · τ_{c(w)} e(ν)`
    fn tau_base(&self, l: usize, w: &[u8], word: &[u8]) -> Arc<Terms> {
        let key = (l as u8, w.to_vec(), word.to_vec());
        if let Some(r) = self.caches.lock().unwrap().tau.get(&key) {
            return r.clone();
        }
        let v = perm::left_mul_s(l, w);
        let res = if !perm::is_left_descent(l, w) {
            let b = perm::min_left_descent(&v).expect("v has a descent");
            if b == l {
                Self::single(&v, word)
            } else if b.abs_diff(l) > 1 {
                // v = s_l s_b v2, w = s_b v2
                let v2 = perm::left_mul_s(l, &perm::left_mul_s(b, &v));
                let mut lower_w = (*self.tau_base(b, &v2, word)).clone();
                add_into(&mut lower_w, Self::base(w, word), rat(-1));
                let inner = self.tau_base(l, &v2, word);
                let mut r = self.tau_terms(b, &inner);
                axpy(&mut r, &rat(-1), &self.tau_terms(l, &lower_w));
                r
            } else {
                // v = s_l s_b s_l v2, w = s_b s_l v2
                let v2 = perm::left_mul_s(l, &perm::left_mul_s(b, &perm::left_mul_s(l, &v)));
                let mut lower_w = self.tau_terms(b, &self.tau_base(l, &v2, word));
                add_into(&mut lower_w, Self::base(w, word), rat(-1));
                let main = self.tau_terms(b, &self.tau_terms(l, &self.tau_base(b, &v2, word)));
                let mut r = main;
                let k = l.min(b);
                let sigma = if l == k + 1 { rat(1) } else { rat(-1) };
                let mu = perm::act(&v2, word);
                let corr = self.braid_poly(&mu, k);
                if !corr.is_empty() {
                    let c = self.xpoly_terms(&corr, &Self::single(&v2, word));
                    axpy(&mut r, &sigma, &c);
                }
                axpy(&mut r, &rat(-1), &self.tau_terms(l, &lower_w));
                r
            }
        } else {
            // τ_l τ_l τ_{w'} with w = s_l w'
            let w1 = v;
            let mut lower = (*self.tau_base(l, &w1, word)).clone();
            add_into(&mut lower, Self::base(w, word), rat(-1));
            let mu = perm::act(&w1, word);
            let qp = self.q_poly(mu[l] as usize, mu[l + 1] as usize, l, l + 1);
            let mut r = self.xpoly_terms(&qp, &Self::single(&w1, word));
            axpy(&mut r, &rat(-1), &self.tau_terms(l, &lower));
            r
        };
        let res = Arc::new(res);
        self.caches.lock().unwrap().tau.insert(key, res.clone());
        res
    }

    /// `Q_ij(x_a, x_b)`
    fn q_poly(&self, i: usize, j: usize, a: usize, b: usize) -> XPoly {
        let mut out = XPoly::new();
        for ((p, q), t) in self.qfam.poly(i, j) {
            let mut e = vec![0u32; self.n];
            e[a] += p;
            e[b] += q;
            *out.entry(e).or_insert_with(Rational::zero) += t;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `(Q(x_k, x_{k+1}) - Q(x_{k+2}, x_{k+1})) / (x_k - x_{k+2})` when `μ_k = μ_{k+2}`.
    fn braid_poly(&self, mu: &[u8], k: usize) -> XPoly {
        let mut out = XPoly::new();
        if mu[k] != mu[k + 2] {
            return out;
        }
        for ((p, q), t) in self.qfam.poly(mu[k] as usize, mu[k + 1] as usize) {
            for r in 0..p {
                let mut e = vec![0u32; self.n];
                e[k] = r;
                e[k + 2] = p - 1 - r;
                e[k + 1] = q;
                *out.entry(e).or_insert_with(Rational::zero) += t.clone();
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    // ---- public multiplication

    pub fn left_mul_gen(&self, g: &Gen, x: &KlrElement) -> KlrElement {
        let terms = match g {
            Gen::E(w) => {
                let w8 = to_u8(w);
                x.terms.iter().filter(|(m, _)| m.left_u8() == w8).map(|(m, c)| (m.clone(), c.clone())).collect()
            }
            Gen::X(k) => {
                assert!(*k < self.n, "x index out of range");
                self.x_terms(*k, &x.terms)
            }
            Gen::T(l) => {
                assert!(*l + 1 < self.n, "tau index out of range");
                self.tau_terms(*l, &x.terms)
            }
        };
        KlrElement { terms }
    }

    /// Left multiplication by a polynomial in the `x`'s.
    pub fn left_mul_xpoly(&self, p: &XPoly, x: &KlrElement) -> KlrElement {
        KlrElement { terms: self.xpoly_terms(p, &x.terms) }
    }

    pub fn multiply(&self, a: &KlrElement, b: &KlrElement) -> KlrElement {
        let mut by_left: HashMap<Vec<u8>, Terms> = HashMap::new();
        for (m, c) in &b.terms {
            by_left.entry(m.left_u8()).or_default().insert(m.clone(), c.clone());
        }
        let mut acc = Terms::new();
        for (m, c) in &a.terms {
            let Some(s) = by_left.get(&m.word) else { continue };
            let mut y = s.clone();
            for (k, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    y = self.x_terms(k, &y);
                }
            }
            for l in m.reduced_word().into_iter().rev() {
                y = self.tau_terms(l, &y);
            }
            axpy(&mut acc, c, &y);
        }
        KlrElement { terms: acc }
    }

    /// Evaluates `Σ c · g_1 g_2 … g_r` (generators applied right to left).
    pub fn normal_form(&self, expr: &[(Rational, Vec<Gen>)]) -> KlrElement {
        let mut acc = Terms::new();
        for (c, gens) in expr {
            let mut y = self.one();
            for g in gens.iter().rev() {
                y = self.left_mul_gen(g, &y);
            }
            axpy(&mut acc, c, &y.terms);
        }
        KlrElement { terms: acc }
    }

    /// Generator word of a basis monomial, left to right.
    pub fn monomial_gens(m: &KlrMonomial) -> Vec<Gen> {
        let mut g: Vec<Gen> = m.reduced_word().into_iter().map(Gen::T).collect();
        for (k, &e) in m.exps.iter().enumerate() {
            for _ in 0..e {
                g.push(Gen::X(k));
            }
        }
        g.push(Gen::E(m.right_word()));
        g
    }

    /// The automorphism `e(ν) ↦ e(ν reversed)`, `x_k ↦ x_{n-1-k}`,
    /// `τ_l e(ν) ↦ ±τ_{n-2-l} e(ν reversed)` with sign `-` iff `ν_l = ν_{l+1}`.
    pub fn psi(&self, x: &KlrElement) -> KlrElement {
        let n = self.n;
        let mut acc = Terms::new();
        for (m, c) in &x.terms {
            let mut gens = Vec::new();
            let mut sign = rat(1);
            let word = m.reduced_word();
            // idempotent to the right of each τ in τ_{l1} … τ_{lr} e(ν)
            for (pos, &l) in word.iter().enumerate() {
                let suffix = perm::from_word(n, &word[pos + 1..]);
                let right = perm::act(&suffix, &m.word);
                if right[l] == right[l + 1] {
                    sign = -sign;
                }
                gens.push(Gen::T(n - 2 - l));
            }
            for (k, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    gens.push(Gen::X(n - 1 - k));
                }
            }
            let rev: Word = m.right_word().into_iter().rev().collect();
            gens.push(Gen::E(rev));
            let y = self.normal_form(&[(sign, gens)]);
            axpy(&mut acc, c, &y.terms);
        }
        KlrElement { terms: acc }
    }

    // ---- graded dimensions

    /// `dim_q e(μ) R(β) e(ν)` through `q^cutoff` from the basis theorem.
    pub fn graded_dim_hom(&self, nu: &[usize], mu: &[usize], cutoff: i64) -> TruncatedSeries {
        let nu8 = to_u8(nu);
        let mu8 = to_u8(mu);
        let mut num = LaurentPoly::zero();
        for p in perm::all_perms(self.n) {
            if perm::act(&p, &nu8) == mu8 {
                num.add_term(self.tau_degree(&p, &nu8), rat(1));
            }
        }
        let mut den = LaurentPoly::one();
        for &i in nu {
            den = &den * &LaurentPoly::from_terms([(0, rat(1)), (self.datum.form(i, i), rat(-1))]);
        }
        let lo = num.min_degree().unwrap_or(0);
        let inv = series_inverse(&den, cutoff - lo).expect("invertible");
        inv.mul_poly(&num).truncate(cutoff)
    }

    /// Basis monomials `τ_w x^a e(ν)` of degree `d` with fixed right idempotent.
    pub fn monomials_of_degree(&self, nu: &[usize], d: i64) -> Vec<KlrMonomial> {
        let nu8 = to_u8(nu);
        let weights: Vec<i64> = nu.iter().map(|&i| self.datum.form(i, i)).collect();
        let mut out = Vec::new();
        for p in perm::all_perms(self.n) {
            let rest = d - self.tau_degree(&p, &nu8);
            if rest < 0 {
                continue;
            }
            for a in exponent_vectors(&weights, rest) {
                out.push(KlrMonomial { perm: p.clone(), exps: a, word: nu8.clone() });
            }
        }
        out
    }
}

/// Exponent vectors `a` with `Σ a_k w_k = total`.
pub fn exponent_vectors(weights: &[i64], total: i64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    fn rec(k: usize, left: i64, w: &[i64], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e as i64 * w[k] <= left {
            cur[k] = e;
            rec(k + 1, left - e as i64 * w[k], w, cur, out);
            e += 1;
        }
        cur[k] = 0;
    }
    rec(0, total, weights, &mut cur, &mut out);
    out
}

/// All words with content `β`, sorted.
pub fn words_of_content(beta: &[i64]) -> Vec<Word> {
    let mut out = Vec::new();
    let mut left = beta.to_vec();
    let n: i64 = beta.iter().sum();
    let mut cur = Vec::new();
    fn rec(n: usize, left: &mut Vec<i64>, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                rec(n, left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    rec(n as usize, &mut left, &mut cur, &mut out);
    out
}

/// Content of a word.
pub fn content(word: &[usize], rank: usize) -> Vec<i64> {
    let mut c = vec![0; rank];
    for &i in word {
        c[i] += 1;
    }
    c
}

/// Character of the module induced from one-dimensional modules `L(ν) ⊠ L(ν')`:
/// a sum over shuffles `w` of `q^{deg τ_w e(νν')} [w·(νν')]`.
pub fn shuffle_character(datum: &CartanDatum, nu: &[usize], nu2: &[usize]) -> Character {
    let n1 = nu.len();
    let n = n1 + nu2.len();
    let mut out = Character::new();
    // choose which output positions receive the first word
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != n1 {
            continue;
        }
        let mut word = Vec::with_capacity(n);
        let (mut a, mut b) = (0, 0);
        let mut deg = 0;
        for pos in 0..n {
            if mask & (1 << pos) != 0 {
                // letters of the second word already placed jumped over this one
                for &j in &nu2[..b] {
                    deg -= datum.form(nu[a], j);
                }
                word.push(nu[a]);
                a += 1;
            } else {
                word.push(nu2[b]);
                b += 1;
            }
        }
        out.entry(word).or_default().add_term(deg, rat(1));
    }
    out.retain(|_, p| !p.is_zero());
    out
}

pub fn character_add(a: &Character, b: &Character) -> Character {
    let mut out = a.clone();
    for (w, p) in b {
        let e = out.entry(w.clone()).or_default();
        *e += p;
    }
    out.retain(|_, p| !p.is_zero());
    out
}

pub fn character_scale(a: &Character, p: &LaurentPoly) -> Character {
    let mut out: Character = a.iter().map(|(w, x)| (w.clone(), x * p)).collect();
    out.retain(|_, p| !p.is_zero());
    out
}

impl fmt::Debug for KlrAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R(beta={:?})", self.beta)
    }
}

impl Clone for KlrAlgebra {
    fn clone(&self) -> Self {
        Self::new(self.datum.clone(), self.qfam.clone(), self.beta.clone())
    }
}
