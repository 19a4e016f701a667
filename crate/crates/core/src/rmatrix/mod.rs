//! Finite-dimensional modules over `U_q'(A_{N-1}^{(1)})` with a spectral
//! parameter, normalized R-matrices, denominators, Yang-Baxter and fusion.
//!
//! Coproduct: `Δe_i = e_i ⊗ K_i^{-1} + 1 ⊗ e_i`, `Δf_i = f_i ⊗ 1 + K_i ⊗ f_i`.
//! A module evaluated at `x` has `e_0` multiplied by `x` and `f_0` by `x^{-1}`.

mod fusion;
mod solve;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{quantum_factorial, quantum_integer, RatFunc};

pub use fusion::{fundamental_denominators, fundamental_rep, fusion_image, fusion_module, vector_rmatrix, FusionModule};
pub use solve::{
    denominator, format_z_poly, hom_dimension, poly_json, solve_normalized_rmatrix, unitarity_scalar, yang_baxter_check, RMatrix,
    YangBaxterReport,
};

pub type Column = BTreeMap<usize, RatFunc>;
/// Column `j` is the image of basis vector `j`.
pub type SparseMat = Vec<Column>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum QGen {
    E(usize),
    F(usize),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RmatrixError {
    #[error("relation check failed: {0}")]
    RelationFailure(String),
    #[error("the intertwining system has only the zero solution")]
    NoSolution,
    #[error("intertwiner space has dimension {0}")]
    NonUniqueSolution(usize),
    #[error("specialization hits a pole in entry {0}")]
    SpecializationSingular(String),
    #[error("identity fails: {0}")]
    IdentityViolation(String),
    #[error("image is not stable under {0:?}")]
    NotSubrepresentation(QGen),
    #[error("bad input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, RmatrixError>;

/// Cartan matrix of `A_{n-1}^{(1)}`, nodes `0..n`.
pub fn affine_cartan(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        a[i][(i + 1) % n] -= 1;
        a[i][(i + n - 1) % n] -= 1;
    }
    a
}

fn add_into(c: &mut Column, k: usize, x: RatFunc) {
    if x.is_zero() {
        return;
    }
    match c.get_mut(&k) {
        Some(e) => {
            *e = &*e + &x;
            if e.is_zero() {
                c.remove(&k);
            }
        }
        None => {
            c.insert(k, x);
        }
    }
}

fn apply_mat(m: &SparseMat, v: &Column) -> Column {
    let mut out = Column::new();
    for (j, c) in v {
        for (i, x) in &m[*j] {
            add_into(&mut out, *i, c * x);
        }
    }
    out
}

fn axpy(acc: &mut Column, c: &RatFunc, v: &Column) {
    for (k, x) in v {
        add_into(acc, *k, c * x);
    }
}

/// A module with basis of weight vectors; `weights[b][i]` is the exponent of
/// `K_i` on basis vector `b`. Matrices are the action at spectral value 1.
#[derive(Clone, Debug)]
pub struct AffineRep {
    n: usize,
    label: String,
    weights: Vec<Vec<i64>>,
    e: Vec<SparseMat>,
    f: Vec<SparseMat>,
    highest: usize,
}

impl AffineRep {
    /// Checks every defining relation before returning.
    pub fn new(n: usize, label: impl Into<String>, weights: Vec<Vec<i64>>, e: Vec<SparseMat>, f: Vec<SparseMat>) -> Result<Self> {
        let label = label.into();
        let d = weights.len();
        if n < 2 || d == 0 {
            return Err(RmatrixError::BadInput(format!("n = {n}, dim = {d}")));
        }
        let shape_ok = weights.iter().all(|w| w.len() == n)
            && e.len() == n
            && f.len() == n
            && e.iter().chain(f.iter()).all(|m| m.len() == d && m.iter().all(|c| c.keys().all(|&k| k < d)));
        if !shape_ok {
            return Err(RmatrixError::RelationFailure(format!("{label}: malformed matrices")));
        }
        let highest = (0..d)
            .filter(|&b| (1..n).all(|i| weights[b][i] >= 0 && e[i][b].is_empty()))
            .max_by_key(|&b| (1..n).map(|i| weights[b][i]).sum::<i64>())
            .ok_or_else(|| RmatrixError::RelationFailure(format!("{label}: no highest vector")))?;
        let r = Self { n, label, weights, e, f, highest };
        r.check_relations()?;
        Ok(r)
    }

    pub fn trivial(n: usize) -> Self {
        let z = vec![vec![Column::new()]; n];
        Self { n, label: "trivial".into(), weights: vec![vec![0; n]], e: z.clone(), f: z, highest: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, b: usize) -> &[i64] {
        &self.weights[b]
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// Dominant extremal basis vector used for normalization.
    pub fn highest(&self) -> usize {
        self.highest
    }

    pub fn e(&self, i: usize) -> &SparseMat {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &SparseMat {
        &self.f[i]
    }

    fn mat(&self, g: QGen) -> &SparseMat {
        match g {
            QGen::E(i) => &self.e[i],
            QGen::F(i) => &self.f[i],
        }
    }

    /// `g` applied to basis vector `b` of the module evaluated at `x`.
    pub fn apply(&self, g: QGen, b: usize, x: &RatFunc) -> Column {
        let c = &self.mat(g)[b];
        match g {
            QGen::E(0) => c.iter().map(|(k, v)| (*k, v * x)).collect(),
            QGen::F(0) => {
                let xi = x.inv().expect("spectral value is nonzero");
                c.iter().map(|(k, v)| (*k, v * &xi)).collect()
            }
            _ => c.clone(),
        }
    }

    /// `K_i^{±1}` as a diagonal matrix.
    pub fn k_matrix(&self, i: usize, sign: i64) -> SparseMat {
        self.weights.iter().enumerate().map(|(b, w)| Column::from([(b, RatFunc::q_pow(sign * w[i]))])).collect()
    }

    /// Equal weights and equal matrices in the given bases.
    pub fn same_action(&self, o: &AffineRep) -> bool {
        self.n == o.n && self.weights == o.weights && self.e == o.e && self.f == o.f
    }

    /// Multiset of weights.
    pub fn character(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }

    /// The same module with the spectral value multiplied by `c`.
    pub fn rescaled(&self, c: &RatFunc) -> Self {
        let mut r = self.clone();
        let ci = c.inv().expect("nonzero rescaling");
        for col in &mut r.e[0] {
            for v in col.values_mut() {
                *v = &*v * c;
            }
        }
        for col in &mut r.f[0] {
            for v in col.values_mut() {
                *v = &*v * &ci;
            }
        }
        r
    }

    pub fn check_relations(&self) -> Result<()> {
        let n = self.n;
        let a = affine_cartan(n);
        let d = self.dim();
        let fail = |s: String| Err(RmatrixError::RelationFailure(format!("{}: {s}", self.label)));
        for j in 0..n {
            for b in 0..d {
                for (sign, m) in [(1, &self.e[j]), (-1, &self.f[j])] {
                    for &r in m[b].keys() {
                        if (0..n).any(|i| self.weights[r][i] != self.weights[b][i] + sign * a[i][j]) {
                            return fail(format!("K-weight of generator {j} on vector {b}"));
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for b in 0..d {
                    let v = Column::from([(b, RatFunc::one())]);
                    let mut c = apply_mat(&self.e[i], &apply_mat(&self.f[j], &v));
                    axpy(&mut c, &RatFunc::int(-1), &apply_mat(&self.f[j], &apply_mat(&self.e[i], &v)));
                    if i == j {
                        let k = RatFunc::from_laurent(&quantum_integer(self.weights[b][i], 1));
                        add_into(&mut c, b, -k);
                    }
                    if !c.is_empty() {
                        return fail(format!("[e_{i}, f_{j}] on vector {b}"));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let m = (1 - a[i][j]) as usize;
                for mats in [&self.e, &self.f] {
                    for b in 0..d {
                        let mut acc = Column::new();
                        for k in 0..=m {
                            let mut v = Column::from([(b, RatFunc::one())]);
                            for _ in 0..k {
                                v = apply_mat(&mats[i], &v);
                            }
                            v = apply_mat(&mats[j], &v);
                            for _ in 0..m - k {
                                v = apply_mat(&mats[i], &v);
                            }
                            let den = &quantum_factorial(k as u32, 1) * &quantum_factorial((m - k) as u32, 1);
                            let c = &RatFunc::int(if k % 2 == 0 { 1 } else { -1 }) / &RatFunc::from_laurent(&den);
                            axpy(&mut acc, &c, &v);
                        }
                        if !acc.is_empty() {
                            return fail(format!("Serre relation ({i}, {j}) on vector {b}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `V = span(u_1..u_N)`: `f_i u_i = u_{i+1}`, `e_i u_{i+1} = u_i`,
/// `e_0 u_1 = u_N`, `f_0 u_N = u_1` (0-based indices in code).
pub fn build_vector_rep(n: usize) -> Result<AffineRep> {
    if n < 2 {
        return Err(RmatrixError::BadInput(format!("N = {n}")));
    }
    let mut weights = vec![vec![0; n]; n];
    for (k, w) in weights.iter_mut().enumerate() {
        for i in 1..n {
            w[i] = (k + 1 == i) as i64 - (k == i) as i64;
        }
        w[0] = (k == n - 1) as i64 - (k == 0) as i64;
    }
    let empty = vec![Column::new(); n];
    let mut e = vec![empty.clone(); n];
    let mut f = vec![empty; n];
    for i in 1..n {
        e[i][i] = Column::from([(i - 1, RatFunc::one())]);
        f[i][i - 1] = Column::from([(i, RatFunc::one())]);
    }
    e[0][0] = Column::from([(n - 1, RatFunc::one())]);
    f[0][n - 1] = Column::from([(0, RatFunc::one())]);
    AffineRep::new(n, format!("V(N={n})"), weights, e, f)
}

pub type TVec = BTreeMap<Vec<usize>, RatFunc>;

fn tadd(v: &mut TVec, k: Vec<usize>, x: RatFunc) {
    if x.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(e) => {
            *e = &*e + &x;
            if e.is_zero() {
                v.remove(&k);
            }
        }
        None => {
            v.insert(k, x);
        }
    }
}

/// Tensor product of evaluated modules, basis indexed by multi-indices.
#[derive(Clone)]
pub struct Tensor<'a> {
    pub factors: Vec<(&'a AffineRep, RatFunc)>,
}

impl<'a> Tensor<'a> {
    pub fn new(factors: Vec<(&'a AffineRep, RatFunc)>) -> Self {
        Self { factors }
    }

    pub fn weight(&self, idx: &[usize]) -> Vec<i64> {
        let n = self.factors[0].0.n();
        let mut w = vec![0; n];
        for (k, (r, _)) in idx.iter().zip(&self.factors) {
            for i in 0..n {
                w[i] += r.weight(*k)[i];
            }
        }
        w
    }

    pub fn basis(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for (r, _) in &self.factors {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..r.dim()).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn apply_basis(&self, g: QGen, idx: &[usize]) -> TVec {
        let mut out = TVec::new();
        let (i, is_e) = match g {
            QGen::E(i) => (i, true),
            QGen::F(i) => (i, false),
        };
        for (k, (r, x)) in self.factors.iter().enumerate() {
            let col = r.apply(g, idx[k], x);
            if col.is_empty() {
                continue;
            }
            let others: i64 = if is_e {
                idx.iter().zip(&self.factors).skip(k + 1).map(|(b, (r, _))| -r.weight(*b)[i]).sum()
            } else {
                idx.iter().zip(&self.factors).take(k).map(|(b, (r, _))| r.weight(*b)[i]).sum()
            };
            let kf = RatFunc::q_pow(others);
            for (b, c) in col {
                let mut j = idx.to_vec();
                j[k] = b;
                tadd(&mut out, j, &c * &kf);
            }
        }
        out
    }

    pub fn apply(&self, g: QGen, v: &TVec) -> TVec {
        let mut out = TVec::new();
        for (idx, c) in v {
            for (j, x) in self.apply_basis(g, idx) {
                tadd(&mut out, j, c * &x);
            }
        }
        out
    }
}

pub(crate) fn all_gens(n: usize) -> Vec<QGen> {
    (0..n).flat_map(|i| [QGen::E(i), QGen::F(i)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_rep_weights() {
        for n in 2..=4 {
            let v = build_vector_rep(n).unwrap();
            assert_eq!(v.dim(), n);
            assert_eq!(v.highest(), 0);
            for b in 0..n {
                assert!(v.weight(b).iter().all(|&k| (-1..=1).contains(&k)));
                assert_eq!(v.weight(b).iter().sum::<i64>(), 0);
            }
            for i in 1..n {
                assert!(v.e(i)[0].is_empty());
            }
        }
    }

    #[test]
    fn broken_rep_is_rejected() {
        let v = build_vector_rep(3).unwrap();
        let mut e = v.e.clone();
        e[0][0] = Column::from([(2, RatFunc::int(2))]);
        let r = AffineRep::new(3, "bad", v.weights.clone(), e, v.f.clone());
        assert!(matches!(r, Err(RmatrixError::RelationFailure(_))));
    }

    #[test]
    fn tensor_square_is_a_module() {
        let v = build_vector_rep(2).unwrap();
        let x = RatFunc::q_pow(3);
        let t = Tensor::new(vec![(&v, RatFunc::one()), (&v, x)]);
        for b in t.basis() {
            let u = TVec::from([(b.clone(), RatFunc::one())]);
            let ef = t.apply(QGen::E(0), &t.apply(QGen::F(0), &u));
            let fe = t.apply(QGen::F(0), &t.apply(QGen::E(0), &u));
            let mut d = ef;
            for (k, c) in fe {
                tadd(&mut d, k, -c);
            }
            let w = t.weight(&b)[0];
            let mut expect = TVec::new();
            tadd(&mut expect, b.clone(), RatFunc::from_laurent(&quantum_integer(w, 1)));
            assert_eq!(d, expect);
        }
    }
}
