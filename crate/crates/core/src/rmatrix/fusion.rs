use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::solve::{denominator, solve_normalized_rmatrix, RMatrix};
use super::{all_gens, build_vector_rep, AffineRep, Column, Result, RmatrixError, SparseMat, TVec, Tensor};
use crate::arith::{Echelon, RatFunc, SignedQPower};

type Cache<K, V> = OnceLock<Mutex<HashMap<K, Arc<V>>>>;

fn cached<K: std::hash::Hash + Eq + Clone, V>(cell: &'static Cache<K, V>, k: K, make: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
    let m = cell.get_or_init(Default::default);
    if let Some(v) = m.lock().unwrap().get(&k) {
        return Ok(v.clone());
    }
    let v = Arc::new(make()?);
    m.lock().unwrap().insert(k, v.clone());
    Ok(v)
}

/// Normalized `R_{V,V}(z)` for the vector representation of `A_{n-1}^{(1)}`.
pub fn vector_rmatrix(n: usize) -> Result<Arc<RMatrix>> {
    static C: Cache<usize, RMatrix> = OnceLock::new();
    cached(&C, n, || solve_normalized_rmatrix(&build_vector_rep(n)?, &build_vector_rep(n)?))
}

/// Image of the composite of renormalized `R_{V,V}` over a reduced word of the
/// longest permutation, acting on `V_{x_1} ⊗ … ⊗ V_{x_l}`. The result lives in
/// `V_{x_l} ⊗ … ⊗ V_{x_1}` and carries the actual spectral values.
pub fn fusion_image(v: &AffineRep, rnorm: &RMatrix, points: &[SignedQPower]) -> Result<Option<AffineRep>> {
    let l = points.len();
    if l == 0 {
        return Err(RmatrixError::BadInput("no fusion points".into()));
    }
    let d = denominator(rnorm);
    let ren = rnorm.scaled(&d);
    let mut special: BTreeMap<(i8, i64), RMatrix> = BTreeMap::new();
    let src = Tensor::new(points.iter().map(|p| (v, p.to_ratfunc())).collect());
    let mut vecs: Vec<TVec> = src.basis().into_iter().map(|b| TVec::from([(b, RatFunc::one())])).collect();
    let mut cur: Vec<usize> = (0..l).collect();
    for i in 0..l {
        for p in 0..l - 1 - i {
            let ratio = points[cur[p + 1]] / points[cur[p]];
            let key = (ratio.sign, ratio.exp);
            if let std::collections::btree_map::Entry::Vacant(e) = special.entry(key) {
                e.insert(ren.at(&ratio.to_ratfunc())?);
            }
            let r = &special[&key];
            for x in vecs.iter_mut() {
                *x = r.apply_at(x, p);
            }
            cur.swap(p, p + 1);
        }
    }
    let tgt = Tensor::new(cur.iter().map(|&k| (v, points[k].to_ratfunc())).collect());
    let mut spaces: BTreeMap<Vec<i64>, Echelon<Vec<usize>, RatFunc>> = BTreeMap::new();
    for x in vecs {
        let Some(k) = x.keys().next() else { continue };
        let w = tgt.weight(k);
        spaces.entry(w).or_default().insert(x);
    }
    let mut basis: Vec<(Vec<i64>, TVec)> = Vec::new();
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (w, ech) in &spaces {
        for (p, row) in ech.reduced_rows() {
            index.insert(p, basis.len());
            basis.push((w.clone(), row));
        }
    }
    if basis.is_empty() {
        return Ok(None);
    }
    let n = v.n();
    let dim = basis.len();
    let mut e: Vec<SparseMat> = vec![vec![Column::new(); dim]; n];
    let mut f = e.clone();
    for g in all_gens(n) {
        for (b, (_, x)) in basis.iter().enumerate() {
            let mut y = tgt.apply(g, x);
            let mut col = Column::new();
            if let Some(k) = y.keys().next() {
                let w = tgt.weight(k);
                let ech = spaces.get(&w).ok_or(RmatrixError::NotSubrepresentation(g))?;
                let coords: Vec<(Vec<usize>, RatFunc)> = ech.pivots().filter_map(|p| y.get(p).map(|c| (p.clone(), c.clone()))).collect();
                for (p, c) in coords {
                    for (k, r) in &basis[index[&p]].1 {
                        super::tadd(&mut y, k.clone(), -(&c * r));
                    }
                    col.insert(index[&p], c);
                }
                if !y.is_empty() {
                    return Err(RmatrixError::NotSubrepresentation(g));
                }
            }
            match g {
                super::QGen::E(i) => e[i][b] = col,
                super::QGen::F(i) => f[i][b] = col,
            }
        }
    }
    let weights = basis.into_iter().map(|(w, _)| w).collect();
    AffineRep::new(n, format!("fusion(N={n}, l={l})"), weights, e, f).map(Some)
}

/// Fusion of the consecutive points `X(a), …, X(b)` with `X(j) = q^{2j}`.
#[derive(Clone, Debug)]
pub struct FusionModule {
    pub n: usize,
    pub a: i64,
    pub b: i64,
    /// `(-q)^{a+b}`
    pub center: SignedQPower,
    /// The image with its spectral value divided by `center`.
    pub rep: AffineRep,
}

impl FusionModule {
    pub fn l(&self) -> usize {
        (self.b - self.a + 1) as usize
    }

    /// The image as computed, at spectral value `center`.
    pub fn evaluated(&self) -> AffineRep {
        self.rep.rescaled(&self.center.to_ratfunc())
    }
}

pub fn fusion_module(n: usize, a: i64, b: i64) -> Result<Option<FusionModule>> {
    if b < a {
        return Err(RmatrixError::BadInput(format!("empty window {a}..{b}")));
    }
    let v = build_vector_rep(n)?;
    let r = vector_rmatrix(n)?;
    let points: Vec<SignedQPower> = (a..=b).map(|j| SignedQPower::new(1, 2 * j)).collect();
    let Some(img) = fusion_image(&v, &r, &points)? else { return Ok(None) };
    let center = SignedQPower::minus_q(a + b);
    let rep = img.rescaled(&center.to_ratfunc().inv().expect("nonzero"));
    Ok(Some(FusionModule { n, a, b, center, rep }))
}

/// `V(ϖ_l)` at spectral value 1, realized by fusion on `X(0..l-1)`.
pub fn fundamental_rep(n: usize, l: usize) -> Result<Arc<AffineRep>> {
    static C: Cache<(usize, usize), AffineRep> = OnceLock::new();
    cached(&C, (n, l), || {
        if l == 0 || l > n {
            return Err(RmatrixError::BadInput(format!("no fundamental module {l} for N = {n}")));
        }
        let m = fusion_module(n, 0, l as i64 - 1)?.ok_or_else(|| RmatrixError::BadInput("fusion vanished".into()))?;
        Ok(m.rep)
    })
}

/// `d_{V(ϖ_i), V(ϖ_j)}(z)`.
pub fn fundamental_denominators(n: usize, i: usize, j: usize) -> Result<RatFunc> {
    static C: Cache<(usize, usize, usize), RatFunc> = OnceLock::new();
    cached(&C, (n, i, j), || {
        let a = fundamental_rep(n, i)?;
        let b = fundamental_rep(n, j)?;
        Ok(denominator(&solve_normalized_rmatrix(&a, &b)?))
    })
    .map(|d| (*d).clone())
}
