//! Dynkin quivers with height functions, the repetition quiver, adapted
//! Coxeter elements, the labelling `φ` of repetition-quiver vertices by
//! (positive root, integer), and the duality datum built from it.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::SignedQPower;
use crate::cartan::{CartanDatum, CartanError, RootVector};
use crate::rmatrix::fundamental_denominators;
use crate::swquiver::{build_quiver, DualityDatum, SwError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DynkinError {
    #[error("not an orientation of the Dynkin diagram: {0}")]
    BadOrientation(String),
    #[error("height function violates ξ_j = ξ_i - 1 on the arrow {0} -> {1}")]
    InvalidHeightFunction(usize, usize),
    #[error("no adapted order of the vertices")]
    NoAdaptedOrder,
    #[error("adapted orders define different Coxeter elements")]
    AmbiguousCoxeter,
    #[error("φ assigns {root:?} twice: at ({i1}, {p1}) and ({i2}, {p2})")]
    InductionConflict { root: (RootVector, i64), i1: usize, p1: i64, i2: usize, p2: i64 },
    #[error("window misses the simple root α_{0} at j = 0")]
    WindowTooSmall(usize),
    #[error("pole of order {order} > 1 in d_{{{i},{j}}} at z = (-q)^{m}")]
    HypothesisViolated { i: usize, j: usize, m: i64, order: i64 },
    #[error("only type A is supported here")]
    NotTypeA,
    #[error("identity fails: {0}")]
    IdentityViolation(String),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Sw(#[from] SwError),
}

pub type Result<T> = std::result::Result<T, DynkinError>;

/// Finite-type simply-laced Cartan datum with one orientation per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinQuiver {
    #[serde(skip)]
    pub datum: CartanDatum,
    pub arrows: Vec<(usize, usize)>,
}

impl DynkinQuiver {
    pub fn new(datum: CartanDatum, arrows: Vec<(usize, usize)>) -> Result<Self> {
        datum.positive_roots()?;
        if !datum.is_simply_laced() {
            return Err(DynkinError::BadOrientation("diagram is not simply laced".into()));
        }
        let n = datum.rank();
        let mut seen = BTreeSet::new();
        for &(i, j) in &arrows {
            if i >= n || j >= n || datum.a(i, j) != -1 {
                return Err(DynkinError::BadOrientation(format!("{i} -> {j} is not an edge")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(DynkinError::BadOrientation(format!("edge {i} - {j} oriented twice")));
            }
        }
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| datum.a(i, j) != 0).count();
        if edges != seen.len() {
            return Err(DynkinError::BadOrientation("some edge has no orientation".into()));
        }
        Ok(Self { datum, arrows })
    }

    /// `A_n` with arrows `k → k+1` (or reversed).
    pub fn linear_a(n: usize, reversed: bool) -> Self {
        let arrows = (0..n.saturating_sub(1)).map(|k| if reversed { (k + 1, k) } else { (k, k + 1) }).collect();
        Self::new(CartanDatum::type_a(n), arrows).expect("valid orientation")
    }

    /// `D_4` with every leg pointing at (or away from) the hub.
    pub fn d4_star(inward: bool) -> Self {
        let d = CartanDatum::type_d(4);
        let hub = (0..4).find(|&i| d.neighbours(i).len() == 3).expect("D4 has a trivalent node");
        let arrows = d.neighbours(hub).into_iter().map(|k| if inward { (k, hub) } else { (hub, k) }).collect();
        Self::new(d, arrows).expect("valid orientation")
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn reversed(&self) -> Self {
        Self { datum: self.datum.clone(), arrows: self.arrows.iter().map(|&(i, j)| (j, i)).collect() }
    }

    fn is_source(arrows: &[(usize, usize)], v: usize) -> bool {
        arrows.iter().all(|&(_, j)| j != v)
    }

    /// Vertices `j` with a path `j → … → i`, including `i`.
    pub fn reaching(&self, i: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([i]);
        let mut stack = vec![i];
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.arrows {
                if b == v && out.insert(a) {
                    stack.push(a);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightFunction {
    pub xi: Vec<i64>,
}

impl HeightFunction {
    pub fn new(q: &DynkinQuiver, xi: Vec<i64>) -> Result<Self> {
        if xi.len() != q.rank() {
            return Err(DynkinError::BadOrientation("height function has wrong length".into()));
        }
        for &(i, j) in &q.arrows {
            if xi[j] != xi[i] - 1 {
                return Err(DynkinError::InvalidHeightFunction(i, j));
            }
        }
        Ok(Self { xi })
    }

    /// The height function with maximum 0 (the diagram is connected).
    pub fn canonical(q: &DynkinQuiver) -> Self {
        let n = q.rank();
        let mut xi: Vec<Option<i64>> = vec![None; n];
        xi[0] = Some(0);
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, j) in &q.arrows {
                match (xi[i], xi[j]) {
                    (Some(a), None) => {
                        xi[j] = Some(a - 1);
                        changed = true;
                    }
                    (None, Some(b)) => {
                        xi[i] = Some(b + 1);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let xi: Vec<i64> = xi.into_iter().map(|x| x.expect("connected diagram")).collect();
        let m = *xi.iter().max().unwrap();
        Self { xi: xi.into_iter().map(|x| x - m).collect() }
    }

    pub fn shifted(&self, c: i64) -> Self {
        Self { xi: self.xi.iter().map(|x| x + c).collect() }
    }
}

pub type RepVertex = (usize, i64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepetitionQuiver {
    pub vertices: Vec<RepVertex>,
    pub arrows: Vec<(RepVertex, RepVertex)>,
}

impl RepetitionQuiver {
    pub fn out_degree(&self, v: RepVertex) -> usize {
        self.arrows.iter().filter(|(a, _)| *a == v).count()
    }
}

/// Vertices `(i, p)` with `p - ξ_i` even and `lo ≤ p ≤ hi`; arrows
/// `(i,p) → (j,p+1)` and `(j,p) → (i,p+1)` for each arrow `i → j`.
pub fn repetition_quiver(q: &DynkinQuiver, h: &HeightFunction, lo: i64, hi: i64) -> Result<RepetitionQuiver> {
    let h = HeightFunction::new(q, h.xi.clone())?;
    let vertices: Vec<RepVertex> =
        (lo..=hi).flat_map(|p| (0..q.rank()).map(move |i| (i, p))).filter(|&(i, p)| (p - h.xi[i]).rem_euclid(2) == 0).collect();
    let set: BTreeSet<RepVertex> = vertices.iter().copied().collect();
    let mut arrows = Vec::new();
    for &(i, j) in &q.arrows {
        for &(k, p) in &vertices {
            for (a, b) in [(i, j), (j, i)] {
                if k == a && set.contains(&(b, p + 1)) {
                    arrows.push(((a, p), (b, p + 1)));
                }
            }
        }
    }
    arrows.sort();
    Ok(RepetitionQuiver { vertices, arrows })
}

/// Coxeter element as a reduced word `τ = s_{i_1} ⋯ s_{i_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterElement {
    pub word: Vec<usize>,
    /// All adapted orders, each defining the same element.
    pub adapted_orders: Vec<Vec<usize>>,
}

impl CoxeterElement {
    pub fn act(&self, d: &CartanDatum, v: &[i64]) -> RootVector {
        d.weyl_act(&self.word, v)
    }

    pub fn act_inverse(&self, d: &CartanDatum, v: &[i64]) -> RootVector {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        d.weyl_act(&rev, v)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut v = p.clone();
            v.insert(k, n - 1);
            out.push(v);
        }
    }
    out
}

/// Orders `i_1, …, i_n` where each `i_k` is a source of the quiver obtained
/// by reversing the arrows at `i_1, …, i_{k-1}`.
pub fn adapted_coxeter(q: &DynkinQuiver) -> Result<CoxeterElement> {
    let n = q.rank();
    let mut orders = Vec::new();
    'perm: for p in permutations(n) {
        let mut arrows = q.arrows.clone();
        for &v in &p {
            if !DynkinQuiver::is_source(&arrows, v) {
                continue 'perm;
            }
            for a in arrows.iter_mut() {
                if a.0 == v || a.1 == v {
                    *a = (a.1, a.0);
                }
            }
        }
        orders.push(p);
    }
    orders.sort();
    let first = orders.first().ok_or(DynkinError::NoAdaptedOrder)?.clone();
    let images = |w: &[usize]| (0..n).map(|i| q.datum.weyl_act(w, &q.datum.simple_root(i))).collect::<Vec<_>>();
    let reference = images(&first);
    if orders.iter().any(|o| images(o) != reference) {
        return Err(DynkinError::AmbiguousCoxeter);
    }
    Ok(CoxeterElement { word: first, adapted_orders: orders })
}

/// `γ_i = Σ_{j ∈ B(i)} α_j`.
pub fn gamma(q: &DynkinQuiver, i: usize) -> RootVector {
    let mut g = vec![0; q.rank()];
    for j in q.reaching(i) {
        g[j] += 1;
    }
    g
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiRow {
    pub i: usize,
    pub p: i64,
    pub root: RootVector,
    pub j: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiTable {
    pub xi: Vec<i64>,
    pub lo: i64,
    pub hi: i64,
    pub rows: Vec<PhiRow>,
}

impl PhiTable {
    pub fn get(&self, i: usize, p: i64) -> Option<&PhiRow> {
        self.rows.iter().find(|r| r.i == i && r.p == p)
    }

    pub fn preimage(&self, root: &[i64], j: i64) -> Option<RepVertex> {
        self.rows.iter().find(|r| r.root == root && r.j == j).map(|r| (r.i, r.p))
    }
}

/// `φ(i, ξ_i) = (γ_i, 0)`; going down, `φ(i, p-2) = (τβ, j)` or `(-τβ, j-1)`
/// by the sign of `τβ`; going up, `φ(i, p+2) = (τ^{-1}β, j)` or `(-τ^{-1}β, j+1)`.
pub fn phi_map(q: &DynkinQuiver, h: &HeightFunction, lo: i64, hi: i64) -> Result<PhiTable> {
    let h = HeightFunction::new(q, h.xi.clone())?;
    let tau = adapted_coxeter(q)?;
    let d = &q.datum;
    let mut rows = Vec::new();
    for i in 0..q.rank() {
        let base = (gamma(q, i), 0i64);
        let mut down = base.clone();
        let mut p = h.xi[i];
        while p >= lo {
            if p <= hi {
                rows.push(PhiRow { i, p, root: down.0.clone(), j: down.1 });
            }
            let t = tau.act(d, &down.0);
            down = if is_positive(&t) { (t, down.1) } else { (t.iter().map(|x| -x).collect(), down.1 - 1) };
            p -= 2;
        }
        let mut up = base;
        let mut p = h.xi[i] + 2;
        while p <= hi {
            let t = tau.act_inverse(d, &up.0);
            up = if is_positive(&t) { (t, up.1) } else { (t.iter().map(|x| -x).collect(), up.1 + 1) };
            if p >= lo {
                rows.push(PhiRow { i, p, root: up.0.clone(), j: up.1 });
            }
            p += 2;
        }
    }
    rows.sort_by_key(|r| (r.p, r.i));
    let mut seen: BTreeMap<(RootVector, i64), RepVertex> = BTreeMap::new();
    for r in &rows {
        if let Some(&(i1, p1)) = seen.get(&(r.root.clone(), r.j)) {
            return Err(DynkinError::InductionConflict { root: (r.root.clone(), r.j), i1, p1, i2: r.i, p2: r.p });
        }
        seen.insert((r.root.clone(), r.j), (r.i, r.p));
    }
    Ok(PhiTable { xi: h.xi, lo, hi, rows })
}

/// A window covering `Δ_+ × {0}` and its neighbours.
pub fn default_window(q: &DynkinQuiver, h: &HeightFunction) -> Result<(i64, i64)> {
    let cox = q.datum.coxeter_number()?;
    let lo = h.xi.iter().min().unwrap() - 2 * cox;
    let hi = h.xi.iter().max().unwrap() + 2 * cox;
    Ok((lo, hi))
}

/// The datum on `J = φ^{-1}(Π_0 × {0})`, `X(i,p) = (-q)^{p+h}`, `s(i,p) = V(ϖ_i)`.
#[derive(Clone, Debug)]
pub struct CqDatum {
    pub datum: DualityDatum,
    /// `J` in the order `k ↦ φ^{-1}(α_k, 0)`.
    pub vertices: Vec<RepVertex>,
    pub coxeter_number: i64,
}

pub fn is_type_a(d: &CartanDatum) -> bool {
    let n = d.rank();
    *d == CartanDatum::type_a(n)
}

pub fn build_cq_datum(q: &DynkinQuiver, h: &HeightFunction) -> Result<CqDatum> {
    if !is_type_a(&q.datum) {
        return Err(DynkinError::NotTypeA);
    }
    let n = q.rank();
    let (lo, hi) = default_window(q, h)?;
    let phi = phi_map(q, h, lo, hi)?;
    let hcox = q.datum.coxeter_number()?;
    let mut vertices = Vec::new();
    for k in 0..n {
        let v = phi.preimage(&q.datum.simple_root(k), 0).ok_or(DynkinError::WindowTooSmall(k))?;
        vertices.push(v);
    }
    let names = vertices.iter().map(|(i, p)| format!("({},{})", i + 1, p)).collect();
    let x = vertices.iter().map(|&(_, p)| SignedQPower::minus_q(p + hcox)).collect();
    let s = vertices.iter().map(|&(i, _)| i + 1).collect();
    let datum = DualityDatum::with_fundamental_denominators(n + 1, names, x, s)?;
    Ok(CqDatum { datum, vertices, coxeter_number: hcox })
}

#[derive(Clone, Debug, Serialize)]
pub struct G0Report {
    pub rank: usize,
    pub arrows: Vec<(usize, usize)>,
    pub xi: Vec<i64>,
    /// `k ↦ (i, p)` with `φ(i, p) = (α_k, 0)`
    pub j_vertices: Vec<RepVertex>,
    pub max_pole_order: i64,
    pub cartan: Vec<Vec<i64>>,
    pub gamma_arrows: Vec<(usize, usize)>,
    pub passed: bool,
}

/// Pole orders of the normalized R-matrices between fundamentals, read off
/// as zero orders of the denominators at every `(-q)^m`, `|m| ≤ 2h`.
pub fn max_pole_order(n: usize, hcox: i64) -> Result<i64> {
    let mut best = 0;
    for i in 1..=n {
        for j in 1..=n {
            let d = fundamental_denominators(n + 1, i, j).map_err(SwError::from)?;
            for m in -2 * hcox..=2 * hcox {
                let o = crate::arith::order_of_zero(&d, SignedQPower::minus_q(m)).map_err(SwError::from)?;
                if o > 1 {
                    return Err(DynkinError::HypothesisViolated { i, j, m, order: o });
                }
                best = best.max(o);
            }
        }
    }
    Ok(best)
}

/// `A^J` equals the Cartan matrix of the Dynkin diagram under `k ↦ φ^{-1}(α_k, 0)`,
/// and that map is a quiver isomorphism from the reversed quiver onto `Γ^J`.
pub fn verify_thm_g0(q: &DynkinQuiver, h: &HeightFunction) -> Result<G0Report> {
    if !is_type_a(&q.datum) {
        return Err(DynkinError::NotTypeA);
    }
    let n = q.rank();
    let hcox = q.datum.coxeter_number()?;
    let max_pole = max_pole_order(n, hcox)?;
    let cq = build_cq_datum(q, h)?;
    let sw = build_quiver(&cq.datum)?;
    for k in 0..n {
        for l in 0..n {
            if sw.cartan[k][l] != q.datum.a(k, l) {
                return Err(DynkinError::IdentityViolation(format!(
                    "A^J[{k}][{l}] = {} but a[{k}][{l}] = {}",
                    sw.cartan[k][l],
                    q.datum.a(k, l)
                )));
            }
        }
    }
    let expect: BTreeMap<(usize, usize), u32> = q.arrows.iter().map(|&(i, j)| ((j, i), 1)).collect();
    if sw.quiver.arrows != expect {
        return Err(DynkinError::IdentityViolation(format!(
            "Γ^J arrows {:?}, reversed quiver {:?}",
            sw.quiver.arrows.keys().collect::<Vec<_>>(),
            expect.keys().collect::<Vec<_>>()
        )));
    }
    Ok(G0Report {
        rank: n,
        arrows: q.arrows.clone(),
        xi: h.xi.clone(),
        j_vertices: cq.vertices,
        max_pole_order: max_pole,
        cartan: sw.cartan,
        gamma_arrows: sw.quiver.arrows.keys().copied().collect(),
        passed: true,
    })
}

/// Structured-text form: a Cartan type, arrows and an optional height function.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverConfig {
    #[serde(rename = "type")]
    pub kind: String,
    pub arrows: Vec<(usize, usize)>,
    #[serde(default)]
    pub xi: Option<Vec<i64>>,
}

impl QuiverConfig {
    pub fn build(&self) -> Result<(DynkinQuiver, HeightFunction)> {
        let q = DynkinQuiver::new(CartanDatum::of_type(&self.kind)?, self.arrows.clone())?;
        let h = match &self.xi {
            Some(x) => HeightFunction::new(&q, x.clone())?,
            None => HeightFunction::canonical(&q),
        };
        Ok((q, h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_golden_case() {
        let q = DynkinQuiver::linear_a(2, false);
        let h = HeightFunction::new(&q, vec![1, 0]).unwrap();
        assert_eq!(adapted_coxeter(&q).unwrap().word, vec![0, 1]);
        assert_eq!(gamma(&q, 0), vec![1, 0]);
        assert_eq!(gamma(&q, 1), vec![1, 1]);
        let phi = phi_map(&q, &h, -6, 4).unwrap();
        let zero: Vec<_> = phi.rows.iter().filter(|r| r.j == 0).map(|r| (r.i, r.p, r.root.clone())).collect();
        assert_eq!(zero, vec![(0, -1, vec![0, 1]), (1, 0, vec![1, 1]), (0, 1, vec![1, 0])]);
    }

    #[test]
    fn a1_alternates() {
        let q = DynkinQuiver::linear_a(1, false);
        let h = HeightFunction::new(&q, vec![0]).unwrap();
        let phi = phi_map(&q, &h, -6, 0).unwrap();
        let js: Vec<i64> = phi.rows.iter().rev().map(|r| r.j).collect();
        assert_eq!(js, vec![0, -1, -2, -3]);
        assert!(phi.rows.iter().all(|r| r.root == vec![1]));
    }

    #[test]
    fn bad_height_function() {
        let q = DynkinQuiver::linear_a(2, false);
        assert_eq!(HeightFunction::new(&q, vec![0, 0]), Err(DynkinError::InvalidHeightFunction(0, 1)));
        assert_eq!(HeightFunction::canonical(&q).xi, vec![0, -1]);
    }

    #[test]
    fn orientation_must_cover_edges() {
        let r = DynkinQuiver::new(CartanDatum::type_a(3), vec![(0, 1)]);
        assert!(matches!(r, Err(DynkinError::BadOrientation(_))));
        let r = DynkinQuiver::new(CartanDatum::type_a(3), vec![(0, 2), (1, 2)]);
        assert!(matches!(r, Err(DynkinError::BadOrientation(_))));
    }
}
