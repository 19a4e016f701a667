//! From spectral points and R-matrix denominators to a quiver, a symmetric
//! Cartan matrix, the polynomials `Q^J` and the associated KLR algebras; the
//! duality functor on modules realizable by fusion.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use num_traits::{One, Signed, Zero};

use crate::arith::{order_of_zero, parse_rational, ArithError, LaurentPoly, RatFunc, Rational, SignedQPower};
use crate::cartan::{CartanDatum, CartanError};
use crate::klr::{KlrAlgebra, QFamily, QFamilyError, UvPoly};
use crate::rmatrix::{build_vector_rep, fundamental_denominators, fusion_image, vector_rmatrix, AffineRep, RmatrixError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SwError {
    #[error("d_{{{i},{j}}} has a pole of order {order} at X(j)/X(i)")]
    NegativeOrder { i: String, j: String, order: i64 },
    #[error("A^J is not a symmetric generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("no denominator for the pair ({0}, {1})")]
    MissingDenominator(usize, usize),
    #[error("word {0:?} is outside the fusion-realizable family: {1}")]
    NotRealizable(Vec<usize>, String),
    #[error("bad datum: {0}")]
    BadDatum(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    QFamily(#[from] QFamilyError),
    #[error(transparent)]
    Rmatrix(#[from] RmatrixError),
}

pub type Result<T> = std::result::Result<T, SwError>;

/// `(J, X, s)` with denominators `d_{s,s'}(z)` for modules over `A_{n-1}^{(1)}`.
/// Labels `s` index fundamental modules, `1` being the vector representation.
#[derive(Clone, Debug)]
pub struct DualityDatum {
    pub n: usize,
    pub vertices: Vec<String>,
    pub x: Vec<SignedQPower>,
    pub s: Vec<usize>,
    pub denominators: BTreeMap<(usize, usize), RatFunc>,
}

impl DualityDatum {
    pub fn new(
        n: usize,
        vertices: Vec<String>,
        x: Vec<SignedQPower>,
        s: Vec<usize>,
        denominators: BTreeMap<(usize, usize), RatFunc>,
    ) -> Result<Self> {
        if vertices.is_empty() || vertices.len() != x.len() || vertices.len() != s.len() {
            return Err(SwError::BadDatum("vertices, X and s must have the same nonzero length".into()));
        }
        for (k, d) in &denominators {
            let c = d.num().coeffs_in(1);
            let monic = d.den().is_one() && c.last().is_some_and(|l| l.is_one());
            if !monic {
                return Err(SwError::BadDatum(format!("denominator for {k:?} is not a monic polynomial in z")));
            }
        }
        Ok(Self { n, vertices, x, s, denominators })
    }

    /// `J = {lo..hi}`, `X(j) = q^{2j}`, every vertex labelled by the vector
    /// representation with `d(z) = z - q^2`.
    pub fn vector_window(n: usize, lo: i64, hi: i64) -> Result<Self> {
        let js: Vec<i64> = (lo..=hi).collect();
        let d = &RatFunc::var(1) - &RatFunc::q_pow(2);
        Self::new(
            n,
            js.iter().map(|j| j.to_string()).collect(),
            js.iter().map(|j| SignedQPower::new(1, 2 * j)).collect(),
            vec![1; js.len()],
            BTreeMap::from([((1, 1), d)]),
        )
    }

    /// Fills denominators for all label pairs from fusion-constructed fundamentals.
    pub fn with_fundamental_denominators(n: usize, vertices: Vec<String>, x: Vec<SignedQPower>, s: Vec<usize>) -> Result<Self> {
        let mut den = BTreeMap::new();
        for &a in &s {
            for &b in &s {
                if let std::collections::btree_map::Entry::Vacant(e) = den.entry((a, b)) {
                    e.insert(fundamental_denominators(n, a, b)?);
                }
            }
        }
        Self::new(n, vertices, x, s, den)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Order of zero of `d_{s(i),s(j)}(z)` at `z = X(j)/X(i)`.
    pub fn d(&self, i: usize, j: usize) -> Result<i64> {
        let (a, b) = (self.s[i], self.s[j]);
        let den = self.denominators.get(&(a, b)).ok_or(SwError::MissingDenominator(a, b))?;
        let o = order_of_zero(den, self.x[j] / self.x[i])?;
        if o < 0 {
            return Err(SwError::NegativeOrder { i: self.vertices[i].clone(), j: self.vertices[j].clone(), order: o });
        }
        Ok(o)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    /// `(i, j) ↦` number of arrows `i → j`
    pub arrows: BTreeMap<(usize, usize), u32>,
}

impl Quiver {
    pub fn arrow_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0; n]; n];
        for ((i, j), k) in &self.arrows {
            m[*i][*j] = *k;
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct SwQuiver {
    pub quiver: Quiver,
    pub cartan: Vec<Vec<i64>>,
    pub datum: CartanDatum,
    pub qfamily: QFamily,
}

impl SwQuiver {
    /// `Q^J_{ij}` as a polynomial in `u` (variable 0) and `v` (variable 1).
    pub fn q_poly(&self, i: usize, j: usize) -> UvPoly {
        self.qfamily.poly(i, j)
    }

    /// Human-readable `Q^J_{ij}(u, v)`.
    pub fn q_string(&self, i: usize, j: usize) -> String {
        uv_to_string(&self.q_poly(i, j))
    }
}

/// Terms by decreasing power of `u`: `"u - v"`.
pub fn uv_to_string(p: &UvPoly) -> String {
    let mut terms: Vec<(&(u32, u32), &Rational)> = p.iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_by_key(|((a, b), _)| (std::cmp::Reverse(*a), *b));
    let mut out = String::new();
    for ((a, b), c) in terms {
        let mono: Vec<String> = [("u", *a), ("v", *b)]
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .map(|(x, e)| if e == 1 { x.to_string() } else { format!("{x}^{e}") })
            .collect();
        let neg = c.is_negative();
        let m = c.abs();
        let body = match (mono.is_empty(), m.is_one()) {
            (true, _) => m.to_string(),
            (false, true) => mono.join("*"),
            (false, false) => format!("{m}*{}", mono.join("*")),
        };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn build_quiver(dd: &DualityDatum) -> Result<SwQuiver> {
    let n = dd.len();
    let mut d = vec![vec![0i64; n]; n];
    let mut arrows = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            d[i][j] = dd.d(i, j)?;
            if d[i][j] > 0 {
                arrows.insert((i, j), d[i][j] as u32);
            }
        }
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        if d[i][i] != 0 {
            return Err(SwError::NotGcm(format!("loop at {}", dd.vertices[i])));
        }
        for j in 0..n {
            a[i][j] = if i == j { 2 } else { -d[i][j] - d[j][i] };
        }
    }
    if (0..n).any(|i| (0..n).any(|j| a[i][j] != a[j][i])) {
        return Err(SwError::NotGcm("not symmetric".into()));
    }
    let datum = CartanDatum::new(a.clone()).map_err(|e| SwError::NotGcm(e.to_string()))?;
    let quiver = Quiver { vertices: dd.vertices.clone(), arrows };
    let qfamily = QFamily::from_quiver(&datum, &quiver.arrow_matrix())?;
    Ok(SwQuiver { quiver, cartan: a, datum, qfamily })
}

/// `R^J(β)` for `β` given in the basis `{α_j : j ∈ J}`.
pub fn instantiate_klr(dd: &DualityDatum, beta: &[i64]) -> Result<KlrAlgebra> {
    if beta.len() != dd.len() || beta.iter().any(|&b| b < 0) {
        return Err(SwError::BadDatum(format!("β = {beta:?} for |J| = {}", dd.len())));
    }
    let q = build_quiver(dd)?;
    Ok(KlrAlgebra::new(q.datum, q.qfamily, beta.to_vec()))
}

fn uv_at_zero(p: &UvPoly) -> bool {
    p.get(&(0, 0)).is_none_or(|c| c.is_zero())
}

/// Whether `R^J` has a 1-dimensional module on `e(ν)` with all `x_k` and `τ_l` zero.
pub fn onedim_exists(q: &SwQuiver, nu: &[usize]) -> std::result::Result<(), String> {
    for k in 0..nu.len().saturating_sub(1) {
        let (a, b) = (nu[k], nu[k + 1]);
        if a == b {
            return Err(format!("repeated letter at {k}: x_k τ_k - τ_k x_(k+1) = 1"));
        }
        if !uv_at_zero(&q.q_poly(a, b)) {
            return Err(format!("τ_{k}^2 = Q_({a},{b})(0,0) ≠ 0"));
        }
        if k + 2 < nu.len() && nu[k + 2] == a {
            // braid defect (Q(u,v) - Q(w,v))/(u - w) at zero is the u-linear coefficient
            let p = q.q_poly(a, b);
            if p.get(&(1, 0)).is_some_and(|c| !c.is_zero()) {
                return Err(format!("braid relation at {k} has a nonzero constant defect"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct DualityImage {
    pub nu: Vec<usize>,
    pub points: Vec<SignedQPower>,
    /// `None` for the zero module.
    pub rep: Option<AffineRep>,
    /// The top weight space of the image is 1-dimensional.
    pub top_simple: bool,
}

impl DualityImage {
    pub fn dim(&self) -> usize {
        self.rep.as_ref().map_or(0, |r| r.dim())
    }
}

/// `F` on the 1-dimensional module over `e(ν)`, realized as a fusion image.
/// Realizable: every letter labelled by the vector representation, and
/// `X(ν_{k+1}) = q^2 X(ν_k)`.
pub fn duality_on_onedim(dd: &DualityDatum, nu: &[usize]) -> Result<DualityImage> {
    if nu.is_empty() || nu.iter().any(|&k| k >= dd.len()) {
        return Err(SwError::NotRealizable(nu.to_vec(), "empty or out of range".into()));
    }
    let q = build_quiver(dd)?;
    onedim_exists(&q, nu).map_err(|e| SwError::NotRealizable(nu.to_vec(), e))?;
    if nu.iter().any(|&k| dd.s[k] != 1) {
        return Err(SwError::NotRealizable(nu.to_vec(), "label other than the vector representation".into()));
    }
    let step = SignedQPower::new(1, 2);
    if nu.windows(2).any(|w| dd.x[w[1]] / dd.x[w[0]] != step) {
        return Err(SwError::NotRealizable(nu.to_vec(), "points are not consecutive".into()));
    }
    let points: Vec<SignedQPower> = nu.iter().map(|&k| dd.x[k]).collect();
    let v = build_vector_rep(dd.n)?;
    let r = vector_rmatrix(dd.n)?;
    let rep = fusion_image(&v, &r, &points)?;
    let top_simple = rep.as_ref().is_none_or(|r| r.character().get(r.weight(r.highest())) == Some(&1));
    Ok(DualityImage { nu: nu.to_vec(), points, rep, top_simple })
}

/// Structured-text form of a duality datum.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumConfig {
    pub n: usize,
    pub vertices: Vec<VertexConfig>,
    /// Omitted: computed from fusion-constructed fundamentals.
    #[serde(default)]
    pub denominators: Option<Vec<DenominatorConfig>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexConfig {
    pub name: String,
    /// `X = sign * q^exp`
    #[serde(default = "one_i8")]
    pub sign: i8,
    pub exp: i64,
    #[serde(default = "one_usize")]
    pub s: usize,
}

fn one_i8() -> i8 {
    1
}

fn one_usize() -> usize {
    1
}

/// `d_{s1,s2}(z) = Σ_k coeffs[k] z^k`, each coefficient a list of `[q-exponent, "rational"]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DenominatorConfig {
    pub s1: usize,
    pub s2: usize,
    pub coeffs: Vec<Vec<(i64, String)>>,
}

impl DenominatorConfig {
    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        let mut acc = RatFunc::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut lp = LaurentPoly::zero();
            for (e, x) in c {
                let r = parse_rational(x).ok_or_else(|| SwError::BadDatum(format!("coefficient {x:?}")))?;
                lp += &LaurentPoly::from_terms([(*e, r)]);
            }
            acc = &acc + &(&RatFunc::from_laurent(&lp) * &RatFunc::var_pow(1, k as i64));
        }
        Ok(acc)
    }
}

impl DatumConfig {
    pub fn build(&self) -> Result<DualityDatum> {
        let names = self.vertices.iter().map(|v| v.name.clone()).collect();
        if self.vertices.iter().any(|v| v.sign != 1 && v.sign != -1) {
            return Err(SwError::BadDatum("sign must be 1 or -1".into()));
        }
        let x = self.vertices.iter().map(|v| SignedQPower::new(v.sign, v.exp)).collect();
        let s = self.vertices.iter().map(|v| v.s).collect();
        match &self.denominators {
            None => DualityDatum::with_fundamental_denominators(self.n, names, x, s),
            Some(ds) => {
                let mut m = BTreeMap::new();
                for d in ds {
                    m.insert((d.s1, d.s2), d.to_ratfunc()?);
                }
                DualityDatum::new(self.n, names, x, s, m)
            }
        }
    }
}
