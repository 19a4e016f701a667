use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::{all_gens, AffineRep, Result, RmatrixError, TVec, Tensor};
use crate::arith::{Echelon, MPoly, RatFunc};

/// `R(z): M1_{z_1} ⊗ M2_{z_2} → M2_{z_2} ⊗ M1_{z_1}` in `z = z_2/z_1` (variable 1).
/// Source index `a * d2 + b` for `u_a ⊗ u_b`; target index `b * d1 + a`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    pub d1: usize,
    pub d2: usize,
    entries: BTreeMap<(usize, usize), RatFunc>,
}

impl RMatrix {
    pub fn entries(&self) -> &BTreeMap<(usize, usize), RatFunc> {
        &self.entries
    }

    pub fn entry(&self, target: usize, source: usize) -> RatFunc {
        self.entries.get(&(target, source)).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Replaces `z` by `value`.
    pub fn at(&self, value: &RatFunc) -> Result<RMatrix> {
        let images = [RatFunc::q(), value.clone()];
        let mut entries = BTreeMap::new();
        for (k, x) in &self.entries {
            let d = RatFunc::from_poly(x.den().clone()).substitute(&images);
            if d.is_zero() {
                return Err(RmatrixError::SpecializationSingular(format!("{k:?} = {x} at z = {value}")));
            }
            let v = x.substitute(&images);
            if !v.is_zero() {
                entries.insert(*k, v);
            }
        }
        Ok(RMatrix { d1: self.d1, d2: self.d2, entries })
    }

    pub fn scaled(&self, c: &RatFunc) -> RMatrix {
        let entries = self.entries.iter().map(|(k, x)| (*k, x * c)).filter(|(_, x)| !x.is_zero()).collect();
        RMatrix { d1: self.d1, d2: self.d2, entries }
    }

    fn columns(&self) -> BTreeMap<usize, Vec<(usize, RatFunc)>> {
        let mut out: BTreeMap<usize, Vec<(usize, RatFunc)>> = BTreeMap::new();
        for ((t, s), x) in &self.entries {
            out.entry(*s).or_default().push((*t, x.clone()));
        }
        out
    }

    /// Applies `R` to tensor positions `pos, pos + 1` of every term of `v`.
    pub fn apply_at(&self, v: &TVec, pos: usize) -> TVec {
        let cols = self.columns();
        let mut out = TVec::new();
        for (idx, c) in v {
            let s = idx[pos] * self.d2 + idx[pos + 1];
            let Some(col) = cols.get(&s) else { continue };
            for (t, x) in col {
                let mut j = idx.clone();
                j[pos] = t / self.d1;
                j[pos + 1] = t % self.d1;
                super::tadd(&mut out, j, c * x);
            }
        }
        out
    }

    /// Entries with numerator and denominator as coefficient lists over `(q, z)` exponents.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|((t, s), x)| json!({"target": t, "source": s, "num": poly_json(x.num()), "den": poly_json(x.den())}))
            .collect();
        json!({"d1": self.d1, "d2": self.d2, "entries": rows})
    }
}

pub fn poly_json(p: &MPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let mut e = m.exps().to_vec();
                e.resize(2, 0);
                json!({"exp": e, "coeff": c.to_string()})
            })
            .collect(),
    )
}

pub fn solve_normalized_rmatrix(m1: &AffineRep, m2: &AffineRep) -> Result<RMatrix> {
    if m1.n() != m2.n() {
        return Err(RmatrixError::BadInput("modules over different algebras".into()));
    }
    let (d1, d2) = (m1.dim(), m2.dim());
    let z = RatFunc::var(1);
    let src = Tensor::new(vec![(m1, RatFunc::one()), (m2, z.clone())]);
    let tgt = Tensor::new(vec![(m2, z), (m1, RatFunc::one())]);
    let sidx = |i: &[usize]| i[0] * d2 + i[1];
    let tidx = |i: &[usize]| i[0] * d1 + i[1];
    let mut by_weight: BTreeMap<Vec<i64>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for b in src.basis() {
        by_weight.entry(src.weight(&b)).or_default().1.push(sidx(&b));
    }
    for b in tgt.basis() {
        by_weight.entry(tgt.weight(&b)).or_default().0.push(tidx(&b));
    }
    let mut unknown: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut keys = Vec::new();
    for (ts, ss) in by_weight.values() {
        for &t in ts {
            for &s in ss {
                unknown.insert((t, s), keys.len());
                keys.push((t, s));
            }
        }
    }
    let tsplit = |t: usize| vec![t / d1, t % d1];
    let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(t, s) in &keys {
        by_source.entry(s).or_default().push(t);
    }
    let mut eqs: Echelon<usize, RatFunc> = Echelon::new();
    for g in all_gens(m1.n()) {
        let tg: BTreeMap<usize, TVec> = (0..d1 * d2).map(|t| (t, tgt.apply_basis(g, &tsplit(t)))).collect();
        for s in 0..d1 * d2 {
            // Δ(g) R e_s - R Δ(g) e_s, coordinate by coordinate
            let mut rows: BTreeMap<usize, BTreeMap<usize, RatFunc>> = BTreeMap::new();
            for &t in by_source.get(&s).map(|v| v.as_slice()).unwrap_or(&[]) {
                for (j, c) in &tg[&t] {
                    add_lin(rows.entry(tidx(j)).or_default(), unknown[&(t, s)], c.clone());
                }
            }
            for (j, c) in src.apply_basis(g, &[s / d2, s % d2]) {
                let s2 = sidx(&j);
                for &t in by_source.get(&s2).map(|v| v.as_slice()).unwrap_or(&[]) {
                    add_lin(rows.entry(t).or_default(), unknown[&(t, s2)], -&c);
                }
            }
            for (_, row) in rows {
                if !row.is_empty() {
                    eqs.insert(row);
                }
            }
        }
    }
    let ids: Vec<usize> = (0..keys.len()).collect();
    let sols = eqs.nullspace(&ids);
    match sols.len() {
        0 => return Err(RmatrixError::NoSolution),
        1 => {}
        k => return Err(RmatrixError::NonUniqueSolution(k)),
    }
    let (h1, h2) = (m1.highest(), m2.highest());
    let norm = unknown[&(h2 * d1 + h1, h1 * d2 + h2)];
    let sol = &sols[0];
    let c = sol.get(&norm).cloned().ok_or(RmatrixError::NoSolution)?;
    let ci = c.inv().map_err(|_| RmatrixError::NoSolution)?;
    let entries = sol.iter().map(|(k, x)| (keys[*k], x * &ci)).collect();
    Ok(RMatrix { d1, d2, entries })
}

fn add_lin(row: &mut BTreeMap<usize, RatFunc>, k: usize, x: RatFunc) {
    let e = row.entry(k).or_insert_with(RatFunc::zero);
    *e = &*e + &x;
    if e.is_zero() {
        row.remove(&k);
    }
}

fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    let g = MPoly::gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides the product")
}

/// Monic (in `z`) least common multiple of the `z`-dependent parts of the entry denominators.
pub fn denominator(r: &RMatrix) -> RatFunc {
    let mut l = MPoly::one();
    for x in r.entries.values() {
        let d = x.den();
        if d.degree_in(1) == 0 {
            continue;
        }
        let p = d.div_exact(&d.content_in(1)).expect("content divides");
        l = lcm(&l, &p);
    }
    let lc = l.coeffs_in(1).pop().expect("nonzero");
    RatFunc::new(l, lc).expect("nonzero leading coefficient")
}

#[derive(Debug, Clone, Serialize)]
pub struct YangBaxterReport {
    pub dims: [usize; 3],
    pub columns: usize,
    pub passed: bool,
}

/// `R23(y) R13(zy) R12(z) = R12(z) R13(zy) R23(y)` on `M1 ⊗ M2 ⊗ M3` with
/// `z = z_2/z_1`, `y = z_3/z_2`.
pub fn yang_baxter_check(m1: &AffineRep, m2: &AffineRep, m3: &AffineRep) -> Result<YangBaxterReport> {
    let z = RatFunc::var(1);
    let y = RatFunc::var(2);
    let r12 = solve_normalized_rmatrix(m1, m2)?;
    let r13 = solve_normalized_rmatrix(m1, m3)?.at(&(&z * &y))?;
    let r23 = solve_normalized_rmatrix(m2, m3)?.at(&y)?;
    let t = Tensor::new(vec![(m1, RatFunc::one()), (m2, RatFunc::one()), (m3, RatFunc::one())]);
    let basis = t.basis();
    for b in &basis {
        let v = TVec::from([(b.clone(), RatFunc::one())]);
        let lhs = r23.apply_at(&r13.apply_at(&r12.apply_at(&v, 0), 1), 0);
        let rhs = r12.apply_at(&r13.apply_at(&r23.apply_at(&v, 1), 0), 1);
        if lhs != rhs {
            return Err(RmatrixError::IdentityViolation(format!("Yang-Baxter on basis vector {b:?}")));
        }
    }
    Ok(YangBaxterReport { dims: [m1.dim(), m2.dim(), m3.dim()], columns: basis.len(), passed: true })
}

/// The scalar `c(z)` with `R_{M2,M1}(1/z) R_{M1,M2}(z) = c(z) id`.
pub fn unitarity_scalar(m1: &AffineRep, m2: &AffineRep) -> Result<RatFunc> {
    let r12 = solve_normalized_rmatrix(m1, m2)?;
    let r21 = solve_normalized_rmatrix(m2, m1)?.at(&RatFunc::var_pow(1, -1))?;
    let t = Tensor::new(vec![(m1, RatFunc::one()), (m2, RatFunc::one())]);
    let mut scalar: Option<RatFunc> = None;
    for b in t.basis() {
        let v = TVec::from([(b.clone(), RatFunc::one())]);
        let w = r21.apply_at(&r12.apply_at(&v, 0), 0);
        let c = w.get(&b).cloned().unwrap_or_else(RatFunc::zero);
        if w.len() != 1 || c.is_zero() || scalar.as_ref().is_some_and(|s| *s != c) {
            return Err(RmatrixError::IdentityViolation(format!("composite is not scalar on {b:?}")));
        }
        scalar = Some(c);
    }
    Ok(scalar.expect("nonempty basis"))
}

/// `dim Hom(A, B)` for modules at the same spectral value.
pub fn hom_dimension(a: &AffineRep, b: &AffineRep) -> usize {
    let mut unknown: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for j in 0..a.dim() {
        for i in 0..b.dim() {
            if a.weight(j) == b.weight(i) {
                let k = unknown.len();
                unknown.insert((i, j), k);
            }
        }
    }
    let one = RatFunc::one();
    let mut eqs: Echelon<usize, RatFunc> = Echelon::new();
    for g in all_gens(a.n()) {
        for j in 0..a.dim() {
            // T g u_j - g T u_j
            let mut rows: BTreeMap<usize, BTreeMap<usize, RatFunc>> = BTreeMap::new();
            for (j2, c) in a.apply(g, j, &one) {
                for i in 0..b.dim() {
                    if let Some(&k) = unknown.get(&(i, j2)) {
                        add_lin(rows.entry(i).or_default(), k, c.clone());
                    }
                }
            }
            for i in 0..b.dim() {
                if let Some(&k) = unknown.get(&(i, j)) {
                    for (i2, c) in b.apply(g, i, &one) {
                        add_lin(rows.entry(i2).or_default(), k, -&c);
                    }
                }
            }
            for (_, row) in rows {
                if !row.is_empty() {
                    eqs.insert(row);
                }
            }
        }
    }
    unknown.len() - eqs.rank()
}

/// A polynomial in `z` over `Q(q)`, highest power first: `"z - q^2"`.
pub fn format_z_poly(p: &RatFunc) -> String {
    let coeffs = p.num().coeffs_in(1);
    let den = RatFunc::from_poly(p.den().clone());
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let c = &RatFunc::from_poly(c.clone()) / &den;
        let neg = c.num().leading_coeff() < num_traits::Zero::zero();
        let m = if neg { -&c } else { c };
        let ms = m.to_string();
        let ms = if m.num().num_terms() > 1 && m.den().is_one() { format!("({ms})") } else { ms };
        let var = match k {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{k}"),
        };
        let term = match (k, m.is_one()) {
            (0, _) => ms,
            (_, true) => var,
            _ => format!("{ms}*{var}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
