use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, rat, Rational};
use crate::cartan::CartanDatum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QFamilyError {
    #[error("Q_{{{i},{j}}} has a term u^{p} v^{q} outside the allowed degree set")]
    OutOfDegree { i: usize, j: usize, p: u32, q: u32 },
    #[error("Q_{{{i},{j}}}(u,v) and Q_{{{j},{i}}}(v,u) differ")]
    NotSymmetric { i: usize, j: usize },
    #[error("leading coefficient t_{{{i},{j};{p},0}} vanishes")]
    Degenerate { i: usize, j: usize, p: i64 },
    #[error("Q_{{{0},{0}}} must be zero")]
    NonzeroDiagonal(usize),
    #[error("vertex index out of range")]
    BadIndex,
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
}

/// Polynomial in two variables `u, v`: map `(p, q) ↦ t` for `t u^p v^q`.
pub type UvPoly = BTreeMap<(u32, u32), Rational>;

/// The polynomials `Q_ij(u, v)` defining the quadratic relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFamily {
    polys: BTreeMap<(usize, usize), UvPoly>,
}

/// One term `t u^p v^q` of `Q_ij` in structured config.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QTerm {
    pub i: usize,
    pub j: usize,
    pub p: u32,
    pub q: u32,
    pub t: String,
}

impl QFamily {
    /// Validates and stores; entries for `(j, i)` are derived from `(i, j)` when missing.
    pub fn new(datum: &CartanDatum, given: BTreeMap<(usize, usize), UvPoly>) -> Result<Self, QFamilyError> {
        let n = datum.rank();
        let mut full: BTreeMap<(usize, usize), UvPoly> = BTreeMap::new();
        for ((i, j), p) in &given {
            if *i >= n || *j >= n {
                return Err(QFamilyError::BadIndex);
            }
            if i == j {
                if p.values().any(|c| !c.is_zero()) {
                    return Err(QFamilyError::NonzeroDiagonal(*i));
                }
                continue;
            }
            let p: UvPoly = p.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
            full.insert((*i, *j), p.clone());
            if !given.contains_key(&(*j, *i)) {
                full.insert((*j, *i), p.iter().map(|((a, b), c)| ((*b, *a), c.clone())).collect());
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j || full.contains_key(&(i, j)) {
                    continue;
                }
                full.insert((i, j), default_poly(datum, i, j));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let p = &full[&(i, j)];
                let ii = datum.form(i, i);
                let jj = datum.form(j, j);
                let target = -2 * datum.form(i, j);
                for (a, b) in p.keys() {
                    if ii * (*a as i64) + jj * (*b as i64) != target {
                        return Err(QFamilyError::OutOfDegree { i, j, p: *a, q: *b });
                    }
                }
                let lead = -datum.a(i, j);
                if p.get(&(lead as u32, 0)).map(|c| c.is_zero()).unwrap_or(true) {
                    return Err(QFamilyError::Degenerate { i, j, p: lead });
                }
                let swapped: UvPoly = full[&(j, i)].iter().map(|((a, b), c)| ((*b, *a), c.clone())).collect();
                if *p != swapped {
                    return Err(QFamilyError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { polys: full })
    }

    /// `Q_ij(u, v) = u^{-a_ij} + v^{-a_ji}` for `a_ij ≠ 0`, and `1` otherwise.
    pub fn standard(datum: &CartanDatum) -> Self {
        Self::new(datum, BTreeMap::new()).expect("standard family is valid")
    }

    /// `Q_ij(u, v) = (u - v)^{d_ij} (v - u)^{d_ji}` for a quiver with `d_ij` arrows `i → j`.
    pub fn from_quiver(datum: &CartanDatum, arrows: &[Vec<u32>]) -> Result<Self, QFamilyError> {
        let n = datum.rank();
        let mut given = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let uv = uv_linear(1, -1);
                let vu = uv_linear(-1, 1);
                let p = uv_mul(&uv_pow(&uv, arrows[i][j]), &uv_pow(&vu, arrows[j][i]));
                given.insert((i, j), p);
            }
        }
        Self::new(datum, given)
    }

    pub fn from_terms(datum: &CartanDatum, terms: &[QTerm]) -> Result<Self, QFamilyError> {
        let mut given: BTreeMap<(usize, usize), UvPoly> = BTreeMap::new();
        for t in terms {
            let c = parse_rational(&t.t).ok_or_else(|| QFamilyError::BadCoefficient(t.t.clone()))?;
            *given.entry((t.i, t.j)).or_default().entry((t.p, t.q)).or_insert_with(Rational::zero) += c;
        }
        Self::new(datum, given)
    }

    /// `Q_ij`; zero when `i == j`.
    pub fn poly(&self, i: usize, j: usize) -> UvPoly {
        if i == j {
            return UvPoly::new();
        }
        self.polys[&(i, j)].clone()
    }

    /// Stable text form, used for hashing configurations.
    pub fn canonical_string(&self) -> String {
        let mut out = String::new();
        for ((i, j), p) in &self.polys {
            for ((a, b), c) in p {
                out.push_str(&format!("{i},{j}:{a},{b}={c};"));
            }
        }
        out
    }
}

fn default_poly(datum: &CartanDatum, i: usize, j: usize) -> UvPoly {
    let mut p = UvPoly::new();
    if datum.a(i, j) == 0 {
        p.insert((0, 0), rat(1));
    } else {
        p.insert(((-datum.a(i, j)) as u32, 0), rat(1));
        *p.entry((0, (-datum.a(j, i)) as u32)).or_insert_with(Rational::zero) += rat(1);
    }
    p
}

fn uv_linear(a: i64, b: i64) -> UvPoly {
    UvPoly::from([((1, 0), rat(a)), ((0, 1), rat(b))])
}

fn uv_mul(x: &UvPoly, y: &UvPoly) -> UvPoly {
    let mut r = UvPoly::new();
    for ((a, b), c) in x {
        for ((d, e), f) in y {
            *r.entry((a + d, b + e)).or_insert_with(Rational::zero) += c * f;
        }
    }
    r.retain(|_, c| !c.is_zero());
    r
}

fn uv_pow(x: &UvPoly, n: u32) -> UvPoly {
    (0..n).fold(UvPoly::from([((0, 0), rat(1))]), |acc, _| uv_mul(&acc, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_family_for_a2() {
        let c = CartanDatum::type_a(2);
        let f = QFamily::from_quiver(&c, &[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(f.poly(0, 1), UvPoly::from([((1, 0), rat(1)), ((0, 1), rat(-1))]));
        assert_eq!(f.poly(1, 0), UvPoly::from([((1, 0), rat(-1)), ((0, 1), rat(1))]));
        assert!(f.poly(0, 0).is_empty());
    }

    #[test]
    fn rejects_invalid_families() {
        let c = CartanDatum::type_a(2);
        let bad = BTreeMap::from([((0, 1), UvPoly::from([((2, 0), rat(1))]))]);
        assert!(matches!(QFamily::new(&c, bad), Err(QFamilyError::OutOfDegree { .. })));
        let bad = BTreeMap::from([((0, 1), UvPoly::from([((0, 1), rat(1))]))]);
        assert!(matches!(QFamily::new(&c, bad), Err(QFamilyError::Degenerate { .. })));
        let bad = BTreeMap::from([
            ((0, 1), UvPoly::from([((1, 0), rat(1)), ((0, 1), rat(1))])),
            ((1, 0), UvPoly::from([((1, 0), rat(1)), ((0, 1), rat(2))])),
        ]);
        assert!(matches!(QFamily::new(&c, bad), Err(QFamilyError::NotSymmetric { .. })));
    }

    #[test]
    fn b2_standard_family_is_valid() {
        let c = CartanDatum::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let f = QFamily::standard(&c);
        assert_eq!(f.poly(0, 1), UvPoly::from([((2, 0), rat(1)), ((0, 1), rat(1))]));
    }
}
