use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ArithError, LaurentPoly, Rational};

/// Laurent series in `q` known exactly up to and including `q^cutoff`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    pub cutoff: i64,
    poly: LaurentPoly,
}

impl TruncatedSeries {
    pub fn zero(cutoff: i64) -> Self {
        Self { cutoff, poly: LaurentPoly::zero() }
    }

    pub fn from_poly(p: &LaurentPoly, cutoff: i64) -> Self {
        Self { cutoff, poly: LaurentPoly::from_terms(p.terms().filter(|(k, _)| *k <= cutoff).map(|(k, c)| (k, c.clone()))) }
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn coeff(&self, k: i64) -> Rational {
        assert!(k <= self.cutoff, "coefficient beyond cutoff");
        self.poly.coeff(k)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let c = self.cutoff.min(o.cutoff);
        Self::from_poly(&(&self.poly + &o.poly), c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let c = self.cutoff.min(o.cutoff);
        Self::from_poly(&(&self.poly - &o.poly), c)
    }

    /// Product; the result is exact up to the smaller of the two propagated cutoffs.
    pub fn mul(&self, o: &Self) -> Self {
        let lo_a = self.poly.min_degree();
        let lo_b = o.poly.min_degree();
        let c = match (lo_a, lo_b) {
            (Some(a), Some(b)) => (self.cutoff + b).min(o.cutoff + a),
            (None, Some(b)) => self.cutoff + b,
            (Some(a), None) => o.cutoff + a,
            (None, None) => self.cutoff.min(o.cutoff),
        };
        let mut out = BTreeMap::<i64, Rational>::new();
        for (a, x) in self.poly.terms() {
            for (b, y) in o.poly.terms() {
                if a + b <= c {
                    *out.entry(a + b).or_insert_with(Rational::zero) += x * y;
                }
            }
        }
        Self { cutoff: c, poly: LaurentPoly::from_terms(out) }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        self.mul(&Self::from_poly(p, i64::MAX / 4))
    }

    pub fn shift(&self, k: i64) -> Self {
        Self { cutoff: self.cutoff + k, poly: self.poly.shift(k) }
    }

    pub fn truncate(&self, cutoff: i64) -> Self {
        Self::from_poly(&self.poly, cutoff.min(self.cutoff))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", self.poly, self.cutoff + 1)
    }
}

/// Expansion of `1/p` in increasing powers of `q`, exact through `q^cutoff`.
pub fn series_inverse(p: &LaurentPoly, cutoff: i64) -> Result<TruncatedSeries, ArithError> {
    let lo = p.min_degree().ok_or(ArithError::NotInvertible)?;
    let c0 = p.coeff(lo);
    let start = -lo;
    let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
    // p = q^lo (c0 + Σ_{j>0} c_j q^j); solve coefficient by coefficient.
    let mut k = start;
    while k <= cutoff {
        let mut s = if k == start { Rational::from_integer(1.into()) } else { Rational::zero() };
        for (e, c) in p.terms() {
            let j = e - lo;
            if j == 0 {
                continue;
            }
            if let Some(b) = out.get(&(k - j)) {
                s -= c * b;
            }
        }
        let v = s / &c0;
        if !v.is_zero() {
            out.insert(k, v);
        }
        k += 1;
    }
    Ok(TruncatedSeries::from_poly(&LaurentPoly::from_terms(out), cutoff))
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    #[test]
    fn inverse_of_square() {
        let one_minus = LaurentPoly::from_terms([(0, rat(1)), (2, rat(-1))]);
        let p = &one_minus * &one_minus;
        let s = series_inverse(&p, 4).unwrap();
        assert_eq!(*s.poly(), LaurentPoly::from_terms([(0, rat(1)), (2, rat(2)), (4, rat(3))]));
    }

    #[test]
    fn inverse_times_self_is_one() {
        let p = LaurentPoly::from_terms([(-1, rat(2)), (0, rat(1)), (3, rat(-5))]);
        let s = series_inverse(&p, 10).unwrap();
        let prod = s.mul_poly(&p);
        assert_eq!(prod.truncate(10).poly(), &LaurentPoly::one());
    }

    #[test]
    fn zero_not_invertible() {
        assert_eq!(series_inverse(&LaurentPoly::zero(), 3), Err(ArithError::NotInvertible));
    }
}
