use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, rat, Rational};

/// Finite sum `Σ c_k q^k` with exact rational coefficients; `k` may be negative.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(rat(1), 0)
    }

    /// `q`
    pub fn q() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn q_pow(k: i64) -> Self {
        Self::monomial(rat(1), k)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Bar involution `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Substitutes `q ↦ q^d`.
    pub fn dilate(&self, d: i64) -> Self {
        assert!(d != 0);
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * d, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Returns `(c, k)` if this is the single monomial `c q^k`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *k))
        } else {
            None
        }
    }

    /// Finds `k` with `self == q^k * other`, if any.
    pub fn shift_to(&self, other: &Self) -> Option<i64> {
        if self.is_zero() || other.is_zero() {
            return if self.is_zero() && other.is_zero() { Some(0) } else { None };
        }
        let k = self.min_degree()? - other.min_degree()?;
        if other.shift(k) == *self {
            Some(k)
        } else {
            None
        }
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }
}

pub fn quantum_integer(n: i64, d: u32) -> LaurentPoly {
    if n < 0 {
        return -quantum_integer(-n, d);
    }
    let d = d as i64;
    LaurentPoly::from_terms((0..n).map(|k| (d * (n - 1 - 2 * k), rat(1))))
}

pub fn quantum_factorial(n: u32, d: u32) -> LaurentPoly {
    (1..=n as i64).fold(LaurentPoly::one(), |acc, k| &acc * &quantum_integer(k, d))
}

/// Gaussian binomial `[m choose k]_{q^d}` for integers `m` (possibly negative) and `k ≥ 0`.
pub fn quantum_binomial(m: i64, k: u32, d: u32) -> LaurentPoly {
    if m >= 0 && (k as i64) > m {
        return LaurentPoly::zero();
    }
    // Pascal-type recursion avoids division.
    if k == 0 {
        return LaurentPoly::one();
    }
    if m >= 0 {
        let mut row: Vec<LaurentPoly> = vec![LaurentPoly::one()];
        for mm in 1..=m {
            let mut next = vec![LaurentPoly::one(); (mm as usize) + 1];
            for j in 1..mm as usize {
                // [mm, j] = q^{-dj}[mm-1, j] + q^{d(mm-j)}[mm-1, j-1]
                next[j] = row[j].shift(-(d as i64) * j as i64) + row[j - 1].shift(d as i64 * (mm - j as i64));
            }
            row = next;
        }
        return row[k as usize].clone();
    }
    // [m, k] = (-1)^k [k - m - 1, k] for negative m.
    let b = quantum_binomial(k as i64 - m - 1, k, d);
    if k % 2 == 1 {
        -b
    } else {
        b
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            match (*k, unit) {
                (0, _) => write!(f, "{}", a)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", a)?,
                (k, true) => write!(f, "q^{}", k)?,
                (k, false) => write!(f, "{}*q^{}", a, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, String)> = self.terms.iter().map(|(k, c)| (*k, c.to_string())).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (k, c) in v {
            let c = parse_rational(&c).ok_or_else(|| serde::de::Error::custom(format!("bad rational {c}")))?;
            p.add_term(k, c);
        }
        Ok(p)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, o: LaurentPoly) -> LaurentPoly {
        self += &o;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        for (k, c) in &o.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, o: &LaurentPoly) {
        for (k, c) in &o.terms {
            self.add_term(*k, -c.clone());
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, o: LaurentPoly) -> LaurentPoly {
        self -= &o;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a + b, x * y);
            }
        }
        r
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(it: I) -> Self {
        it.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integer_examples() {
        let q3 = quantum_integer(3, 2);
        assert_eq!(q3, LaurentPoly::from_terms([(4, rat(1)), (0, rat(1)), (-4, rat(1))]));
        assert!(quantum_integer(0, 1).is_zero());
        assert_eq!(quantum_integer(-2, 1), -quantum_integer(2, 1));
    }

    #[test]
    fn binomial_matches_factorials() {
        for m in 0..6i64 {
            for k in 0..=m as u32 {
                let lhs = &quantum_binomial(m, k, 1) * &(&quantum_factorial(k, 1) * &quantum_factorial((m as u32) - k, 1));
                assert_eq!(lhs, quantum_factorial(m as u32, 1));
            }
        }
        assert_eq!(quantum_binomial(2, 2, 1), LaurentPoly::one());
        assert_eq!(quantum_binomial(-1, 1, 1), -LaurentPoly::one());
    }

    #[test]
    fn display_and_serde() {
        let p = LaurentPoly::from_terms([(2, rat(1)), (-1, rat(-3))]);
        assert_eq!(p.to_string(), "q^2 - 3*q^-1");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-1,"-3"],[2,"1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
