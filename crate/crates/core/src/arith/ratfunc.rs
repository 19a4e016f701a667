use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::mpoly::VAR_NAMES;
use super::{rat, ArithError, LaurentPoly, MPoly, Monomial, Rational};

/// Reduced fraction of polynomials; the denominator is monic in the grlex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Self { num: MPoly::one(), den: MPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self { num: MPoly::constant(c), den: MPoly::one() }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(k: usize) -> Self {
        Self::from_poly(MPoly::var(k))
    }

    pub fn q() -> Self {
        Self::var(0)
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self { num: p, den: MPoly::one() }
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = MPoly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = Rational::one() / lc;
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_constant() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn involves(&self, k: usize) -> bool {
        self.num.involves(k) || self.den.involves(k)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::var_pow(0, k)
    }

    pub fn var_pow(v: usize, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(MPoly::var_pow(v, k as u32))
        } else {
            Self { num: MPoly::one(), den: MPoly::var_pow(v, (-k) as u32) }
        }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let lo = p.min_degree().unwrap_or(0).min(0);
        let mut num = MPoly::zero();
        for (k, c) in p.terms() {
            num.add_term(Monomial::var(0, (k - lo) as u32), c.clone());
        }
        Self::normalized(num, MPoly::var_pow(0, (-lo) as u32))
    }

    /// Inverse of `from_laurent` when the denominator is a power of `q`.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if self.num.max_var().unwrap_or(0) > 0 || self.den.num_terms() != 1 {
            return None;
        }
        let (m, c) = self.den.leading().unwrap();
        if m.exps().len() > 1 {
            return None;
        }
        let s = m.exp(0) as i64;
        Some(LaurentPoly::from_terms(self.num.terms().map(|(a, x)| (a.exp(0) as i64 - s, x / c))))
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().expect("negative power of zero").pow(-k);
        }
        Self { num: self.num.pow(k as u32), den: self.den.pow(k as u32) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Replaces variable `k` by `images[k]` (variables beyond `images` are kept).
    pub fn substitute(&self, images: &[RatFunc]) -> Self {
        let n = subst_poly(&self.num, images);
        let d = subst_poly(&self.den, images);
        n.checked_div(&d).expect("substitution makes the denominator vanish")
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(self * &o.inv()?)
    }

    pub fn fmt_with(&self, names: &[&str], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct P<'a>(&'a MPoly, &'a [&'a str]);
        impl fmt::Display for P<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(self.1, f)
            }
        }
        if self.den.is_one() {
            return self.num.fmt_with(names, f);
        }
        let wrap = |p: &MPoly| p.num_terms() > 1 || p.constant_value().map(|c| c < Rational::zero()).unwrap_or(false);
        let ns = if wrap(&self.num) { format!("({})", P(&self.num, names)) } else { P(&self.num, names).to_string() };
        let ds = if wrap(&self.den) { format!("({})", P(&self.den, names)) } else { P(&self.den, names).to_string() };
        write!(f, "{ns}/{ds}")
    }
}

fn subst_poly(p: &MPoly, images: &[RatFunc]) -> RatFunc {
    let mut cache: std::collections::HashMap<(usize, u32), RatFunc> = Default::default();
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut t = RatFunc::constant(c.clone());
        for (k, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = images.get(k).cloned().unwrap_or_else(|| RatFunc::var(k));
            let pw = cache.entry((k, e)).or_insert_with(|| base.pow(e as i64)).clone();
            t = &t * &pw;
        }
        acc = &acc + &t;
    }
    acc
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(&VAR_NAMES, f)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(_d: D) -> Result<Self, D::Error> {
        Err(serde::de::Error::custom("rational functions are write-only in reports"))
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::normalized(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_constant() && o.den.is_constant() {
            let a = self.num.scale(&(Rational::one() / self.den.leading_coeff()));
            let b = o.num.scale(&(Rational::one() / o.den.leading_coeff()));
            return RatFunc::from_poly(&a + &b);
        }
        let g = MPoly::gcd(&self.den, &o.den);
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d1) + &(&o.num * &b1);
        let den = &(&b1 * &d1) * &g;
        RatFunc::normalized(num, den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return RatFunc::normalized(&self.num * &o.num, &self.den * &o.den);
        }
        let g1 = MPoly::gcd(&self.num, &o.den);
        let g2 = MPoly::gcd(&o.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = o.den.div_exact(&g1).unwrap();
        let c = o.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        let num = &a * &c;
        let den = &b * &d;
        let lc = den.leading_coeff();
        let inv = Rational::one() / lc;
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o).expect("division by zero rational function")
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, o: RatFunc) -> RatFunc {
                (&self).$f(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

/// `sign * q^exp`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedQPower {
    pub sign: i8,
    pub exp: i64,
}

impl SignedQPower {
    pub fn new(sign: i8, exp: i64) -> Self {
        assert!(sign == 1 || sign == -1);
        Self { sign, exp }
    }

    /// `(-q)^k`
    pub fn minus_q(k: i64) -> Self {
        Self::new(if k.rem_euclid(2) == 0 { 1 } else { -1 }, k)
    }

    pub fn to_ratfunc(self) -> RatFunc {
        RatFunc::q_pow(self.exp).scale(&rat(self.sign as i64))
    }
}

impl Mul for SignedQPower {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.sign * o.sign, self.exp + o.exp)
    }
}

impl Div for SignedQPower {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Self::new(self.sign * o.sign, self.exp - o.exp)
    }
}

impl fmt::Display for SignedQPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "" };
        match self.exp {
            0 => write!(f, "{s}1"),
            1 => write!(f, "{s}q"),
            e => write!(f, "{s}q^{e}"),
        }
    }
}

/// The linear factor in `z` (variable 1) vanishing at `z = c`, with coprime coefficients.
fn linear_factor(c: SignedQPower) -> MPoly {
    let s = rat(c.sign as i64);
    if c.exp >= 0 {
        &MPoly::var(1) - &MPoly::term(s, Monomial::var(0, c.exp as u32))
    } else {
        &MPoly::term(rat(1), Monomial::new(vec![(-c.exp) as u32, 1])) - &MPoly::constant(s)
    }
}

fn multiplicity(p: &MPoly, f: &MPoly) -> i64 {
    let mut p = p.clone();
    let mut k = 0;
    while !p.is_zero() {
        match p.div_exact(f) {
            Some(r) => {
                p = r;
                k += 1;
            }
            None => break,
        }
    }
    k
}

/// Order of zero of `f(z)` at `z = c` (negative for poles).
pub fn order_of_zero(f: &RatFunc, c: SignedQPower) -> Result<i64, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroFunction);
    }
    let lf = linear_factor(c);
    Ok(multiplicity(&f.num, &lf) - multiplicity(&f.den, &lf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RatFunc {
        RatFunc::var(1)
    }

    #[test]
    fn arithmetic_reduces() {
        let q = RatFunc::q();
        let a = &(&z() - &q) / &(&z() + &RatFunc::one());
        let b = &(&z() + &RatFunc::one()) / &(&z() - &q);
        assert!((&a * &b).is_one());
        let s = &a - &a;
        assert!(s.is_zero());
        let x = &RatFunc::one() / &q;
        assert_eq!((&x + &x).to_string(), "2/q");
    }

    #[test]
    fn orders() {
        let q2 = RatFunc::q_pow(2);
        let q4 = RatFunc::q_pow(4);
        let f = &(&(&z() - &q2) * &(&z() - &q2)) * &(&z() - &q4);
        assert_eq!(order_of_zero(&f, SignedQPower::new(1, 2)), Ok(2));
        assert_eq!(order_of_zero(&f, SignedQPower::new(1, 4)), Ok(1));
        assert_eq!(order_of_zero(&f, SignedQPower::new(-1, 2)), Ok(0));
        let g = &RatFunc::one() / &(&z() - &RatFunc::q_pow(-3));
        assert_eq!(order_of_zero(&g, SignedQPower::new(1, -3)), Ok(-1));
        assert_eq!(order_of_zero(&RatFunc::zero(), SignedQPower::new(1, 0)), Err(ArithError::ZeroFunction));
    }

    #[test]
    fn laurent_roundtrip() {
        let p = LaurentPoly::from_terms([(-2, rat(1)), (3, rat(-2))]);
        assert_eq!(RatFunc::from_laurent(&p).to_laurent(), Some(p));
    }

    #[test]
    fn substitution() {
        // z ↦ y/x
        let f = &z() - &RatFunc::q_pow(2);
        let img = vec![RatFunc::q(), &RatFunc::var(2) / &RatFunc::var(1)];
        let g = f.substitute(&img);
        let expect = &(&RatFunc::var(2) / &RatFunc::var(1)) - &RatFunc::q_pow(2);
        assert_eq!(g, expect);
    }
}
