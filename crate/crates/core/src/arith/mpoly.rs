use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat, Rational};

/// Exponent vector with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    pub fn var(k: usize, p: u32) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = p;
        Self::new(e)
    }

    pub fn exp(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|k| self.exp(k) + o.exp(k)).collect())
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (k, p) in o.0.iter().enumerate() {
            if e[k] < *p {
                return None;
            }
            e[k] -= p;
        }
        Some(Self::new(e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.total().cmp(&o.total()).then_with(|| {
            let n = self.0.len().max(o.0.len());
            for k in (0..n).rev() {
                match self.exp(k).cmp(&o.exp(k)) {
                    Ordering::Equal => continue,
                    c => return c,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial over `Q` in variables `0, 1, 2, …` (named `q, z, y, w` when printed).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

pub(crate) const VAR_NAMES: [&str; 4] = ["q", "z", "y", "w"];

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(k: usize) -> Self {
        Self::term(rat(1), Monomial::var(k, 1))
    }

    pub fn var_pow(k: usize, p: u32) -> Self {
        Self::term(rat(1), Monomial::var(k, p))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Highest variable index occurring, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.0.len().checked_sub(1)).max()
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(k)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(k)).min().unwrap_or(0)
    }

    pub fn involves(&self, k: usize) -> bool {
        self.terms.keys().any(|m| m.exp(k) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self { terms: self.terms.iter().map(|(a, x)| (a.mul(m), x.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = &r * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Makes the grlex-leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&(Rational::one() / c)),
        }
    }

    /// Coefficients as a polynomial in variable `k`: entry `j` multiplies `x_k^j`.
    pub fn coeffs_in(&self, k: usize) -> Vec<MPoly> {
        let d = self.degree_in(k) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let j = m.exp(k) as usize;
            let mut e = m.0.clone();
            if k < e.len() {
                e[k] = 0;
            }
            out[j].add_term(Monomial::new(e), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(k: usize, coeffs: &[MPoly]) -> Self {
        let mut r = MPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(k, j as u32);
            for (a, x) in &c.terms {
                r.add_term(a.mul(&m), x.clone());
            }
        }
        r
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&(Rational::one() / c)));
        }
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let t = m.div(&lm)?;
            let coef = c / &lc;
            for (a, x) in &d.terms {
                r.add_term(a.mul(&t), -(x * &coef));
            }
            q.add_term(t, coef);
        }
        Some(q)
    }

    /// Pseudo-remainder of `self` by `b` with respect to variable `k`.
    fn pseudo_rem(&self, b: &MPoly, k: usize) -> MPoly {
        let db = b.degree_in(k);
        let bc = b.coeffs_in(k);
        let lcb = bc[db as usize].clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(k) >= db {
            let dr = r.degree_in(k);
            let lcr = r.coeffs_in(k)[dr as usize].clone();
            let shift = Monomial::var(k, dr - db);
            r = &(&r * &lcb) - &(&lcr * b).mul_monomial(&shift);
        }
        r
    }

    /// Content with respect to variable `k`: gcd of the coefficients in the remaining variables.
    pub fn content_in(&self, k: usize) -> MPoly {
        let mut g = MPoly::zero();
        for c in self.coeffs_in(k) {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c.monic() } else { MPoly::gcd(&g, &c) };
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Greatest common divisor, normalized to be monic (zero only if both inputs are zero).
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return MPoly::one();
        }
        if a == b {
            return a.monic();
        }
        let k = match (a.max_var(), b.max_var()) {
            (Some(x), Some(y)) => x.max(y),
            _ => return MPoly::one(),
        };
        if !a.involves(k) {
            return MPoly::gcd(a, &b.content_in(k));
        }
        if !b.involves(k) {
            return MPoly::gcd(&a.content_in(k), b);
        }
        let ca = a.content_in(k);
        let cb = b.content_in(k);
        let c = MPoly::gcd(&ca, &cb);
        let mut r0 = a.div_exact(&ca).expect("content divides");
        let mut r1 = b.div_exact(&cb).expect("content divides");
        if r0.degree_in(k) < r1.degree_in(k) {
            std::mem::swap(&mut r0, &mut r1);
        }
        let g = loop {
            let r = r0.pseudo_rem(&r1, k);
            if r.is_zero() {
                break r1;
            }
            if r.degree_in(k) == 0 {
                break MPoly::one();
            }
            let pr = r.div_exact(&r.content_in(k)).expect("content divides").monic();
            r0 = r1;
            r1 = pr;
        };
        let g = g.div_exact(&g.content_in(k)).expect("content divides");
        (&c * &g).monic()
    }

    /// Evaluates with `f` applied to coefficients and variable powers.
    pub fn eval_with<T, F>(&self, zero: T, mut term: F) -> T
    where
        T: std::ops::Add<Output = T>,
        F: FnMut(&Rational, &Monomial) -> T,
    {
        let mut acc = zero;
        for (m, c) in &self.terms {
            acc = acc + term(c, m);
        }
        acc
    }

    /// Multiplies through by the lcm of coefficient denominators.
    pub fn clear_denominators(&self) -> (MPoly, Rational) {
        use num_integer::Integer;
        let mut l = num_bigint::BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let f = Rational::from_integer(l);
        (self.scale(&f), f)
    }

    pub fn fmt_with(&self, names: &[&str], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
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
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                parts.push(a.to_string());
            }
            for (k, p) in m.0.iter().enumerate().rev() {
                let name = names.get(k).copied().map(String::from).unwrap_or_else(|| format!("v{k}"));
                match p {
                    0 => {}
                    1 => parts.push(name),
                    p => parts.push(format!("{name}^{p}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(&VAR_NAMES, f)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let (mut r, s) = if self.terms.len() >= o.terms.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (m, c) in &s.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a.mul(b), x * y);
            }
        }
        r
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, o: MPoly) -> MPoly {
        &self + &o
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, o: MPoly) -> MPoly {
        &self - &o
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, o: MPoly) -> MPoly {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MPoly {
        MPoly::var(0)
    }
    fn z() -> MPoly {
        MPoly::var(1)
    }
    fn c(n: i64) -> MPoly {
        MPoly::constant(rat(n))
    }

    #[test]
    fn gcd_bivariate() {
        let f1 = &z() - &q().pow(2);
        let f2 = &z() + &c(1);
        let f3 = &(&q() * &z()) - &c(3);
        let a = &(&f1 * &f1) * &f2;
        let b = &(&f1 * &f3) * &q();
        let g = MPoly::gcd(&a, &b);
        assert_eq!(g, f1.monic());
        assert!(MPoly::gcd(&f2, &f3).is_one());
    }

    #[test]
    fn exact_division() {
        let f = &(&z() - &q()) * &(&z() + &q().pow(3));
        assert_eq!(f.div_exact(&(&z() - &q())), Some(&z() + &q().pow(3)));
        assert_eq!(f.div_exact(&(&z() - &c(2))), None);
    }

    #[test]
    fn order_is_graded() {
        let a = Monomial::new(vec![3]);
        let b = Monomial::new(vec![0, 1]);
        let d = Monomial::new(vec![1, 1]);
        assert!(a > b);
        assert!(d > b);
        assert!(Monomial::new(vec![1, 0, 0]) == Monomial::var(0, 1));
    }
}
