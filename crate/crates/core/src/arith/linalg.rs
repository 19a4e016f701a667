use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::Bound::{Excluded, Unbounded};

use num_traits::{One, Zero};

use super::{MPoly, RatFunc, Rational};

/// Exact field operations needed by elimination.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

pub type SparseVec<K, F> = BTreeMap<K, F>;

/// Row echelon form of a growing set of sparse vectors.
///
/// Each stored row has coefficient 1 at its pivot, which is its smallest key.
/// Reducing a vector removes every pivot key, so the reduced vector is the
/// canonical representative modulo the span in the complement spanned by the
/// non-pivot keys.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone, F: Field> {
    rows: BTreeMap<K, SparseVec<K, F>>,
}

impl<K: Ord + Clone, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone + Debug, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&K, &SparseVec<K, F>)> {
        self.rows.iter()
    }

    pub fn reduce(&self, mut v: SparseVec<K, F>) -> SparseVec<K, F> {
        if self.rows.is_empty() {
            return v;
        }
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.rows.contains_key(k)).cloned(),
                Some(c) => v.range((Excluded(c), Unbounded)).map(|(k, _)| k).find(|k| self.rows.contains_key(k)).cloned(),
            };
            let Some(p) = next else { break };
            let c = v.remove(&p).unwrap().neg();
            let row = &self.rows[&p];
            for (k, x) in row.range((Excluded(&p), Unbounded)) {
                let t = c.mul(x);
                match v.get_mut(k) {
                    Some(e) => {
                        *e = e.add(&t);
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                    None => {
                        v.insert(k.clone(), t);
                    }
                }
            }
            cursor = Some(p);
        }
        v
    }

    pub fn contains(&self, v: SparseVec<K, F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns the new pivot if the rank grew.
    pub fn insert(&mut self, v: SparseVec<K, F>) -> Option<K> {
        let v = self.reduce(v);
        let (p, c) = v.iter().next().map(|(k, c)| (k.clone(), c.clone()))?;
        let inv = F::one().div(&c);
        let row: SparseVec<K, F> = v.into_iter().map(|(k, x)| (k, x.mul(&inv))).collect();
        self.rows.insert(p.clone(), row);
        Some(p)
    }

    /// Basis of `{x : Σ_k x_k * column_k = 0}` when the stored rows are read as
    /// linear equations in the unknowns `keys`.
    pub fn nullspace(&self, keys: &[K]) -> Vec<SparseVec<K, F>> {
        let free: Vec<&K> = keys.iter().filter(|k| !self.rows.contains_key(k)).collect();
        let mut out = Vec::new();
        for f in free {
            let mut x: SparseVec<K, F> = BTreeMap::new();
            x.insert(f.clone(), F::one());
            for (p, row) in self.rows.iter().rev() {
                let mut s = F::zero();
                for (k, c) in row.range((Excluded(p), Unbounded)) {
                    if let Some(v) = x.get(k) {
                        s = s.sub(&c.mul(v));
                    }
                }
                if !s.is_zero() {
                    x.insert(p.clone(), s);
                }
            }
            out.push(x);
        }
        out
    }

    /// Fully reduced rows: every pivot key occurs in exactly one row.
    pub fn reduced_rows(&self) -> BTreeMap<K, SparseVec<K, F>> {
        let mut out: BTreeMap<K, SparseVec<K, F>> = BTreeMap::new();
        for (p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            let keys: Vec<K> = r.keys().filter(|k| *k != p && out.contains_key(k)).cloned().collect();
            for k in keys {
                if let Some(c) = r.remove(&k) {
                    let c = c.neg();
                    let other = &out[&k];
                    for (kk, x) in other {
                        if kk == &k {
                            continue;
                        }
                        let t = c.mul(x);
                        match r.get_mut(kk) {
                            Some(e) => {
                                *e = e.add(&t);
                                if e.is_zero() {
                                    r.remove(kk);
                                }
                            }
                            None => {
                                r.insert(kk.clone(), t);
                            }
                        }
                    }
                }
            }
            out.insert(p.clone(), r);
        }
        out
    }
}

/// Rank of a polynomial matrix by fraction-free (Bareiss) elimination.
pub fn fraction_free_rank(mut m: Vec<Vec<MPoly>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = MPoly::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = MPoly::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}
