//! Symmetrizable generalized Cartan matrices, root lattice, Weyl group action
//! and positive roots in finite type.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat, Rational};

/// Coefficients `β = Σ β_i α_i`.
pub type RootVector = Vec<i64>;
/// Fundamental-weight coordinates `λ_i = ⟨h_i, λ⟩`.
pub type Weight = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CartanError {
    #[error("matrix is empty or not square")]
    NotSquare,
    #[error("diagonal entry a[{0}][{0}] is not 2")]
    BadDiagonal(usize),
    #[error("off-diagonal entry a[{0}][{1}] is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("a[{0}][{1}] and a[{1}][{0}] are not simultaneously zero")]
    ZeroPattern(usize, usize),
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("symmetrizer does not symmetrize the matrix")]
    BadSymmetrizer,
    #[error("Cartan datum is not of finite type")]
    NotFiniteType,
    #[error("unknown Cartan type {0:?}")]
    UnknownType(String),
    #[error("config error: {0}")]
    Config(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanDatum {
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
}

/// Structured-text form: either `type = "A3"` or an explicit `matrix`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CartanConfig {
    #[serde(rename = "type")]
    pub kind: Option<String>,
    pub matrix: Option<Vec<Vec<i64>>>,
    pub symmetrizer: Option<Vec<i64>>,
}

impl CartanConfig {
    pub fn build(&self) -> Result<CartanDatum, CartanError> {
        let datum = match (&self.kind, &self.matrix) {
            (Some(t), None) => CartanDatum::of_type(t)?,
            (None, Some(m)) => CartanDatum::new(m.clone())?,
            _ => return Err(CartanError::Config("give exactly one of `type` or `matrix`".into())),
        };
        match &self.symmetrizer {
            Some(d) => CartanDatum::with_symmetrizer(datum.a, d.clone()),
            None => Ok(datum),
        }
    }
}

impl CartanDatum {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        validate(&a)?;
        let d = symmetrizer(&a)?;
        Ok(Self { a, d })
    }

    pub fn with_symmetrizer(a: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self, CartanError> {
        validate(&a)?;
        let n = a.len();
        if d.len() != n || d.iter().any(|x| *x <= 0) {
            return Err(CartanError::BadSymmetrizer);
        }
        for i in 0..n {
            for j in 0..n {
                if d[i] * a[i][j] != d[j] * a[j][i] {
                    return Err(CartanError::BadSymmetrizer);
                }
            }
        }
        Ok(Self { a, d })
    }

    pub fn from_toml_str(s: &str) -> Result<Self, CartanError> {
        let c: CartanConfig = toml::from_str(s).map_err(|e| CartanError::Config(e.to_string()))?;
        c.build()
    }

    /// `A<n>` or `D<n>`, e.g. `"A2"`, `"D4"`.
    pub fn of_type(t: &str) -> Result<Self, CartanError> {
        let t = t.trim();
        let unknown = || CartanError::UnknownType(t.to_string());
        let (head, rest) = t.split_at(1);
        let n: usize = rest.trim_start_matches('_').parse().map_err(|_| unknown())?;
        match head {
            "A" | "a" if n >= 1 => Ok(Self::type_a(n)),
            "D" | "d" if n >= 4 => Ok(Self::type_d(n)),
            _ => Err(unknown()),
        }
    }

    pub fn type_a(n: usize) -> Self {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        Self { a, d: vec![1; n] }
    }

    /// Vertices `0..n-3` form a path; `n-2` and `n-1` both attach to `n-3`.
    pub fn type_d(n: usize) -> Self {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        for i in 0..n - 2 {
            if i + 1 < n - 1 {
                link(i, i + 1);
            }
        }
        link(n - 3, n - 1);
        Self { a, d: vec![1; n] }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn symmetrizer_values(&self) -> &[i64] {
        &self.d
    }

    /// `(α_i, α_j) = d_i a_ij`
    pub fn form(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.a[i][j]
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.a[i][j] == self.a[j][i]))
    }

    pub fn pair_roots(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank() {
                s += x[i] * y[j] * self.form(i, j);
            }
        }
        s
    }

    /// `⟨h_i, β⟩ = Σ_j a_ij β_j`
    pub fn coroot_pairing(&self, i: usize, beta: &[i64]) -> i64 {
        (0..self.rank()).map(|j| self.a[i][j] * beta[j]).sum()
    }

    /// Weight `β` in fundamental coordinates.
    pub fn root_to_weight(&self, beta: &[i64]) -> Weight {
        (0..self.rank()).map(|i| self.coroot_pairing(i, beta)).collect()
    }

    /// `(Λ, α_i) = d_i ⟨h_i, Λ⟩`, extended linearly to root vectors.
    pub fn pair_weight_root(&self, lambda: &[i64], beta: &[i64]) -> i64 {
        (0..self.rank()).map(|i| self.d[i] * lambda[i] * beta[i]).sum()
    }

    pub fn simple_root(&self, i: usize) -> RootVector {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn height(beta: &[i64]) -> i64 {
        beta.iter().sum()
    }

    /// `s_i(v) = v - ⟨h_i, v⟩ α_i`
    pub fn reflect(&self, i: usize, v: &[i64]) -> RootVector {
        let mut w = v.to_vec();
        w[i] -= self.coroot_pairing(i, v);
        w
    }

    /// Acts by `word[0] ∘ word[1] ∘ … `, i.e. the rightmost letter first.
    pub fn weyl_act(&self, word: &[usize], v: &[i64]) -> RootVector {
        word.iter().rev().fold(v.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    /// Exact test of positive-definiteness of `(d_i a_ij)`.
    pub fn is_finite_type(&self) -> bool {
        let n = self.rank();
        let mut m: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| rat(self.form(i, j))).collect()).collect();
        for k in 0..n {
            if !m[k][k].is_positive() {
                return false;
            }
            for i in k + 1..n {
                let f = &m[i][k] / &m[k][k];
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let t = &f * &m[k][j];
                    m[i][j] -= t;
                }
            }
        }
        true
    }

    /// Positive roots ordered by height, then by decreasing lexicographic order
    /// (so simple roots come in index order).
    pub fn positive_roots(&self) -> Result<Vec<RootVector>, CartanError> {
        if !self.is_finite_type() {
            return Err(CartanError::NotFiniteType);
        }
        let n = self.rank();
        let mut seen: BTreeSet<RootVector> = BTreeSet::new();
        let mut queue: VecDeque<RootVector> = VecDeque::new();
        for i in 0..n {
            let v = self.simple_root(i);
            seen.insert(v.clone());
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                let w = self.reflect(i, &v);
                if w.iter().all(|x| *x >= 0) && !seen.contains(&w) {
                    seen.insert(w.clone());
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<RootVector> = seen.into_iter().collect();
        out.sort_by_key(|v| (Self::height(v), std::cmp::Reverse(v.clone())));
        Ok(out)
    }

    pub fn highest_root(&self) -> Result<RootVector, CartanError> {
        Ok(self.positive_roots()?.pop().expect("nonempty"))
    }

    /// `2 |Φ⁺| / rank`, which is the Coxeter number for irreducible finite types.
    pub fn coxeter_number(&self) -> Result<i64, CartanError> {
        Ok(2 * self.positive_roots()?.len() as i64 / self.rank() as i64)
    }

    /// Neighbours in the Dynkin diagram.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&j| j != i && self.a[i][j] != 0).collect()
    }
}

fn validate(a: &[Vec<i64>]) -> Result<(), CartanError> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(CartanError::NotSquare);
    }
    for i in 0..n {
        if a[i][i] != 2 {
            return Err(CartanError::BadDiagonal(i));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                return Err(CartanError::PositiveOffDiagonal(i, j));
            }
            if (a[i][j] == 0) != (a[j][i] == 0) {
                return Err(CartanError::ZeroPattern(i, j));
            }
        }
    }
    Ok(())
}

/// Minimal positive integer symmetrizer, found component by component.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>, CartanError> {
    let n = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut comp = vec![start];
        d[start] = Some(rat(1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let dj = d[i].clone().unwrap() * rat(a[i][j]) / rat(a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                        queue.push_back(j);
                    }
                    Some(x) if *x != dj => return Err(CartanError::NotSymmetrizable),
                    _ => {}
                }
            }
        }
        let l = comp.iter().fold(num_bigint::BigInt::from(1), |l, &i| l.lcm(d[i].as_ref().unwrap().denom()));
        let scaled: Vec<num_bigint::BigInt> =
            comp.iter().map(|&i| (d[i].clone().unwrap() * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = scaled.iter().fold(num_bigint::BigInt::from(0), |g, x| g.gcd(x));
        for (k, &i) in comp.iter().enumerate() {
            d[i] = Some(Rational::from_integer(&scaled[k] / &g));
        }
    }
    Ok(d.into_iter()
        .map(|x| {
            let v = x.unwrap().to_integer();
            i64::try_from(v).expect("symmetrizer fits in i64")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_symmetrizer() {
        let c = CartanDatum::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        assert_eq!(c.symmetrizer_values(), &[1, 2]);
        assert_eq!(c.form(0, 1), -2);
        assert_eq!(c.form(1, 1), 4);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(CartanDatum::new(vec![vec![2, -1], vec![0, 2]]), Err(CartanError::ZeroPattern(0, 1)));
        assert_eq!(CartanDatum::new(vec![vec![2, 1], vec![1, 2]]), Err(CartanError::PositiveOffDiagonal(0, 1)));
        assert_eq!(CartanDatum::new(vec![vec![3]]), Err(CartanError::BadDiagonal(0)));
        let cyc = vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]];
        assert_eq!(CartanDatum::new(cyc), Err(CartanError::NotSymmetrizable));
    }

    #[test]
    fn root_systems() {
        assert_eq!(CartanDatum::type_a(2).positive_roots().unwrap(), vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(CartanDatum::type_a(3).positive_roots().unwrap().len(), 6);
        assert_eq!(CartanDatum::type_d(4).positive_roots().unwrap().len(), 12);
        assert_eq!(CartanDatum::type_d(4).coxeter_number().unwrap(), 6);
        assert_eq!(CartanDatum::type_a(3).highest_root().unwrap(), vec![1, 1, 1]);
        let affine = CartanDatum::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(affine.positive_roots(), Err(CartanError::NotFiniteType));
    }

    #[test]
    fn weyl_word_acts_right_to_left() {
        let c = CartanDatum::type_a(2);
        // s1 s2 (α1) = s1(α1 + α2) = α2
        assert_eq!(c.weyl_act(&[0, 1], &[1, 0]), vec![0, 1]);
        assert_eq!(c.weyl_act(&[1, 0], &[1, 0]), vec![-1, -1]);
    }

    #[test]
    fn toml_config() {
        let c = CartanDatum::from_toml_str("matrix = [[2,-1],[-1,2]]").unwrap();
        assert_eq!(c, CartanDatum::type_a(2));
        assert_eq!(CartanDatum::from_toml_str("type = \"D4\"").unwrap().rank(), 4);
        assert!(CartanDatum::from_toml_str("type = \"X9\"").is_err());
    }
}
