use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{qvec_axpy, CyclotomicAlgebra, CyclotomicError};
use crate::arith::{rat, Echelon, LaurentPoly, Rational};
use crate::klr::{Character, Gen, KlrAlgebra, Word};

/// Sparse vector in a module or quotient-algebra basis.
pub type QVec = BTreeMap<usize, Rational>;

/// Graded module over `R^Λ(β)` with a basis adapted to the word decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleRep {
    pub beta: Vec<i64>,
    /// `(ν, degree)` of each basis vector; the vector lies in `e(ν)M`.
    pub basis: Vec<(Word, i64)>,
    /// `x[k][j]` is the image of basis vector `j` under `x_k`.
    pub x: Vec<Vec<QVec>>,
    pub tau: Vec<Vec<QVec>>,
}

impl ModuleRep {
    pub fn zero(beta: Vec<i64>) -> Self {
        let n = beta.iter().sum::<i64>() as usize;
        Self { beta, basis: Vec::new(), x: vec![Vec::new(); n], tau: vec![Vec::new(); n.saturating_sub(1)] }
    }

    /// The one-dimensional module over `R^Λ(0) = k`.
    pub fn trivial(rank: usize) -> Self {
        Self { beta: vec![0; rank], basis: vec![(vec![], 0)], x: Vec::new(), tau: Vec::new() }
    }

    /// The projective module `R^Λ(β) e(ν)` with its left regular action.
    pub fn projective(alg: &CyclotomicAlgebra, nu: &[usize]) -> Self {
        let idx: Vec<usize> = (0..alg.dim()).filter(|&b| alg.right_word(b) == nu).collect();
        Self::from_columns(alg, &idx)
    }

    /// The left regular module `R^Λ(β)`.
    pub fn regular(alg: &CyclotomicAlgebra) -> Self {
        let idx: Vec<usize> = (0..alg.dim()).collect();
        Self::from_columns(alg, &idx)
    }

    fn from_columns(alg: &CyclotomicAlgebra, idx: &[usize]) -> Self {
        let n = alg.n();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(p, &b)| (b, p)).collect();
        let basis = idx.iter().map(|&b| (alg.left_word(b), alg.degree(b))).collect();
        let act = |g: Gen| -> Vec<QVec> {
            idx.iter()
                .map(|&b| {
                    alg.left_gen(&g, &QVec::from([(b, rat(1))]))
                        .into_iter()
                        .map(|(k, c)| (*pos.get(&k).expect("left action stays in the column"), c))
                        .collect()
                })
                .collect()
        };
        let x = (0..n).map(|k| act(Gen::X(k))).collect();
        let tau = (0..n.saturating_sub(1)).map(|l| act(Gen::T(l))).collect();
        Self { beta: alg.beta().to_vec(), basis, x, tau }
    }

    pub fn n(&self) -> usize {
        self.beta.iter().sum::<i64>() as usize
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn character(&self) -> Character {
        let mut ch = Character::new();
        for (w, d) in &self.basis {
            ch.entry(w.clone()).or_default().add_term(*d, rat(1));
        }
        ch
    }

    pub fn graded_dim(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (_, d) in &self.basis {
            p.add_term(*d, rat(1));
        }
        p
    }

    pub fn apply(&self, g: &Gen, v: &QVec) -> QVec {
        match g {
            Gen::E(w) => v.iter().filter(|(k, _)| &self.basis[**k].0 == w).map(|(k, c)| (*k, c.clone())).collect(),
            Gen::X(k) => self.apply_matrix(&self.x[*k], v),
            Gen::T(l) => self.apply_matrix(&self.tau[*l], v),
        }
    }

    fn apply_matrix(&self, m: &[QVec], v: &QVec) -> QVec {
        let mut out = QVec::new();
        for (&j, c) in v {
            qvec_axpy(&mut out, c, &m[j]);
        }
        out
    }

    /// Checks every defining relation of `R(β)` and `a^Λ(x_1) = 0` on every
    /// basis vector, and that generators shift degrees and words correctly.
    pub fn check_relations(&self, klr: &KlrAlgebra, lambda: &[i64]) -> Result<(), String> {
        if klr.beta() != self.beta.as_slice() {
            return Err("content mismatch".into());
        }
        let datum = klr.datum();
        for (j, (w, d)) in self.basis.iter().enumerate() {
            for (k, col) in self.x.iter().enumerate() {
                for &t in col[j].keys() {
                    let want = (w.clone(), d + datum.form(w[k], w[k]));
                    if self.basis[t] != want {
                        return Err(format!("x_{k} maps vector {j} outside {want:?}"));
                    }
                }
            }
            for (l, col) in self.tau.iter().enumerate() {
                for &t in col[j].keys() {
                    let mut w2 = w.clone();
                    w2.swap(l, l + 1);
                    let want = (w2, d - datum.form(w[l], w[l + 1]));
                    if self.basis[t] != want {
                        return Err(format!("τ_{l} maps vector {j} outside {want:?}"));
                    }
                }
            }
        }
        for nu in klr.words() {
            let vecs: Vec<usize> = (0..self.dim()).filter(|&j| &self.basis[j].0 == nu).collect();
            if vecs.is_empty() {
                continue;
            }
            let mut rels = klr.defining_relations(nu);
            if let Some(&first) = nu.first() {
                let mut cyc = vec![Gen::E(nu.clone())];
                for _ in 0..lambda[first] {
                    cyc.insert(0, Gen::X(0));
                }
                rels.push(("cyclotomic".into(), vec![(rat(1), cyc)]));
            }
            for (name, expr) in rels {
                for &j in &vecs {
                    let mut acc = QVec::new();
                    for (c, gens) in &expr {
                        let mut v = QVec::from([(j, rat(1))]);
                        for g in gens.iter().rev() {
                            v = self.apply(g, &v);
                        }
                        qvec_axpy(&mut acc, c, &v);
                    }
                    if !acc.is_empty() {
                        return Err(format!("relation {name} fails on vector {j}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Submodule-free restriction to the vectors selected by `keep`.
    fn restrict(&self, keep: &[usize], beta: Vec<i64>, words: Vec<Word>) -> Self {
        let n = beta.iter().sum::<i64>() as usize;
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(p, &j)| (j, p)).collect();
        let remap = |m: &Vec<QVec>| -> Vec<QVec> {
            keep.iter()
                .map(|&j| m[j].iter().map(|(k, c)| (*pos.get(k).expect("action preserves the truncation"), c.clone())).collect())
                .collect()
        };
        let basis = keep.iter().zip(words).map(|(&j, w)| (w, self.basis[j].1)).collect();
        Self { beta, basis, x: self.x[..n].iter().map(remap).collect(), tau: self.tau[..n.saturating_sub(1)].iter().map(remap).collect() }
    }
}

/// `E_i^Λ N = e(β - α_i, α_i) N` as a module over `R^Λ(β - α_i)`.
pub fn functor_e(i: usize, nmod: &ModuleRep) -> Result<ModuleRep, CyclotomicError> {
    if nmod.beta.get(i).copied().unwrap_or(0) <= 0 {
        return Err(CyclotomicError::ContentMismatch(format!("β = {:?} has no α_{i}", nmod.beta)));
    }
    let mut beta = nmod.beta.clone();
    beta[i] -= 1;
    let keep: Vec<usize> = (0..nmod.dim()).filter(|&j| nmod.basis[j].0.last() == Some(&i)).collect();
    let words = keep.iter().map(|&j| nmod.basis[j].0[..nmod.n() - 1].to_vec()).collect();
    Ok(nmod.restrict(&keep, beta, words))
}

/// `F_i^Λ M = R^Λ(β + α_i) e(β, α_i) ⊗_{R^Λ(β)} M`, computed as the quotient of
/// `B ⊗_k M` by the balancing relations for the generators of `R(β)`.
pub fn functor_f(big: &CyclotomicAlgebra, i: usize, m: &ModuleRep) -> Result<ModuleRep, CyclotomicError> {
    let mut beta = m.beta.clone();
    if i >= beta.len() {
        return Err(CyclotomicError::ContentMismatch(format!("vertex {i}")));
    }
    beta[i] += 1;
    if big.beta() != beta.as_slice() {
        return Err(CyclotomicError::ContentMismatch(format!("algebra has β = {:?}, expected {beta:?}", big.beta())));
    }
    let n = m.n();
    let mut b_by_word: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
    for b in 0..big.dim() {
        let r = big.right_word(b);
        if r[n] == i {
            b_by_word.entry(r[..n].to_vec()).or_default().push(b);
        }
    }
    let mut m_by_word: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
    for (j, (w, _)) in m.basis.iter().enumerate() {
        m_by_word.entry(w.clone()).or_default().push(j);
    }
    let empty = Vec::new();
    let mut keys: Vec<(usize, usize)> = Vec::new();
    for (w, bs) in &b_by_word {
        for &b in bs {
            for &j in m_by_word.get(w).unwrap_or(&empty) {
                keys.push((b, j));
            }
        }
    }
    keys.sort();
    let mut rel: Echelon<(usize, usize), Rational> = Echelon::new();
    let tensor = |bv: &QVec, j: usize, out: &mut BTreeMap<(usize, usize), Rational>, sign: &Rational| {
        for (&b2, c) in bv {
            let e = out.entry((b2, j)).or_insert_with(Rational::zero);
            *e += sign * c;
        }
    };
    for (w, bs) in &b_by_word {
        for &b in bs {
            for k in 0..n {
                let bx = big.right_x(b, k);
                for &j in m_by_word.get(w).unwrap_or(&empty) {
                    let mut r = BTreeMap::new();
                    tensor(&bx, j, &mut r, &rat(1));
                    for (&j2, c) in &m.x[k][j] {
                        *r.entry((b, j2)).or_insert_with(Rational::zero) -= c;
                    }
                    r.retain(|_, c: &mut Rational| !c.is_zero());
                    rel.insert(r);
                }
            }
            for l in 0..n.saturating_sub(1) {
                let mut w2 = w.clone();
                w2.swap(l, l + 1);
                let Some(js) = m_by_word.get(&w2) else { continue };
                let bt = big.right_tau(b, l);
                for &j in js {
                    let mut r = BTreeMap::new();
                    tensor(&bt, j, &mut r, &rat(1));
                    for (&j2, c) in &m.tau[l][j] {
                        *r.entry((b, j2)).or_insert_with(Rational::zero) -= c;
                    }
                    r.retain(|_, c: &mut Rational| !c.is_zero());
                    rel.insert(r);
                }
            }
        }
    }
    let free: Vec<(usize, usize)> = keys.into_iter().filter(|k| !rel.is_pivot(k)).collect();
    let pos: HashMap<(usize, usize), usize> = free.iter().enumerate().map(|(p, k)| (*k, p)).collect();
    let basis: Vec<(Word, i64)> = free.iter().map(|&(b, j)| (big.left_word(b), big.degree(b) + m.basis[j].1)).collect();
    let act = |g: Gen| -> Vec<QVec> {
        free.iter()
            .map(|&(b, j)| {
                let y = big.left_gen(&g, &QVec::from([(b, rat(1))]));
                let v: BTreeMap<(usize, usize), Rational> = y.into_iter().map(|(b2, c)| ((b2, j), c)).collect();
                rel.reduce(v).into_iter().map(|(k, c)| (pos[&k], c)).collect()
            })
            .collect()
    };
    let x = (0..=n).map(|k| act(Gen::X(k))).collect();
    let tau = (0..n).map(|l| act(Gen::T(l))).collect();
    Ok(ModuleRep { beta, basis, x, tau })
}

#[cfg(test)]
mod tests {
    use super::super::CyclotomicFamily;
    use super::*;
    use crate::cartan::CartanDatum;
    use crate::klr::QFamily;

    fn fam(l: i64) -> CyclotomicFamily {
        let d = CartanDatum::type_a(1);
        CyclotomicFamily::new(d.clone(), QFamily::standard(&d), vec![l], 40).unwrap()
    }

    #[test]
    fn f_of_trivial() {
        let f = fam(1);
        let big = f.get(&[1]).unwrap();
        let fm = functor_f(&big, 0, &ModuleRep::trivial(1)).unwrap();
        assert_eq!(fm.dim(), 1);
        let back = functor_e(0, &fm).unwrap();
        assert_eq!(back.character(), ModuleRep::trivial(1).character());
        let f = fam(2);
        let big = f.get(&[1]).unwrap();
        let fm = functor_f(&big, 0, &ModuleRep::trivial(1)).unwrap();
        assert_eq!(fm.character(), ModuleRep::projective(&big, &[0]).character());
        fm.check_relations(big.klr(), &[2]).unwrap();
    }

    #[test]
    fn projective_modules_satisfy_relations() {
        let f = fam(2);
        let a = f.get(&[2]).unwrap();
        let p = ModuleRep::projective(&a, &[0, 0]);
        assert_eq!(p.dim(), 4);
        p.check_relations(a.klr(), &[2]).unwrap();
        let big = f.get(&[3]).unwrap();
        assert!(big.is_zero());
        assert_eq!(functor_f(&big, 0, &p).unwrap().dim(), 0);
    }

    #[test]
    fn broken_module_is_rejected() {
        let f = fam(2);
        let a = f.get(&[1]).unwrap();
        let mut p = ModuleRep::projective(&a, &[0]);
        p.x[0][1].insert(0, rat(1));
        assert!(p.check_relations(a.klr(), &[2]).is_err());
    }
}
