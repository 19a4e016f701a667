//! Cyclotomic quotients `R^Λ(β) = R(β) / ⟨a^Λ(x_1)⟩` as explicit graded algebras.
//!
//! Inside a column `R(β)e(ν)` the ideal is the right `k[x]`-submodule generated by
//! the finitely many elements `τ_u a^Λ τ_v e(ν)`, so it is computed degree by degree:
//! `I_D = span(generators of degree D) + Σ_k I_{D - deg x_k} · x_k`.

mod checks;
mod module;
mod split;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::Serialize;

pub use checks::{kgroup_commutator_check, resolution_dim_check, sl2_identity_check, CommutatorReport, ResolutionReport, Sl2Report};
pub use module::{functor_e, functor_f, ModuleRep, QVec};
pub use split::{count_projectives, ProjectiveCount};

use crate::arith::{rat, Echelon, LaurentPoly, Rational};
use crate::cartan::{CartanDatum, Weight};
use crate::klr::perm;
use crate::klr::{to_u8, Gen, KlrAlgebra, KlrElement, KlrMonomial, QFamily, Word};

pub const DEFAULT_HEIGHT_GUARD: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclotomicError {
    #[error("Λ = {0:?} is not dominant")]
    NonDominantWeight(Weight),
    #[error("column {word:?} did not stabilize by degree {cutoff}")]
    TruncationInconclusive { word: Word, cutoff: i64 },
    #[error("height {0} exceeds the guard {1}")]
    HeightGuard(usize, usize),
    #[error("content mismatch: {0}")]
    ContentMismatch(String),
    #[error("{what}: {lhs} != {rhs}")]
    IdentityViolation { what: String, lhs: String, rhs: String },
}

type Row = BTreeMap<KlrMonomial, Rational>;

struct Column {
    /// Quotient vanishes above this degree.
    top: i64,
    ideal: BTreeMap<i64, Echelon<KlrMonomial, Rational>>,
}

/// `R^Λ(β)` with a monomial basis of the quotient.
pub struct CyclotomicAlgebra {
    klr: KlrAlgebra,
    lambda: Weight,
    dead: BTreeSet<Word>,
    columns: BTreeMap<Word, Column>,
    basis: Vec<KlrMonomial>,
    degrees: Vec<i64>,
    index: HashMap<KlrMonomial, usize>,
    products: Mutex<HashMap<(usize, usize), QVec>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockDim {
    pub left: Word,
    pub right: Word,
    pub dim: LaurentPoly,
}

impl CyclotomicAlgebra {
    pub fn build(datum: CartanDatum, qfam: QFamily, lambda: Weight, beta: Vec<i64>, cutoff: i64) -> Result<Self, CyclotomicError> {
        Self::build_guarded(datum, qfam, lambda, beta, cutoff, DEFAULT_HEIGHT_GUARD)
    }

    pub fn build_guarded(
        datum: CartanDatum,
        qfam: QFamily,
        lambda: Weight,
        beta: Vec<i64>,
        cutoff: i64,
        guard: usize,
    ) -> Result<Self, CyclotomicError> {
        if lambda.len() != datum.rank() || lambda.iter().any(|&l| l < 0) {
            return Err(CyclotomicError::NonDominantWeight(lambda));
        }
        if beta.len() != datum.rank() || beta.iter().any(|&b| b < 0) {
            return Err(CyclotomicError::ContentMismatch(format!("β = {beta:?}")));
        }
        let h = beta.iter().sum::<i64>() as usize;
        if h > guard {
            return Err(CyclotomicError::HeightGuard(h, guard));
        }
        let klr = KlrAlgebra::new(datum, qfam, beta);
        let mut alg = Self {
            klr,
            lambda,
            dead: BTreeSet::new(),
            columns: BTreeMap::new(),
            basis: Vec::new(),
            degrees: Vec::new(),
            index: HashMap::new(),
            products: Mutex::new(HashMap::new()),
        };
        if h == 0 {
            alg.push_basis(KlrMonomial::idempotent(&[]), 0);
            return Ok(alg);
        }
        let words = alg.klr.words().to_vec();
        let mut gens = BTreeMap::new();
        for nu in &words {
            gens.insert(nu.clone(), alg.generators(nu));
        }
        // first pass: which e(ν) lie in the ideal
        for nu in &words {
            let col = alg.ideal_column(nu, &gens[nu], Some(0), cutoff)?;
            let e = Row::from([(KlrMonomial::idempotent(nu), rat(1))]);
            let dead = col.ideal.get(&0).map(|ech| ech.contains(e.clone())).unwrap_or(false);
            if dead {
                alg.dead.insert(nu.clone());
            }
        }
        for nu in &words {
            if alg.dead.contains(nu) {
                continue;
            }
            let col = alg.ideal_column(nu, &gens[nu], None, cutoff)?;
            alg.columns.insert(nu.clone(), col);
        }
        let mut basis = Vec::new();
        for (nu, col) in &alg.columns {
            for (&d, ech) in &col.ideal {
                if d > col.top {
                    continue;
                }
                for m in alg.klr.monomials_of_degree(nu, d) {
                    if !alg.dead.contains(&m.left_word()) && !ech.is_pivot(&m) {
                        basis.push((m, d));
                    }
                }
            }
        }
        for (m, d) in basis {
            alg.push_basis(m, d);
        }
        Ok(alg)
    }

    fn push_basis(&mut self, m: KlrMonomial, d: i64) {
        self.index.insert(m.clone(), self.basis.len());
        self.basis.push(m);
        self.degrees.push(d);
    }

    /// `τ_u a^Λ(x_1) τ_v e(ν)` for all `u, v`, grouped by degree.
    fn generators(&self, nu: &Word) -> BTreeMap<i64, Vec<KlrElement>> {
        let n = self.klr.n();
        let perms = perm::all_perms(n);
        let nu8 = to_u8(nu);
        let mut out: BTreeMap<i64, Vec<KlrElement>> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for v in &perms {
            let mu: Word = perm::act(v, &nu8).into_iter().map(|x| x as usize).collect();
            let mut y = self.klr.tau_w(v, nu);
            for _ in 0..self.lambda[mu[0]] {
                y = self.klr.left_mul_gen(&Gen::X(0), &y);
            }
            for u in &perms {
                let z = self.klr.multiply(&self.klr.tau_w(u, &mu), &y);
                if z.is_zero() {
                    continue;
                }
                let d = self.klr.homogeneous_degree(&z).expect("generators are homogeneous");
                let key: Vec<(KlrMonomial, Rational)> = z.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect();
                if seen.insert(key) {
                    out.entry(d).or_default().push(z);
                }
            }
        }
        out
    }

    fn project(&self, x: &KlrElement) -> Row {
        x.terms().iter().filter(|(m, _)| !self.dead.contains(&m.left_word())).map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    fn ideal_column(
        &self,
        nu: &Word,
        gens: &BTreeMap<i64, Vec<KlrElement>>,
        upto: Option<i64>,
        cutoff: i64,
    ) -> Result<Column, CyclotomicError> {
        let n = self.klr.n();
        let datum = self.klr.datum();
        let weights: Vec<i64> = nu.iter().map(|&i| datum.form(i, i)).collect();
        let window = *weights.iter().max().unwrap();
        let nu8 = to_u8(nu);
        let taus: Vec<i64> = perm::all_perms(n).iter().map(|p| self.klr.tau_degree(p, &nu8)).collect();
        let lo = *taus.iter().min().unwrap();
        let tmax = *taus.iter().max().unwrap();
        let mut ideal: BTreeMap<i64, Echelon<KlrMonomial, Rational>> = BTreeMap::new();
        let mut top = lo - 1;
        let mut zero_run = 0;
        let mut d = lo;
        loop {
            if d > cutoff {
                return Err(CyclotomicError::TruncationInconclusive { word: nu.clone(), cutoff });
            }
            let mut ech = Echelon::new();
            if let Some(gs) = gens.get(&d) {
                for g in gs {
                    ech.insert(self.project(g));
                }
            }
            for (k, &w) in weights.iter().enumerate() {
                if let Some(prev) = ideal.get(&(d - w)) {
                    let mut e = vec![0u32; n];
                    e[k] = 1;
                    let rows: Vec<Row> = prev.rows().map(|(_, r)| r.iter().map(|(m, c)| (shift(m, &e), c.clone())).collect()).collect();
                    for r in rows {
                        ech.insert(r);
                    }
                }
            }
            let live = self.klr.monomials_of_degree(nu, d).into_iter().filter(|m| !self.dead.contains(&m.left_word())).count();
            let qdim = live - ech.rank();
            ideal.insert(d, ech);
            if qdim > 0 {
                top = d;
                zero_run = 0;
            } else {
                zero_run += 1;
            }
            if upto == Some(d) {
                break;
            }
            // the window of zero degrees lies above every generator τ_w e(ν) of the
            // quotient column as a right k[x]-module, so all higher degrees vanish
            if upto.is_none() && zero_run >= window && d - window + 1 > tmax {
                break;
            }
            d += 1;
        }
        if upto.is_none() {
            ideal.retain(|&k, _| k <= top);
        }
        Ok(Column { top, ideal })
    }

    pub fn klr(&self) -> &KlrAlgebra {
        &self.klr
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn beta(&self) -> &[i64] {
        self.klr.beta()
    }

    pub fn n(&self) -> usize {
        self.klr.n()
    }

    pub fn datum(&self) -> &CartanDatum {
        self.klr.datum()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[KlrMonomial] {
        &self.basis
    }

    pub fn degree(&self, b: usize) -> i64 {
        self.degrees[b]
    }

    pub fn left_word(&self, b: usize) -> Word {
        self.basis[b].left_word()
    }

    pub fn right_word(&self, b: usize) -> Word {
        self.basis[b].right_word()
    }

    /// Words `ν` with `e(ν) ≠ 0` in the quotient.
    pub fn live_words(&self) -> Vec<Word> {
        if self.n() == 0 {
            return vec![vec![]];
        }
        self.columns.keys().cloned().collect()
    }

    pub fn top_degree(&self, nu: &[usize]) -> Option<i64> {
        self.columns.get(nu).map(|c| c.top)
    }

    /// Image of an element of `R(β)` in quotient coordinates.
    pub fn reduce(&self, x: &KlrElement) -> QVec {
        if self.n() == 0 {
            return x.terms().values().next().map(|c| QVec::from([(0, c.clone())])).unwrap_or_default();
        }
        let mut groups: BTreeMap<(Word, i64), Row> = BTreeMap::new();
        for (m, c) in x.terms() {
            if self.dead.contains(&m.left_word()) {
                continue;
            }
            let nu = m.right_word();
            let Some(col) = self.columns.get(&nu) else { continue };
            let d = self.klr.degree(m);
            if d > col.top {
                continue;
            }
            groups.entry((nu, d)).or_default().insert(m.clone(), c.clone());
        }
        let mut out = QVec::new();
        for ((nu, d), row) in groups {
            let ech = &self.columns[&nu].ideal[&d];
            for (m, c) in ech.reduce(row) {
                let idx = *self.index.get(&m).expect("reduced monomial is a basis element");
                out.insert(idx, c);
            }
        }
        out
    }

    pub fn lift(&self, v: &QVec) -> KlrElement {
        KlrElement::from_terms(v.iter().map(|(&i, c)| (self.basis[i].clone(), c.clone())).collect())
    }

    pub fn unit(&self) -> QVec {
        self.live_words().iter().map(|w| (self.index[&KlrMonomial::idempotent(w)], rat(1))).collect()
    }

    pub fn idempotent(&self, w: &[usize]) -> QVec {
        self.index.get(&KlrMonomial::idempotent(w)).map(|&i| QVec::from([(i, rat(1))])).unwrap_or_default()
    }

    pub fn basis_product(&self, a: usize, b: usize) -> QVec {
        if self.basis[a].word != perm::act(&self.basis[b].perm, &self.basis[b].word) {
            return QVec::new();
        }
        if let Some(v) = self.products.lock().unwrap().get(&(a, b)) {
            return v.clone();
        }
        let x = KlrElement::from_monomial(self.basis[a].clone());
        let y = KlrElement::from_monomial(self.basis[b].clone());
        let r = self.reduce(&self.klr.multiply(&x, &y));
        self.products.lock().unwrap().insert((a, b), r.clone());
        r
    }

    pub fn multiply(&self, x: &QVec, y: &QVec) -> QVec {
        let mut out = QVec::new();
        for (&a, c) in x {
            for (&b, d) in y {
                let p = self.basis_product(a, b);
                if p.is_empty() {
                    continue;
                }
                qvec_axpy(&mut out, &(c * d), &p);
            }
        }
        out
    }

    /// Left action of a generator of `R(β)` on a quotient element.
    pub fn left_gen(&self, g: &Gen, x: &QVec) -> QVec {
        self.reduce(&self.klr.left_mul_gen(g, &self.lift(x)))
    }

    /// Right multiplication of a basis element by `x_k`.
    pub fn right_x(&self, b: usize, k: usize) -> QVec {
        let mut e = vec![0u32; self.n()];
        e[k] = 1;
        self.reduce(&KlrElement::from_monomial(self.basis[b].clone()).right_mul_x(&e))
    }

    /// Right multiplication of a basis element by `τ_l`.
    pub fn right_tau(&self, b: usize, l: usize) -> QVec {
        let m = &self.basis[b];
        let right = m.right_word();
        let mut w = right.clone();
        w.swap(l, l + 1);
        let s = perm::from_word(self.n(), &[l]);
        self.reduce(&self.klr.multiply(&KlrElement::from_monomial(m.clone()), &self.klr.tau_w(&s, &w)))
    }

    /// Full table of nonzero basis products.
    pub fn structure_constants(&self) -> BTreeMap<(usize, usize), QVec> {
        let mut out = BTreeMap::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let p = self.basis_product(a, b);
                if !p.is_empty() {
                    out.insert((a, b), p);
                }
            }
        }
        out
    }

    /// `dim_q e(μ) R^Λ(β) e(ν)`
    pub fn block_dim(&self, mu: &[usize], nu: &[usize]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (b, m) in self.basis.iter().enumerate() {
            if m.right_word() == nu && m.left_word() == mu {
                p.add_term(self.degrees[b], rat(1));
            }
        }
        p
    }

    pub fn blocks(&self) -> Vec<BlockDim> {
        let mut map: BTreeMap<(Word, Word), LaurentPoly> = BTreeMap::new();
        for (b, m) in self.basis.iter().enumerate() {
            map.entry((m.left_word(), m.right_word())).or_default().add_term(self.degrees[b], rat(1));
        }
        map.into_iter().map(|((left, right), dim)| BlockDim { left, right, dim }).collect()
    }

    pub fn graded_dim(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &d in &self.degrees {
            p.add_term(d, rat(1));
        }
        p
    }
}

fn shift(m: &KlrMonomial, e: &[u32]) -> KlrMonomial {
    KlrMonomial { perm: m.perm.clone(), exps: m.exps.iter().zip(e).map(|(a, b)| a + b).collect(), word: m.word.clone() }
}

pub(crate) fn qvec_axpy(acc: &mut QVec, c: &Rational, x: &QVec) {
    for (&k, v) in x {
        let t = c * v;
        let e = acc.entry(k).or_insert_with(Rational::zero);
        *e += t;
        if e.is_zero() {
            acc.remove(&k);
        }
    }
}

/// Cyclotomic quotients for one `(datum, Q, Λ)` and varying `β`, built on demand.
pub struct CyclotomicFamily {
    datum: CartanDatum,
    qfam: QFamily,
    lambda: Weight,
    cutoff: i64,
    algebras: Mutex<BTreeMap<Vec<i64>, Arc<CyclotomicAlgebra>>>,
}

impl CyclotomicFamily {
    pub fn new(datum: CartanDatum, qfam: QFamily, lambda: Weight, cutoff: i64) -> Result<Self, CyclotomicError> {
        if lambda.len() != datum.rank() || lambda.iter().any(|&l| l < 0) {
            return Err(CyclotomicError::NonDominantWeight(lambda));
        }
        Ok(Self { datum, qfam, lambda, cutoff, algebras: Mutex::new(BTreeMap::new()) })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn get(&self, beta: &[i64]) -> Result<Arc<CyclotomicAlgebra>, CyclotomicError> {
        if let Some(a) = self.algebras.lock().unwrap().get(beta) {
            return Ok(a.clone());
        }
        let a = Arc::new(CyclotomicAlgebra::build_guarded(
            self.datum.clone(),
            self.qfam.clone(),
            self.lambda.clone(),
            beta.to_vec(),
            self.cutoff,
            DEFAULT_HEIGHT_GUARD + 1,
        )?);
        self.algebras.lock().unwrap().insert(beta.to_vec(), a.clone());
        Ok(a)
    }

    /// `⟨h_i, Λ - β⟩`
    pub fn lambda_i(&self, beta: &[i64], i: usize) -> i64 {
        self.lambda[i] - self.datum.coroot_pairing(i, beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2(l: i64, b: i64) -> CyclotomicAlgebra {
        let d = CartanDatum::type_a(1);
        CyclotomicAlgebra::build(d.clone(), QFamily::standard(&d), vec![l], vec![b], 40).unwrap()
    }

    #[test]
    fn sl2_examples() {
        assert_eq!(sl2(1, 1).dim(), 1);
        assert!(sl2(1, 2).is_zero());
        assert_eq!(sl2(2, 1).graded_dim(), LaurentPoly::from_terms([(0, rat(1)), (2, rat(1))]));
        let two = sl2(2, 2);
        assert_eq!(two.dim(), 4);
        assert_eq!(two.graded_dim(), LaurentPoly::from_terms([(-2, rat(1)), (0, rat(2)), (2, rat(1))]));
    }

    #[test]
    fn unit_and_associativity() {
        let a = sl2(3, 2);
        let one = a.unit();
        for b in 0..a.dim() {
            let v = QVec::from([(b, rat(1))]);
            assert_eq!(a.multiply(&one, &v), v);
            assert_eq!(a.multiply(&v, &one), v);
        }
        let sc = a.structure_constants();
        for ((x, y), p) in &sc {
            assert_eq!(a.degree(*x) + a.degree(*y), p.keys().map(|&k| a.degree(k)).next().unwrap());
        }
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                for z in 0..a.dim() {
                    let (vx, vy, vz) = (QVec::from([(x, rat(1))]), QVec::from([(y, rat(1))]), QVec::from([(z, rat(1))]));
                    assert_eq!(a.multiply(&a.multiply(&vx, &vy), &vz), a.multiply(&vx, &a.multiply(&vy, &vz)));
                }
            }
        }
    }

    #[test]
    fn zero_weight_gives_zero_algebra() {
        let d = CartanDatum::type_a(2);
        let a = CyclotomicAlgebra::build(d.clone(), QFamily::standard(&d), vec![0, 0], vec![1, 1], 40).unwrap();
        assert!(a.is_zero());
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = CartanDatum::type_a(1);
        assert!(matches!(
            CyclotomicAlgebra::build(d.clone(), QFamily::standard(&d), vec![-1], vec![1], 40),
            Err(CyclotomicError::NonDominantWeight(_))
        ));
        assert!(matches!(
            CyclotomicAlgebra::build(d.clone(), QFamily::standard(&d), vec![1], vec![5], 40),
            Err(CyclotomicError::HeightGuard(5, 4))
        ));
        assert!(matches!(
            CyclotomicAlgebra::build(d.clone(), QFamily::standard(&d), vec![3], vec![2], 1),
            Err(CyclotomicError::TruncationInconclusive { .. })
        ));
    }
}
