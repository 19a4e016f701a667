use serde::Serialize;

use super::{functor_e, functor_f, CyclotomicError, CyclotomicFamily, ModuleRep};
use crate::arith::{quantum_integer, rat, series_inverse, LaurentPoly, TruncatedSeries};
use crate::klr::perm;
use crate::klr::{character_add, character_scale, to_u8, Character, Word};

fn truncate_last(ch: &Character, i: usize) -> Character {
    let mut out = Character::new();
    for (w, p) in ch {
        if w.last() == Some(&i) {
            out.insert(w[..w.len() - 1].to_vec(), p.clone());
        }
    }
    out
}

fn show(ch: &Character) -> String {
    let parts: Vec<String> = ch.iter().map(|(w, p)| format!("{w:?}: {p}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// `ch(F_j M)` over `R^Λ(β + α_j)`.
fn ch_f(fam: &CyclotomicFamily, j: usize, m: &ModuleRep) -> Result<Character, CyclotomicError> {
    if m.dim() == 0 {
        return Ok(Character::new());
    }
    let mut b = m.beta.clone();
    b[j] += 1;
    let big = fam.get(&b)?;
    Ok(functor_f(&big, j, m)?.character())
}

fn ch_ef(fam: &CyclotomicFamily, i: usize, j: usize, m: &ModuleRep) -> Result<Character, CyclotomicError> {
    if m.dim() == 0 {
        return Ok(Character::new());
    }
    let mut b = m.beta.clone();
    b[j] += 1;
    let big = fam.get(&b)?;
    let fm = functor_f(&big, j, m)?;
    Ok(truncate_last(&fm.character(), i))
}

fn ch_fe(fam: &CyclotomicFamily, i: usize, j: usize, m: &ModuleRep) -> Result<Character, CyclotomicError> {
    if m.beta[i] == 0 {
        return Ok(Character::new());
    }
    ch_f(fam, j, &functor_e(i, m)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct Sl2Report {
    pub i: usize,
    pub lambda_i: i64,
    pub branch: String,
    pub lhs: Character,
    pub rhs: Character,
    pub passed: bool,
}

/// Character shadow of the `sl_2` isomorphisms, with `λ = Λ - β`:
/// `⟨h_i,λ⟩ ≥ 0`: `ch E F M = q_i^{-2} ch F E M + Σ_{k<⟨h_i,λ⟩} q_i^{2k} ch M`;
/// `⟨h_i,λ⟩ ≤ 0`: `q_i^{-2} ch F E M = ch E F M + Σ_{k<-⟨h_i,λ⟩} q_i^{-2k-2} ch M`.
pub fn sl2_identity_check(fam: &CyclotomicFamily, i: usize, m: &ModuleRep) -> Result<Sl2Report, CyclotomicError> {
    let l = fam.lambda_i(&m.beta, i);
    let di = fam.datum().d(i);
    let ef = ch_ef(fam, i, i, m)?;
    let fe = ch_fe(fam, i, i, m)?;
    let chm = m.character();
    let fe_shift = character_scale(&fe, &LaurentPoly::q_pow(-2 * di));
    let (branch, lhs, rhs) = if l >= 0 {
        let s = LaurentPoly::from_terms((0..l).map(|k| (2 * k * di, rat(1))));
        ("nonnegative".to_string(), ef, character_add(&fe_shift, &character_scale(&chm, &s)))
    } else {
        let s = LaurentPoly::from_terms((0..-l).map(|k| ((-2 * k - 2) * di, rat(1))));
        ("negative".to_string(), fe_shift, character_add(&ef, &character_scale(&chm, &s)))
    };
    let passed = lhs == rhs;
    let rep = Sl2Report { i, lambda_i: l, branch, lhs, rhs, passed };
    if !passed {
        return Err(CyclotomicError::IdentityViolation {
            what: format!("sl2 identity at i = {i}"),
            lhs: show(&rep.lhs),
            rhs: show(&rep.rhs),
        });
    }
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorReport {
    pub i: usize,
    pub j: usize,
    pub commutator: Character,
    pub expected: Character,
    pub passed: bool,
}

/// `[E_i, F_j] = δ_ij [⟨h_i, Λ-β⟩]_{q_i}` on characters, with `F_j` acting on a
/// module of weight `λ` normalized by `q_j^{1 - ⟨h_j, λ⟩}`.
pub fn kgroup_commutator_check(fam: &CyclotomicFamily, i: usize, j: usize, m: &ModuleRep) -> Result<CommutatorReport, CyclotomicError> {
    let datum = fam.datum();
    let lj = fam.lambda_i(&m.beta, j);
    let dj = datum.d(j);
    let ef = ch_ef(fam, i, j, m)?;
    let fe = ch_fe(fam, i, j, m)?;
    // F_j acts on E_i M, whose weight is λ + α_i
    let lj2 = lj + datum.a(j, i);
    let commutator = character_add(
        &character_scale(&ef, &LaurentPoly::q_pow(dj * (1 - lj))),
        &character_scale(&fe, &LaurentPoly::monomial(rat(-1), dj * (1 - lj2))),
    );
    let expected = if i == j { character_scale(&m.character(), &quantum_integer(lj, dj as u32)) } else { Character::new() };
    let passed = commutator == expected;
    let rep = CommutatorReport { i, j, commutator, expected, passed };
    if !passed {
        return Err(CyclotomicError::IdentityViolation {
            what: format!("[E_{i}, F_{j}]"),
            lhs: show(&rep.commutator),
            rhs: show(&rep.expected),
        });
    }
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolutionReport {
    pub i: usize,
    pub cutoff: i64,
    pub f: LaurentPoly,
    pub k0: LaurentPoly,
    pub k1: LaurentPoly,
    pub passed: bool,
}

/// `dim_q F^Λ = dim_q K_0 - dim_q K_1` through `cutoff`, where
/// `F^Λ = R^Λ(β+α_i) e(β,α_i)`, `K_0 = R(β+α_i) e(β,α_i) ⊗_{R(β)} R^Λ(β)` and
/// `K_1 = q^{(α_i, 2Λ-β)} R(β+α_i) e(α_i,β) ⊗_{R(β)} R^Λ(β)`. Both are free over
/// `R(β) ⊗ k[x]` on the minimal coset representatives moving the extra strand.
pub fn resolution_dim_check(fam: &CyclotomicFamily, beta: &[i64], i: usize, cutoff: i64) -> Result<ResolutionReport, CyclotomicError> {
    let datum = fam.datum();
    let small = fam.get(beta)?;
    let mut b2 = beta.to_vec();
    b2[i] += 1;
    let big = fam.get(&b2)?;
    let n = small.n();
    let mut f = LaurentPoly::zero();
    for b in 0..big.dim() {
        if big.right_word(b)[n] == i {
            f.add_term(big.degree(b), rat(1));
        }
    }
    let mut k0 = LaurentPoly::zero();
    let mut k1 = LaurentPoly::zero();
    for nu in small.live_words() {
        let mut row = LaurentPoly::zero();
        for b in 0..small.dim() {
            if small.left_word(b) == nu {
                row.add_term(small.degree(b), rat(1));
            }
        }
        let mut back: Word = nu.clone();
        back.push(i);
        let mut front: Word = vec![i];
        front.extend(&nu);
        let (mut c0, mut c1) = (LaurentPoly::zero(), LaurentPoly::zero());
        for k in 0..=n {
            // s_k s_{k+1} ⋯ s_{n-1}: last strand to position k
            let w: Vec<usize> = (k..n).rev().collect();
            c0.add_term(big.klr().tau_degree(&perm::from_word(n + 1, &w), &to_u8(&back)), rat(1));
            // s_{k-1} ⋯ s_0: first strand to position k
            let w: Vec<usize> = (0..k).collect();
            c1.add_term(big.klr().tau_degree(&perm::from_word(n + 1, &w), &to_u8(&front)), rat(1));
        }
        k0 += &(&c0 * &row);
        k1 += &(&c1 * &row);
    }
    let shift = 2 * datum.pair_weight_root(fam.lambda(), &datum.simple_root(i)) - datum.pair_roots(&datum.simple_root(i), beta);
    let k1 = k1.shift(shift);
    let den = LaurentPoly::from_terms([(0, rat(1)), (datum.form(i, i), rat(-1))]);
    let lo = k0.min_degree().unwrap_or(0).min(k1.min_degree().unwrap_or(0)).min(0);
    let inv = series_inverse(&den, cutoff - lo).expect("invertible");
    let s0 = inv.mul_poly(&k0).truncate(cutoff);
    let s1 = inv.mul_poly(&k1).truncate(cutoff);
    let lhs = TruncatedSeries::from_poly(&f, cutoff);
    let diff = s0.sub(&s1);
    let passed = lhs.poly() == diff.poly();
    let rep = ResolutionReport { i, cutoff, f, k0: s0.poly().clone(), k1: s1.poly().clone(), passed };
    if !passed {
        return Err(CyclotomicError::IdentityViolation {
            what: format!("resolution at i = {i}"),
            lhs: format!("{}", lhs.poly()),
            rhs: format!("{}", diff.poly()),
        });
    }
    Ok(rep)
}
