//! Primitive idempotents of the degree-zero part and the characters of the
//! indecomposable projectives they cut out.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{qvec_axpy, CyclotomicAlgebra, QVec};
use crate::arith::{rat, Echelon, LaurentPoly, Rational};
use crate::klr::Character;

#[derive(Debug, Clone, Serialize)]
pub struct ProjectiveCount {
    /// Distinct characters (up to grading shift) of the projectives found.
    pub distinct: usize,
    pub characters: Vec<Character>,
    /// Every corner was split down to local algebras.
    pub complete: bool,
    pub primitive_idempotents: usize,
}

const ATTEMPTS: usize = 60;

pub fn count_projectives(alg: &CyclotomicAlgebra, seed: u64) -> ProjectiveCount {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero_deg: Vec<usize> = (0..alg.dim()).filter(|&b| alg.degree(b) == 0).collect();
    let mut stack: Vec<QVec> = alg.live_words().iter().map(|w| alg.idempotent(w)).filter(|e| !e.is_empty()).collect();
    let mut primitives = Vec::new();
    let mut complete = true;
    while let Some(e) = stack.pop() {
        let corner = corner_basis(alg, &e, &zero_deg);
        if corner.len() == 1 || is_local(alg, &corner) {
            primitives.push(e);
            continue;
        }
        match split_once(alg, &e, &corner, &mut rng) {
            Some((e1, e2)) => {
                stack.push(e1);
                stack.push(e2);
            }
            None => {
                complete = false;
                primitives.push(e);
            }
        }
    }
    let mut characters: Vec<Character> = Vec::new();
    for e in &primitives {
        let ch = normalize(projective_character(alg, e));
        if !characters.contains(&ch) {
            characters.push(ch);
        }
    }
    characters.sort_by_key(|c| format!("{c:?}"));
    ProjectiveCount { distinct: characters.len(), characters, complete, primitive_idempotents: primitives.len() }
}

/// Basis of `e A_0 e`, fully reduced so coordinates are read off at pivots.
fn corner_basis(alg: &CyclotomicAlgebra, e: &QVec, zero_deg: &[usize]) -> Vec<QVec> {
    let mut ech: Echelon<usize, Rational> = Echelon::new();
    for &b in zero_deg {
        let v = alg.multiply(&alg.multiply(e, &QVec::from([(b, rat(1))])), e);
        if !v.is_empty() {
            ech.insert(v);
        }
    }
    ech.reduced_rows().into_values().collect()
}

fn coords(corner: &[QVec], v: &QVec) -> Vec<Rational> {
    corner.iter().map(|row| v.get(row.keys().next().unwrap()).cloned().unwrap_or_else(Rational::zero)).collect()
}

/// `C` is local iff `C / rad C` is one-dimensional; in characteristic zero the
/// radical is the kernel of the trace form `(a, b) ↦ tr L_{ab}`.
fn is_local(alg: &CyclotomicAlgebra, corner: &[QVec]) -> bool {
    let trace = |x: &QVec| -> Rational {
        let mut t = Rational::zero();
        for (k, c) in corner.iter().enumerate() {
            t += coords(corner, &alg.multiply(x, c))[k].clone();
        }
        t
    };
    let mut ech: Echelon<usize, Rational> = Echelon::new();
    for a in corner {
        let row: BTreeMap<usize, Rational> =
            corner.iter().enumerate().map(|(k, b)| (k, trace(&alg.multiply(a, b)))).filter(|(_, c)| !c.is_zero()).collect();
        ech.insert(row);
    }
    ech.rank() == 1
}

/// Splits `e` using a polynomial in some element of `e A_0 e` whose minimal
/// polynomial has a rational root and another coprime factor.
fn split_once(alg: &CyclotomicAlgebra, e: &QVec, corner: &[QVec], rng: &mut ChaCha8Rng) -> Option<(QVec, QVec)> {
    let mut candidates: Vec<QVec> = corner.to_vec();
    for a in 0..corner.len() {
        for b in a + 1..corner.len() {
            let mut v = corner[a].clone();
            qvec_axpy(&mut v, &rat(1), &corner[b]);
            candidates.push(v);
        }
    }
    for _ in 0..ATTEMPTS {
        let mut v = QVec::new();
        for c in corner {
            qvec_axpy(&mut v, &rat(rng.gen_range(-3..=3)), c);
        }
        candidates.push(v);
    }
    for a in candidates {
        let mp = minimal_polynomial(alg, e, &a);
        if mp.len() <= 2 {
            continue;
        }
        for r in rational_roots(&mp) {
            let lin = vec![-r.clone(), Rational::one()];
            let mut part = vec![Rational::one()];
            let mut rest = mp.clone();
            loop {
                let (qt, rm) = divrem(&rest, &lin);
                if !rm.is_empty() {
                    break;
                }
                rest = qt;
                part = mul(&part, &lin);
            }
            if rest.len() <= 1 {
                continue;
            }
            // s·part + t·rest = 1, so t·rest ≡ 1 mod part and ≡ 0 mod rest
            let (_, _, t) = ext_gcd(&part, &rest);
            let f = mul(&t, &rest);
            let e1 = eval(alg, e, &a, &f);
            let mut e2 = e.clone();
            qvec_axpy(&mut e2, &rat(-1), &e1);
            if !e1.is_empty() && !e2.is_empty() {
                return Some((e1, e2));
            }
        }
    }
    None
}

fn minimal_polynomial(alg: &CyclotomicAlgebra, e: &QVec, a: &QVec) -> Vec<Rational> {
    // keys (0, basis) for coordinates, (1, j) tags the power a^j
    let mut ech: Echelon<(u8, usize), Rational> = Echelon::new();
    let mut pow = e.clone();
    for j in 0.. {
        let mut v: BTreeMap<(u8, usize), Rational> = pow.iter().map(|(&k, c)| ((0, k), c.clone())).collect();
        v.insert((1, j), Rational::one());
        let r = ech.reduce(v);
        if r.keys().all(|(t, _)| *t == 1) {
            let mut p = vec![Rational::zero(); j + 1];
            for ((_, k), c) in r {
                p[k] = c;
            }
            let lead = p[j].clone();
            return p.into_iter().map(|c| c / &lead).collect();
        }
        ech.insert(r);
        pow = alg.multiply(&pow, a);
    }
    unreachable!()
}

fn eval(alg: &CyclotomicAlgebra, e: &QVec, a: &QVec, f: &[Rational]) -> QVec {
    let mut acc = QVec::new();
    for c in f.iter().rev() {
        acc = alg.multiply(&acc, a);
        qvec_axpy(&mut acc, c, e);
    }
    acc
}

/// Character of `A e`, as `ν ↦ dim_q e(ν) A e`.
fn projective_character(alg: &CyclotomicAlgebra, e: &QVec) -> Character {
    let mut groups: BTreeMap<(Vec<usize>, i64), Echelon<usize, Rational>> = BTreeMap::new();
    for b in 0..alg.dim() {
        let v = alg.multiply(&QVec::from([(b, rat(1))]), e);
        if v.is_empty() {
            continue;
        }
        groups.entry((alg.left_word(b), alg.degree(b))).or_default().insert(v);
    }
    let mut ch = Character::new();
    for ((w, d), ech) in groups {
        if ech.rank() > 0 {
            ch.entry(w).or_default().add_term(d, rat(ech.rank() as i64));
        }
    }
    ch
}

fn normalize(ch: Character) -> Character {
    let lo = ch.values().filter_map(|p| p.min_degree()).min().unwrap_or(0);
    ch.into_iter().map(|(w, p): (Vec<usize>, LaurentPoly)| (w, p.shift(-lo))).collect()
}

// ---- dense univariate polynomials over Q, lowest coefficient first

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let s = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            r[s + j] -= &c * y;
        }
        q[s] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
fn ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![Rational::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lead = r0.last().cloned().unwrap_or_else(Rational::one);
    let norm = |p: Vec<Rational>| p.into_iter().map(|c| c / &lead).collect::<Vec<_>>();
    (norm(r0), norm(s0), norm(t0))
}

const TRIAL_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > TRIAL_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots, by the rational root theorem.
fn rational_roots(p: &[Rational]) -> Vec<Rational> {
    let mut roots = Vec::new();
    let mut p = trim(p.to_vec());
    if p.is_empty() {
        return roots;
    }
    if p[0].is_zero() {
        roots.push(Rational::zero());
        while p[0].is_zero() {
            p.remove(0);
        }
    }
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let (Some(num), Some(lead)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else { return roots };
    for a in &num {
        for b in &lead {
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(*a) * sign, BigInt::from(*b));
                if roots.contains(&r) {
                    continue;
                }
                let mut v = Rational::zero();
                for c in p.iter().rev() {
                    v = v * &r + c;
                }
                if v.is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots
}
