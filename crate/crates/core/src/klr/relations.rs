//! The defining relations of `R(β)` as generator expressions ending in `e(ν)`.

use num_traits::Zero;

use super::{perm, Gen, KlrAlgebra, Word};
use crate::arith::{rat, Rational};

pub type Expr = Vec<(Rational, Vec<Gen>)>;

fn term(c: i64, gens: Vec<Gen>) -> (Rational, Vec<Gen>) {
    (rat(c), gens)
}

fn xmono(e: &[u32]) -> Vec<Gen> {
    let mut g = Vec::new();
    for (k, &p) in e.iter().enumerate() {
        for _ in 0..p {
            g.push(Gen::X(k));
        }
    }
    g
}

fn with_e(mut g: Vec<Gen>, nu: &Word) -> Vec<Gen> {
    g.push(Gen::E(nu.clone()));
    g
}

impl KlrAlgebra {
    /// Every defining relation multiplied on the right by `e(ν)`, as `(name, lhs - rhs)`.
    pub fn defining_relations(&self, nu: &Word) -> Vec<(String, Expr)> {
        let n = self.n();
        let mut out: Vec<(String, Expr)> = Vec::new();
        let e = |g: Vec<Gen>| with_e(g, nu);
        for mu in self.words() {
            let c = if mu == nu { 1 } else { 0 };
            let mut ex = vec![term(1, vec![Gen::E(mu.clone()), Gen::E(nu.clone())])];
            if c == 1 {
                ex.push(term(-1, vec![Gen::E(nu.clone())]));
            }
            out.push((format!("e({mu:?})e({nu:?})"), ex));
        }
        for k in 0..n {
            out.push((
                format!("x{k} e = e x{k}"),
                vec![term(1, e(vec![Gen::X(k)])), term(-1, vec![Gen::E(nu.clone()), Gen::X(k), Gen::E(nu.clone())])],
            ));
            for l in 0..n {
                out.push((format!("x{k}x{l}"), vec![term(1, e(vec![Gen::X(k), Gen::X(l)])), term(-1, e(vec![Gen::X(l), Gen::X(k)]))]));
            }
        }
        for l in 0..n.saturating_sub(1) {
            let s_nu = perm::act(&perm::from_word(n, &[l]), nu);
            out.push((
                format!("t{l} e"),
                vec![term(1, e(vec![Gen::T(l)])), term(-1, vec![Gen::E(s_nu.clone()), Gen::T(l), Gen::E(nu.clone())])],
            ));
            for k in 0..n.saturating_sub(1) {
                if k.abs_diff(l) > 1 {
                    out.push((format!("t{k}t{l}"), vec![term(1, e(vec![Gen::T(k), Gen::T(l)])), term(-1, e(vec![Gen::T(l), Gen::T(k)]))]));
                }
            }
            for m in 0..n {
                let sm = if m == l {
                    l + 1
                } else if m == l + 1 {
                    l
                } else {
                    m
                };
                let mut ex = vec![term(1, e(vec![Gen::T(l), Gen::X(m)])), term(-1, e(vec![Gen::X(sm), Gen::T(l)]))];
                if nu[l] == nu[l + 1] {
                    if m == l {
                        ex.push(term(1, e(vec![])));
                    } else if m == l + 1 {
                        ex.push(term(-1, e(vec![])));
                    }
                }
                out.push((format!("t{l}x{m}"), ex));
            }
            let mut ex = vec![term(1, e(vec![Gen::T(l), Gen::T(l)]))];
            for ((p, q), t) in self.qfamily().poly(nu[l], nu[l + 1]) {
                let mut ev = vec![0u32; n];
                ev[l] = p;
                ev[l + 1] = q;
                ex.push((-t, e(xmono(&ev))));
            }
            out.push((format!("t{l}^2"), ex));
        }
        for k in 0..n.saturating_sub(2) {
            let mut ex =
                vec![term(1, e(vec![Gen::T(k + 1), Gen::T(k), Gen::T(k + 1)])), term(-1, e(vec![Gen::T(k), Gen::T(k + 1), Gen::T(k)]))];
            if nu[k] == nu[k + 2] {
                for ((p, q), t) in self.qfamily().poly(nu[k], nu[k + 1]) {
                    for r in 0..p {
                        let mut ev = vec![0u32; n];
                        ev[k] = r;
                        ev[k + 2] = p - 1 - r;
                        ev[k + 1] = q;
                        if !t.is_zero() {
                            ex.push((-t.clone(), e(xmono(&ev))));
                        }
                    }
                }
            }
            out.push((format!("braid{k}"), ex));
        }
        out
    }
}
