//! Permutations of positions `0..n` in one-line notation: `p[i]` is the image of `i`.

pub type Perm = Vec<u8>;

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

pub fn is_identity(p: &[u8]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u8 == x)
}

pub fn length(p: &[u8]) -> usize {
    let mut c = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                c += 1;
            }
        }
    }
    c
}

pub fn inverse(p: &[u8]) -> Perm {
    let mut q = vec![0u8; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x as usize] = i as u8;
    }
    q
}

/// `s_l ∘ p`
pub fn left_mul_s(l: usize, p: &[u8]) -> Perm {
    p.iter()
        .map(|&x| {
            if x as usize == l {
                (l + 1) as u8
            } else if x as usize == l + 1 {
                l as u8
            } else {
                x
            }
        })
        .collect()
}

pub fn is_left_descent(l: usize, p: &[u8]) -> bool {
    let pos_l = p.iter().position(|&x| x as usize == l).unwrap();
    let pos_l1 = p.iter().position(|&x| x as usize == l + 1).unwrap();
    pos_l > pos_l1
}

pub fn min_left_descent(p: &[u8]) -> Option<usize> {
    let inv = inverse(p);
    (0..p.len().saturating_sub(1)).find(|&l| inv[l] > inv[l + 1])
}

/// Lexicographically smallest reduced word `l_1 … l_r` with `p = s_{l_1} ∘ … ∘ s_{l_r}`.
pub fn canonical_word(p: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = p.to_vec();
    while let Some(l) = min_left_descent(&p) {
        out.push(l);
        p = left_mul_s(l, &p);
    }
    out
}

/// Product of simple transpositions `s_{w[0]} ∘ s_{w[1]} ∘ …`.
pub fn from_word(n: usize, w: &[usize]) -> Perm {
    w.iter().rev().fold(identity(n), |p, &l| left_mul_s(l, &p))
}

/// The word `w·ν` with `(w·ν)_{w(i)} = ν_i`.
pub fn act<T: Copy + Default>(p: &[u8], nu: &[T]) -> Vec<T> {
    let mut out = vec![T::default(); nu.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = nu[i];
    }
    out
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}
