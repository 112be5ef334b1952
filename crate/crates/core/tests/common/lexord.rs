//! Ordinals below `w^K` as coefficient tuples under the lexicographic order,
//! with addition defined by transfinite recursion on the right argument.

use std::cmp::Ordering;

use pseudotree::{StdExp, StdOrd};

/// Index 0 holds the coefficient of `w^(K-1)`.
pub type Tuple = Vec<u64>;

pub fn lex_cmp(a: &Tuple, b: &Tuple) -> Ordering {
    a.cmp(b)
}

fn is_zero(t: &Tuple) -> bool {
    t.iter().all(|&c| c == 0)
}

/// `a + b` from `a + 0 = a`, `a + (b+1) = (a + b) + 1` and continuity at
/// limits. The supremum of `a + b[n]` is read off two consecutive members of
/// the fundamental sequence: the first coordinate where they differ grows
/// without bound, so the supremum bumps the coordinate before it.
pub fn add(a: &Tuple, b: &Tuple) -> Tuple {
    let k = a.len();
    if is_zero(b) {
        return a.clone();
    }
    if b[k - 1] > 0 {
        let mut pred = b.clone();
        pred[k - 1] -= 1;
        let mut s = add(a, &pred);
        s[k - 1] += 1;
        return s;
    }
    let i = (0..k).rev().find(|&i| b[i] > 0).expect("nonzero");
    let member = |n: u64| {
        let mut m = b.clone();
        m[i] -= 1;
        m[i + 1] = n;
        add(a, &m)
    };
    let (s2, s3) = (member(2), member(3));
    let d = (0..k)
        .find(|&j| s2[j] != s3[j])
        .expect("strictly increasing");
    assert!(d > 0, "supremum leaves w^K");
    let mut sup = s2;
    sup[d - 1] += 1;
    for c in sup.iter_mut().skip(d) {
        *c = 0;
    }
    sup
}

pub fn to_std(t: &Tuple) -> StdOrd {
    let k = t.len();
    StdOrd::from_pairs(
        t.iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (StdExp::natural((k - 1 - i) as u64), c)),
    )
    .expect("decreasing exponents")
}

/// Every tuple of length `k` with coefficients at most `max_coeff`.
pub fn all_tuples(k: usize, max_coeff: u64) -> Vec<Tuple> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Tuple| {
                (0..=max_coeff).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}
