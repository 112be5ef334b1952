//! Random terms over the cut exponent order.

use pseudotree::{CutExp, CutOrd, Rational};
use rand::Rng;

fn exponent(rng: &mut impl Rng, nonstd: bool) -> CutExp {
    if nonstd {
        CutExp::NonStd(Rational::new(
            rng.gen_range(-12i64..=12),
            rng.gen_range(1i64..=4),
        ))
    } else {
        CutExp::Nat(rng.gen_range(0..6))
    }
}

/// Up to `max_terms` terms, mixing standard and non-standard exponents.
pub fn random_term(rng: &mut impl Rng, max_terms: usize) -> CutOrd {
    let n = rng.gen_range(0..=max_terms);
    let mut exps: Vec<CutExp> = (0..n)
        .map(|_| {
            let nonstd = rng.gen_bool(0.5);
            exponent(rng, nonstd)
        })
        .collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    CutOrd::from_pairs(exps.into_iter().map(|e| (e, rng.gen_range(1..=4)))).unwrap()
}

/// Only non-standard exponents.
pub fn random_pure(rng: &mut impl Rng, max_terms: usize) -> CutOrd {
    let n = rng.gen_range(0..=max_terms);
    let mut exps: Vec<CutExp> = (0..n).map(|_| exponent(rng, true)).collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    CutOrd::from_pairs(exps.into_iter().map(|e| (e, rng.gen_range(1..=4)))).unwrap()
}
