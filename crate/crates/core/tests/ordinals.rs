mod common;

use common::cut::{random_pure, random_term};
use common::lexord::{self, all_tuples};
use proptest::prelude::*;
use pseudotree::ordinal::OrderChoice;
use pseudotree::rng::seeded;
use pseudotree::{dense_between, ord_add, ord_cmp, ord_sub, split, AnyOrd, CutOrd, StdOrd};

#[test]
fn arithmetic_matches_the_lexicographic_model() {
    let all = all_tuples(3, 3);
    for a in &all {
        for b in &all {
            let (x, y) = (lexord::to_std(a), lexord::to_std(b));
            assert_eq!(ord_cmp(&x, &y), lexord::lex_cmp(a, b), "{x} vs {y}");
            assert_eq!(
                ord_add(&x, &y),
                lexord::to_std(&lexord::add(a, b)),
                "{x} + {y}"
            );
        }
    }
}

#[test]
fn subtraction_inverts_addition() {
    let all = all_tuples(3, 2);
    for a in &all {
        for b in &all {
            let (x, y) = (lexord::to_std(a), lexord::to_std(b));
            match ord_sub(&x, &y) {
                Ok(d) => {
                    assert!(x <= y);
                    let d_tuple: Vec<u64> = (0..3)
                        .map(|i| {
                            d.terms()
                                .iter()
                                .find(|t| t.exp == pseudotree::StdExp::natural(2 - i as u64))
                                .map_or(0, |t| t.coeff)
                        })
                        .collect();
                    assert_eq!(lexord::add(a, &d_tuple), *b);
                }
                Err(_) => assert!(x > y),
            }
        }
    }
}

#[test]
fn absorption_below_omega_cubed() {
    let w3 = vec![1, 0, 0, 0];
    let one = vec![0, 0, 0, 1];
    let w = vec![0, 0, 1, 0];
    assert_eq!(lexord::add(&one, &w3), w3);
    assert_eq!(lexord::add(&w, &w3), w3);
    for (a, b) in [(&one, &w3), (&w, &w3), (&w3, &w), (&w3, &one)] {
        let (x, y) = (lexord::to_std(a), lexord::to_std(b));
        assert_eq!(ord_add(&x, &y), lexord::to_std(&lexord::add(a, b)));
    }
    let w3 = StdOrd::omega_pow(3);
    assert_eq!(ord_add(&StdOrd::natural(1), &w3), w3);
}

#[test]
fn split_of_the_reference_term() {
    let a = AnyOrd::parse("w^{3/2'}*2 + w^{4} + 5", OrderChoice::Cut, 3).unwrap();
    let (i, w) = a.split();
    assert_eq!(i.to_string(), "w^{3/2'}*2");
    assert_eq!(w.to_string(), "w^{4} + 5");
    assert_eq!(i.add(&w).unwrap(), a);
}

#[test]
fn split_identity_on_random_cut_terms() {
    let mut rng = seeded(31);
    for _ in 0..3000 {
        let a = random_term(&mut rng, 6);
        let s = split(&a);
        assert!(s.ill_founded.is_pure());
        assert!(s
            .well_founded
            .terms()
            .iter()
            .all(|t| matches!(t.exp, pseudotree::CutExp::Nat(_))));
        assert_eq!(ord_add(&s.ill_founded, &s.well_founded), a);
    }
}

#[test]
fn dense_between_lands_strictly_inside() {
    let mut rng = seeded(32);
    let mut tried = 0;
    while tried < 1000 {
        let (x, y) = (random_pure(&mut rng, 4), random_pure(&mut rng, 4));
        let (a, b) = match ord_cmp(&x, &y) {
            std::cmp::Ordering::Less => (x, y),
            std::cmp::Ordering::Greater => (y, x),
            std::cmp::Ordering::Equal => continue,
        };
        tried += 1;
        let c = dense_between(&a, &b).unwrap();
        assert!(c.is_pure());
        assert!(a < c && c < b, "{a} < {c} < {b}");
    }
}

#[test]
fn dense_between_refuses_bad_input() {
    let a = CutOrd::parse("w^{1/2'}").unwrap();
    let b = CutOrd::parse("w^{1/2'} + 3").unwrap();
    assert!(dense_between(&a, &b).is_err());
    assert!(dense_between(&a, &a).is_err());
}

fn arb_std() -> impl Strategy<Value = StdOrd> {
    (prop::collection::vec(0u64..4, 4), 0u64..3).prop_map(|(coeffs, top)| {
        let base = lexord::to_std(&coeffs);
        // add a nested-exponent head now and then
        if top > 0 {
            let head = StdOrd::parse(&format!("w^{{w^{{1}}}}*{top}")).unwrap();
            ord_add(&head, &base)
        } else {
            base
        }
    })
}

proptest! {
    #[test]
    fn addition_is_associative(a in arb_std(), b in arb_std(), c in arb_std()) {
        prop_assert_eq!(ord_add(&ord_add(&a, &b), &c), ord_add(&a, &ord_add(&b, &c)));
    }

    #[test]
    fn addition_is_monotone(a in arb_std(), b in arb_std(), c in arb_std()) {
        if b < c {
            prop_assert!(ord_add(&a, &b) < ord_add(&a, &c));
            prop_assert!(ord_add(&b, &a) <= ord_add(&c, &a));
        }
        prop_assert!(a <= ord_add(&a, &b));
        prop_assert!(b <= ord_add(&a, &b));
    }

    #[test]
    fn text_round_trip(a in arb_std(), seed in any::<u64>()) {
        prop_assert_eq!(StdOrd::parse(&a.to_string()).unwrap(), a);
        let c = random_term(&mut seeded(seed), 5);
        prop_assert_eq!(CutOrd::parse(&c.to_string()).unwrap(), c);
    }
}
