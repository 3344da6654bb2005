// SPDX-License-Identifier: Apache-2.0

mod common;

use std::collections::BTreeMap;

use common::raw_eval;
use polyadic_core::constraint::frac;
use polyadic_core::{Atom, AtomClass, CoeffSeq, Point, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=8).prop_map(|(n, d)| frac(n, d))
}

fn raw_atom() -> impl Strategy<Value = (Rational, BTreeMap<usize, Rational>, Rational)> {
    (
        rational(),
        prop::collection::btree_map(0usize..6, rational(), 0..4),
        prop_oneof![Just(frac(0, 1)), rational()],
    )
}

fn point() -> impl Strategy<Value = Point> {
    prop::collection::btree_map(0usize..10, rational(), 0..6).prop_map(|m| m.into_iter().collect())
}

fn build(rhs: &Rational, explicit: &BTreeMap<usize, Rational>, tail: &Rational) -> Atom {
    Atom::hyperplane(rhs.clone(), CoeffSeq::new(explicit.clone(), tail.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_preserves_membership((rhs, explicit, tail) in raw_atom(), p in point()) {
        let atom = build(&rhs, &explicit, &tail);
        prop_assert_eq!(atom.eval(&p), raw_eval(&rhs, &explicit, &tail, &p));
    }

    #[test]
    fn canonicalization_is_idempotent((rhs, explicit, tail) in raw_atom()) {
        let atom = build(&rhs, &explicit, &tail);
        let again = Atom::hyperplane(atom.rhs().clone(), atom.coeffs().clone());
        prop_assert_eq!(again, atom);
    }

    #[test]
    fn rescaled_atoms_share_a_form(
        (rhs, explicit, tail) in raw_atom(),
        factor in rational().prop_filter("nonzero", |f| *f != frac(0, 1)),
        p in point(),
    ) {
        let a = build(&rhs, &explicit, &tail);
        let scaled: BTreeMap<usize, Rational> = explicit.iter().map(|(&i, v)| (i, v * &factor)).collect();
        let b = build(&(&rhs * &factor), &scaled, &(&tail * &factor));
        if a.class() == AtomClass::Proper {
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.eval(&p), b.eval(&p));
        }
    }

    #[test]
    fn diagonal_is_symmetric(i in 0usize..12, j in 0usize..12) {
        prop_assert_eq!(Atom::diagonal(i, j), Atom::diagonal(j, i));
    }
}

#[test]
fn canonical_forms_agree_only_with_agreeing_sets() {
    // Pairs with equal canonical forms found by a sweep over small atoms must
    // agree on every probe point.
    let vals = [frac(-1, 1), frac(0, 1), frac(1, 2), frac(2, 1)];
    let probes: Vec<Point> = (0..40)
        .map(|k| {
            (0..4)
                .map(|i| (i, frac(((k * 7 + i as i64 * 3) % 9) - 4, 1 + (k % 3))))
                .collect()
        })
        .collect();
    let mut by_form: BTreeMap<Atom, (Rational, BTreeMap<usize, Rational>, Rational)> =
        BTreeMap::new();
    for r0 in &vals {
        for r1 in &vals {
            for tail in &vals {
                for rhs in &vals {
                    let explicit: BTreeMap<usize, Rational> =
                        [(0, r0.clone()), (1, r1.clone())].into();
                    let atom = build(rhs, &explicit, tail);
                    if atom.class() != AtomClass::Proper {
                        continue;
                    }
                    if let Some((rhs2, ex2, tail2)) = by_form.get(&atom) {
                        for p in &probes {
                            assert_eq!(
                                raw_eval(rhs, &explicit, tail, p),
                                raw_eval(rhs2, ex2, tail2, p),
                                "{atom}"
                            );
                        }
                    } else {
                        by_form.insert(atom, (rhs.clone(), explicit, tail.clone()));
                    }
                }
            }
        }
    }
}
