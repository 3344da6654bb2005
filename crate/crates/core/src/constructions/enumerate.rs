// SPDX-License-Identifier: Apache-2.0

//! Bounded enumeration of `G(X) = (X^S ∪ Po)^{**}`: sums of products of
//! signed elements drawn from `X^S` and a finite slice of `Po`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use itertools::Itertools;

use super::s_closure_terms;
use crate::constraint::Atom;
use crate::qe::Element;
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GBounds {
    /// Most signed factors in one product.
    pub product_width: usize,
    /// Most products in one sum.
    pub sum_width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GMembership {
    /// The target is the value of this sum of products.
    Found(Term),
    /// No sum within the bounds equals the target. Says nothing about `G(X)`
    /// itself.
    NotFoundWithinBounds,
}

impl GMembership {
    pub fn is_found(&self) -> bool {
        matches!(self, GMembership::Found(_))
    }
}

pub struct GEnumeration {
    base: Vec<(Term, Element)>,
    products: Vec<(Term, Element)>,
    bounds: GBounds,
}

impl GEnumeration {
    /// `generators` are closed under the window transpositions before use;
    /// `pool` is the finite slice of `Po` standing in for all of it.
    pub fn new(
        generators: Vec<(Term, Element)>,
        pool: &[Atom],
        window: &BTreeSet<usize>,
        bounds: GBounds,
    ) -> Self {
        let mut base = s_closure_terms(generators, window);
        base.extend(
            pool.iter()
                .map(|a| (Term::Atom(a.clone()), Element::from_atom(a.clone()))),
        );
        let signed: Vec<(Term, Element)> = base
            .iter()
            .flat_map(|(t, x)| [(t.clone(), x.clone()), (t.clone().not(), x.complement())])
            .collect();

        let mut products = Vec::new();
        let mut seen: BTreeMap<Element, ()> = BTreeMap::new();
        extend_products(
            &signed,
            0,
            bounds.product_width,
            None,
            &Element::one(),
            &mut |term, x| {
                if !x.is_empty() && seen.insert(x.clone(), ()).is_none() {
                    products.push((term, x.clone()));
                }
            },
        );
        GEnumeration {
            base,
            products,
            bounds,
        }
    }

    /// `X^S` followed by the pool, each with its defining term.
    pub fn base(&self) -> &[(Term, Element)] {
        &self.base
    }

    /// Distinct nonzero products, the empty product (1) included.
    pub fn products(&self) -> &[(Term, Element)] {
        &self.products
    }

    /// Distinct sums of at most `sum_width` products, starting with the
    /// empty sum (0).
    pub fn sums(&self) -> impl Iterator<Item = (Term, Element)> + '_ {
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        (0..=self.bounds.sum_width)
            .flat_map(move |k| (0..self.products.len()).combinations(k))
            .filter_map(move |picks| {
                let (term, x) = self.sum_of(&picks);
                seen.insert(x.clone()).then_some((term, x))
            })
    }

    fn sum_of(&self, picks: &[usize]) -> (Term, Element) {
        picks
            .iter()
            .fold((Term::Zero, Element::zero()), |(t, x), &i| {
                let (pt, px) = &self.products[i];
                let t = if t == Term::Zero {
                    pt.clone()
                } else {
                    t.join(pt.clone())
                };
                (t, x.join(px))
            })
    }

    /// Decides whether `target` is one of the enumerated sums.
    ///
    /// Only products below the target can occur in a sum equal to it. If
    /// their union misses part of the target, no sum within the bounds
    /// reaches it; otherwise the covering subsets are searched by size.
    pub fn member(&self, target: &Element) -> GMembership {
        if target.is_empty() {
            return GMembership::Found(Term::Zero);
        }
        let below: Vec<usize> = (0..self.products.len())
            .filter(|&i| self.products[i].1.leq(target))
            .collect();
        let union = below
            .iter()
            .fold(Element::zero(), |acc, &i| acc.join(&self.products[i].1));
        if !union.equal(target) {
            return GMembership::NotFoundWithinBounds;
        }
        for k in 1..=self.bounds.sum_width {
            for picks in below.iter().copied().combinations(k) {
                let (term, x) = self.sum_of(&picks);
                if x.equal(target) {
                    return GMembership::Found(term);
                }
            }
        }
        GMembership::NotFoundWithinBounds
    }
}

/// Depth-first products of signed factors with strictly increasing base
/// index. Factor `2i` is base item `i`, `2i + 1` its complement. Empty
/// partial products are not extended.
fn extend_products(
    signed: &[(Term, Element)],
    from: usize,
    remaining: usize,
    term: Option<&Term>,
    value: &Element,
    sink: &mut dyn FnMut(Term, &Element),
) {
    sink(term.cloned().unwrap_or(Term::One), value);
    if remaining == 0 || value.is_empty() {
        return;
    }
    for base in from..signed.len() / 2 {
        for (ft, fx) in &signed[2 * base..2 * base + 2] {
            let next = value.meet(fx);
            let next_term = match term {
                Some(t) => t.clone().meet(ft.clone()),
                None => ft.clone(),
            };
            extend_products(
                signed,
                base + 1,
                remaining - 1,
                Some(&next_term),
                &next,
                sink,
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{a_nat, po_pool};

    fn window(n: usize) -> BTreeSet<usize> {
        (0..n).collect()
    }

    fn gens(xs: &[Element]) -> Vec<(Term, Element)> {
        xs.iter()
            .enumerate()
            .map(|(i, x)| (Term::var(alloc::format!("x{i}")), x.clone()))
            .collect()
    }

    #[test]
    fn generator_is_member() {
        let g = GEnumeration::new(
            gens(&[a_nat(0)]),
            &[],
            &window(2),
            GBounds {
                product_width: 1,
                sum_width: 1,
            },
        );
        assert!(g.member(&a_nat(0)).is_found());
        let sums: Vec<Element> = g.sums().map(|(_, x)| x).collect();
        assert!(sums.contains(&Element::zero()));
        assert!(sums.contains(&Element::one()));
        assert!(sums.contains(&a_nat(0)));
        assert!(sums.contains(&a_nat(0).complement()));
    }

    #[test]
    fn other_pof_atoms_not_reached() {
        let pool = po_pool(2, 1);
        let g = GEnumeration::new(
            gens(&[a_nat(0)]),
            &pool,
            &window(2),
            GBounds {
                product_width: 2,
                sum_width: 2,
            },
        );
        assert_eq!(g.member(&a_nat(1)), GMembership::NotFoundWithinBounds);
        let d01 = Element::diagonal(0, 1);
        let target = d01.meet(&a_nat(0)).join(&d01.complement());
        match g.member(&target) {
            GMembership::Found(t) => {
                let mut env = crate::term::Env::new();
                env.insert("x0".into(), a_nat(0));
                assert!(t.eval(&env).unwrap().equal(&target));
            }
            other => panic!("expected a sum, got {other:?}"),
        }
    }
}
