// SPDX-License-Identifier: Apache-2.0

//! The hyperplane families `Pol`, `Po`, `Pof`, the generators `a_n`, and the
//! closure machinery built on them.
//!
//! - `Pol`: every `[t, r]` with `r` eventually 0 or eventually 1. Any
//!   eventually constant `r` rescales into this shape, so every atom is in
//!   `Pol`.
//! - `Po`: proper members of `Pol` whose coefficient range contains 0
//!   (automatic for tail 0), together with the diagonals.
//! - `Pof`: `[t, 𝟏]`, all coefficients equal. These are pairwise disjoint.

mod enumerate;
mod poz;
mod search;

pub use enumerate::{GBounds, GEnumeration, GMembership};
pub use poz::{
    decompose_sigma, generator_name, in_poz, simplicity_witness, PozVerdict, SigmaDecomposition,
};
pub use search::{generator_search, SearchBounds, SearchHit, SearchReport, SearchStatus};

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::constraint::{int, Atom, AtomClass, Rational};
use crate::ops::Transformation;
use crate::qe::Element;
use crate::term::Term;

/// Most specific family an atom belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomFamily {
    /// `[t, 𝟏]`; also in `Pol`.
    Pof,
    /// Has a zero coefficient somewhere, or is a diagonal; also in `Pol`.
    Po,
    /// In `Pol` only. This includes the trivial atoms `[0, 𝟎]` and `[1, 𝟎]`.
    Pol,
}

impl fmt::Display for AtomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AtomFamily::Pof => "Pof",
            AtomFamily::Po => "Po",
            AtomFamily::Pol => "Pol",
        })
    }
}

pub fn classify(atom: &Atom) -> AtomFamily {
    if atom.class() != AtomClass::Proper {
        return AtomFamily::Pol;
    }
    let coeffs = atom.coeffs();
    if coeffs.support().next().is_none() {
        AtomFamily::Pof
    } else if coeffs.tail().is_zero() || coeffs.explicit().any(|(_, c)| c.is_zero()) {
        AtomFamily::Po
    } else {
        AtomFamily::Pol
    }
}

pub fn is_po(atom: &Atom) -> bool {
    classify(atom) == AtomFamily::Po
}

/// `a_t = [t, 𝟏]`.
pub fn a(t: Rational) -> Element {
    Element::from_atom(Atom::sum_equals(t))
}

/// `a_n` for a natural index.
pub fn a_nat(n: u64) -> Element {
    a(Rational::from_integer(n.into()))
}

/// The default finite slice of `Po`: `d_ij` for `i < j < window` and
/// `s_i = q` for `i < window`, `|q| ≤ height`.
pub fn po_pool(window: usize, height: i64) -> Vec<Atom> {
    let mut pool = Vec::new();
    for i in 0..window {
        for j in i + 1..window {
            pool.push(Atom::diagonal(i, j));
        }
    }
    for i in 0..window {
        for q in -height..=height {
            pool.push(Atom::coordinate_equals(i, int(q)));
        }
    }
    pool
}

/// All transpositions `[i, j]` with `i < j` inside the window.
pub(crate) fn window_transpositions(window: &BTreeSet<usize>) -> Vec<Transformation> {
    let coords: Vec<usize> = window.iter().copied().collect();
    let mut out = Vec::new();
    for (n, &i) in coords.iter().enumerate() {
        for &j in &coords[n + 1..] {
            out.push(Transformation::transposition(i, j));
        }
    }
    out
}

/// Closure under window transpositions, keeping the term that produced each
/// element. Duplicates are removed up to semantic equality.
pub(crate) fn s_closure_terms(
    items: Vec<(Term, Element)>,
    window: &BTreeSet<usize>,
) -> Vec<(Term, Element)> {
    let swaps = window_transpositions(window);
    let mut out: Vec<(Term, Element)> = Vec::new();
    let mut seen: BTreeSet<Element> = BTreeSet::new();
    let mut queue: VecDeque<(Term, Element)> = items.into();
    while let Some((term, x)) = queue.pop_front() {
        if seen.contains(&x) || out.iter().any(|(_, y)| y.equal(&x)) {
            continue;
        }
        seen.insert(x.clone());
        for t in &swaps {
            queue.push_back((term.clone().substitute(t.clone()), x.substitute(t)));
        }
        out.push((term, x));
    }
    out
}

/// `X^S = {s_τ x : x ∈ X, τ a transposition}` with `τ` ranging over the
/// transpositions of `window`. The full `X^S` is infinite as soon as some
/// element has explicit support; the window bounds it.
pub fn s_closure(xs: &[Element], window: &BTreeSet<usize>) -> Vec<Element> {
    let items = xs.iter().map(|x| (Term::One, x.clone())).collect();
    s_closure_terms(items, window)
        .into_iter()
        .map(|(_, x)| x)
        .collect()
}
