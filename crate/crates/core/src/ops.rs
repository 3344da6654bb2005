// SPDX-License-Identifier: Apache-2.0

//! The polyadic equality operations on [`Element`]s.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use crate::constraint::{Atom, CoeffSeq, Point, Rational};
use crate::qe::{refine_against, Cell, Element, Literal};

/// The coordinate set `Γ` of a cylindrification `c_(Γ)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GammaSpec {
    /// Quantify exactly these coordinates.
    Finite(BTreeSet<usize>),
    /// Quantify every coordinate except these.
    Cofinite(BTreeSet<usize>),
}

impl GammaSpec {
    pub fn single(coord: usize) -> Self {
        GammaSpec::Finite([coord].into_iter().collect())
    }

    pub fn contains(&self, coord: usize) -> bool {
        match self {
            GammaSpec::Finite(s) => s.contains(&coord),
            GammaSpec::Cofinite(s) => !s.contains(&coord),
        }
    }

    /// Image of `Γ` under a permutation of coordinates.
    pub fn permuted(&self, t: &Transformation) -> Self {
        let image = |s: &BTreeSet<usize>| s.iter().map(|&i| t.apply(i)).collect();
        match self {
            GammaSpec::Finite(s) => GammaSpec::Finite(image(s)),
            GammaSpec::Cofinite(s) => GammaSpec::Cofinite(image(s)),
        }
    }
}

/// A map `τ: ω → ω` that is the identity outside a finite set.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Transformation {
    moved: BTreeMap<usize, usize>,
}

impl Transformation {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Transformation {
            moved: pairs.into_iter().filter(|(i, j)| i != j).collect(),
        }
    }

    /// The transposition `[i, j]`.
    pub fn transposition(i: usize, j: usize) -> Self {
        Self::new([(i, j), (j, i)])
    }

    pub fn apply(&self, coord: usize) -> usize {
        self.moved.get(&coord).copied().unwrap_or(coord)
    }

    pub fn moved(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.moved.iter().map(|(&i, &j)| (i, j))
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// `Some((i, j))` when this is the transposition `[i, j]` with `i < j`.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let mut it = self.moved.iter();
        match (it.next(), it.next(), it.next()) {
            (Some((&i, &j)), Some((&k, &l)), None) if i == l && j == k => Some((i, j)),
            _ => None,
        }
    }

    /// Coordinates that are moved or hit by a moved coordinate.
    pub fn window(&self) -> BTreeSet<usize> {
        self.moved.iter().flat_map(|(&i, &j)| [i, j]).collect()
    }

    /// `p ∘ τ`.
    pub fn pull_back(&self, point: &Point) -> Point {
        let mut out = point.clone();
        for (i, j) in self.moved() {
            out.set(i, point.get(j));
        }
        out
    }

    /// Coefficients of `Σ r_i s_τ(i)` regrouped by coordinate.
    fn push_atom(&self, atom: &Atom) -> Atom {
        let coeffs = atom.coeffs();
        let mut domain = self.window();
        domain.extend(coeffs.support());
        let mut regrouped: BTreeMap<usize, Rational> =
            domain.iter().map(|&j| (j, Rational::default())).collect();
        for &i in &domain {
            *regrouped
                .get_mut(&self.apply(i))
                .expect("window is closed under τ") += coeffs.get(i);
        }
        Atom::hyperplane(
            atom.rhs().clone(),
            CoeffSeq::new(regrouped, coeffs.tail().clone()),
        )
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((i, j)) = self.as_transposition() {
            return write!(f, "[{i},{j}]");
        }
        f.write_str("{")?;
        for (n, (i, j)) in self.moved().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}->{j}")?;
        }
        f.write_str("}")
    }
}

/// The dimension set `Δx = {i : c_i x ≠ x}`.
///
/// Coordinates beyond an element's explicit window all behave alike, so
/// `Δx` is finite or cofinite: `i ∈ Δx` iff `exceptional` contains `i`
/// exclusive-or `tail_member`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimSet {
    pub exceptional: BTreeSet<usize>,
    pub tail_member: bool,
}

impl DimSet {
    pub fn contains(&self, coord: usize) -> bool {
        self.exceptional.contains(&coord) != self.tail_member
    }

    pub fn is_finite(&self) -> bool {
        !self.tail_member
    }
}

impl fmt::Display for DimSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<alloc::string::String> = self
            .exceptional
            .iter()
            .map(|i| alloc::format!("{i}"))
            .collect();
        if self.tail_member {
            write!(f, "all except {{{}}}", list.join(","))
        } else {
            write!(f, "{{{}}}", list.join(","))
        }
    }
}

impl Element {
    pub fn diagonal(i: usize, j: usize) -> Self {
        Element::from_atom(Atom::diagonal(i, j))
    }

    pub fn join(&self, other: &Element) -> Element {
        Element::from_sat_cells(self.cells().chain(other.cells()).cloned().collect())
    }

    pub fn meet(&self, other: &Element) -> Element {
        let mut cells = Vec::new();
        for c in self.cells() {
            for d in other.cells() {
                cells.extend(c.merge(d));
            }
        }
        Element::from_cells(cells)
    }

    /// Complement in `V`, distributed back into disjunctive form.
    pub fn complement(&self) -> Element {
        let others: Vec<&Cell> = self.cells().collect();
        let mut leaves = Vec::new();
        let _ = refine_against(&Cell::full(), &others, &mut |leaf| {
            leaves.push(leaf.clone());
            ControlFlow::Continue(())
        });
        Element::from_sat_cells(leaves)
    }

    pub fn cylindrify(&self, gamma: &GammaSpec) -> Element {
        let cells = self.cells().filter_map(|c| match gamma {
            GammaSpec::Finite(coords) => c.eliminate_finite(coords),
            GammaSpec::Cofinite(retained) => c.project_cofinite(retained),
        });
        Element::from_cells(cells)
    }

    /// `c_i`.
    pub fn cylindrify_at(&self, coord: usize) -> Element {
        self.cylindrify(&GammaSpec::single(coord))
    }

    /// `s_τ x = {s : s ∘ τ ∈ x}`, applied atom by atom.
    pub fn substitute(&self, t: &Transformation) -> Element {
        if t.is_identity() {
            return self.clone();
        }
        let cells = self.cells().filter_map(|c| {
            Cell::new(
                c.literals()
                    .map(|l| Literal::new(t.push_atom(l.atom()), l.is_positive())),
            )
        });
        Element::from_cells(cells)
    }

    pub fn dim_set(&self) -> DimSet {
        let window = self.support();
        let moves = |i: usize| !self.cylindrify_at(i).equal(self);
        let probe = window.iter().next_back().map_or(0, |m| m + 1);
        let tail_member = moves(probe);
        let exceptional = window
            .iter()
            .copied()
            .filter(|&i| moves(i) != tail_member)
            .collect();
        DimSet {
            exceptional,
            tail_member,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::int;

    fn a(n: i64) -> Element {
        Element::from_atom(Atom::sum_equals(int(n)))
    }

    fn hyper(rhs: i64, explicit: &[(usize, i64)], tail: i64) -> Element {
        Element::from_atom(Atom::hyperplane(
            int(rhs),
            CoeffSeq::new(explicit.iter().map(|&(i, v)| (i, int(v))), int(tail)),
        ))
    }

    fn point(entries: &[(usize, i64)]) -> Point {
        entries.iter().map(|&(i, v)| (i, int(v))).collect()
    }

    #[test]
    fn boolean_examples() {
        assert_eq!(Element::one().complement(), Element::zero());
        assert!(a(0).join(&a(0).complement()).equal(&Element::one()));
        let m = Element::diagonal(0, 1).meet(&a(0));
        assert!(m.contains(&point(&[(0, 1), (1, 1), (2, -2)])));
        assert!(!m.contains(&point(&[(0, 1), (1, 2)])));
    }

    #[test]
    fn cylindrify_examples() {
        assert_eq!(Element::diagonal(0, 1).cylindrify_at(0), Element::one());
        assert_eq!(Element::zero().cylindrify_at(3), Element::zero());
        let c = a(0).meet(&Element::diagonal(0, 1)).cylindrify_at(0);
        assert_eq!(c, hyper(0, &[(0, 0), (1, 2)], 1));
        assert!(c.equal(&hyper(0, &[(0, 0), (1, 2)], 1)));
    }

    #[test]
    fn substitute_examples() {
        let h = hyper(3, &[(0, 1), (1, 2)], 0);
        let swapped = h.substitute(&Transformation::transposition(0, 1));
        assert_eq!(swapped, hyper(3, &[(0, 2), (1, 1)], 0));
        let collapse = Transformation::new([(0, 1)]);
        assert_eq!(
            Element::diagonal(0, 1).substitute(&collapse),
            Element::one()
        );
        for n in 0..=10 {
            assert_eq!(a(n).substitute(&Transformation::transposition(0, 1)), a(n));
        }
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(Element::diagonal(0, 0), Element::one());
        assert!(Element::diagonal(0, 1).equal(&Element::diagonal(1, 0)));
    }

    #[test]
    fn dimension_sets() {
        let d = Element::diagonal(0, 1).dim_set();
        assert_eq!(d.exceptional, [0, 1].into_iter().collect());
        assert!(!d.tail_member);
        let da = a(0).dim_set();
        assert!(da.exceptional.is_empty() && da.tail_member);
        let one = Element::one().dim_set();
        assert!(one.exceptional.is_empty() && !one.tail_member);
        // explicit zero at 0, tail 1: every coordinate but 0 is in Δ
        let mixed = hyper(0, &[(0, 0)], 1).dim_set();
        assert!(mixed.tail_member && !mixed.contains(0) && mixed.contains(1));
    }

    #[test]
    fn cofinite_cylindrification_of_sum_atom() {
        assert_eq!(
            a(0).cylindrify(&GammaSpec::Cofinite(BTreeSet::new())),
            Element::one()
        );
    }
}
