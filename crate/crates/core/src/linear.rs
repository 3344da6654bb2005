// SPDX-License-Identifier: Apache-2.0

//! Linear equations and disequations over a finite working domain.
//!
//! Given a finite set `D` of coordinates containing every explicit support in
//! play, an atom `Σ r_i s_i = t` becomes `Σ_{i∈D} r_i s_i + tail·z = t` with
//! `z = Σ_{i∉D} s_i`. Every atom's contribution from outside `D` is its tail
//! times the same `z`, so one shared variable covers all of them, and any
//! rational `z` is realized by a single coordinate outside `D`.
//!
//! All eliminations here rely on ℚ being infinite: a disequation that still
//! mentions the eliminated variable rules out at most one of its values, and
//! finitely many exclusions never exhaust ℚ.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::constraint::{Atom, CoeffSeq, Point, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Var {
    Coord(usize),
    /// Sum of all coordinates outside the working domain.
    Tail,
}

#[derive(Clone, Debug)]
struct Row {
    form: BTreeMap<Var, Rational>,
    rhs: Rational,
    equation: bool,
}

impl Row {
    fn coef(&self, v: Var) -> Option<&Rational> {
        self.form.get(&v)
    }

    /// `self -= factor * other`.
    fn sub_scaled(&mut self, factor: &Rational, other: &Row) {
        for (v, c) in &other.form {
            let entry = self.form.entry(*v).or_insert_with(Rational::zero);
            *entry -= factor * c;
            if entry.is_zero() {
                self.form.remove(v);
            }
        }
        self.rhs -= factor * &other.rhs;
    }

    /// Use `other` (which mentions `v`) to remove `v` from `self`.
    fn eliminate_with(&mut self, v: Var, other: &Row) {
        if let Some(b) = self.coef(v).cloned() {
            let factor = b / other.coef(v).expect("pivot row mentions pivot var");
            self.sub_scaled(&factor, other);
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct System {
    domain: BTreeSet<usize>,
    rows: Vec<Row>,
}

impl System {
    /// Builds the system for a conjunction of signed atoms. The working
    /// domain is every explicit support plus `extra`.
    pub(crate) fn new<'a>(
        literals: impl IntoIterator<Item = (&'a Atom, bool)> + Clone,
        extra: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut domain: BTreeSet<usize> = extra.into_iter().collect();
        for (atom, _) in literals.clone() {
            domain.extend(atom.coeffs().support());
        }
        let rows = literals
            .into_iter()
            .map(|(atom, positive)| {
                let coeffs = atom.coeffs();
                let mut form: BTreeMap<Var, Rational> = domain
                    .iter()
                    .map(|&i| (Var::Coord(i), coeffs.get(i).clone()))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if !coeffs.tail().is_zero() {
                    form.insert(Var::Tail, coeffs.tail().clone());
                }
                Row {
                    form,
                    rhs: atom.rhs().clone(),
                    equation: positive,
                }
            })
            .collect();
        System { domain, rows }
    }

    fn row_atom(&self, row: &Row) -> Atom {
        let get = |v: Var| row.form.get(&v).cloned().unwrap_or_else(Rational::zero);
        let coeffs = CoeffSeq::new(
            self.domain.iter().map(|&i| (i, get(Var::Coord(i)))),
            get(Var::Tail),
        );
        Atom::hyperplane(row.rhs.clone(), coeffs)
    }

    /// Projects `v` out of the conjunction.
    ///
    /// With an equation on `v`, solve for `v` and substitute (the pivot is
    /// the smallest canonical atom among candidates). Without one, every
    /// disequation on `v` is dropped: over an infinite field each excludes
    /// at most one value of `v`.
    pub(crate) fn eliminate(&mut self, v: Var) {
        if let Var::Coord(i) = v {
            debug_assert!(
                self.domain.contains(&i),
                "eliminated coordinate outside domain"
            );
        }
        let pivot = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.equation && r.coef(v).is_some())
            .min_by_key(|(_, r)| self.row_atom(r))
            .map(|(n, _)| n);
        match pivot {
            Some(n) => {
                let pivot = self.rows.remove(n);
                for row in &mut self.rows {
                    row.eliminate_with(v, &pivot);
                }
            }
            None => self.rows.retain(|r| r.coef(v).is_none()),
        }
    }

    pub(crate) fn domain(&self) -> &BTreeSet<usize> {
        &self.domain
    }

    /// Converts back to signed atoms over the working domain. Eliminated
    /// coordinates end up with an explicit zero coefficient.
    pub(crate) fn into_literals(self) -> Vec<(Atom, bool)> {
        self.rows
            .iter()
            .map(|r| (self.row_atom(r), r.equation))
            .collect()
    }

    /// Decides satisfiability over `V`, returning a witness point.
    pub(crate) fn solve(&self) -> Option<Point> {
        // Fully reduced pivot rows, each normalized to coefficient 1 on its pivot.
        let mut pivots: Vec<(Var, Row)> = Vec::new();
        for row in self.rows.iter().filter(|r| r.equation) {
            let mut row = row.clone();
            for (v, p) in &pivots {
                row.eliminate_with(*v, p);
            }
            let Some((&v, c)) = row.form.iter().next() else {
                if row.rhs.is_zero() {
                    continue;
                }
                return None;
            };
            let inv = c.recip();
            for c in row.form.values_mut() {
                *c *= &inv;
            }
            row.rhs *= &inv;
            for (_, p) in &mut pivots {
                p.eliminate_with(v, &row);
            }
            pivots.push((v, row));
        }

        let mut disequations = Vec::new();
        for row in self.rows.iter().filter(|r| !r.equation) {
            let mut row = row.clone();
            for (v, p) in &pivots {
                row.eliminate_with(*v, p);
            }
            if row.form.is_empty() {
                if row.rhs.is_zero() {
                    return None;
                }
            } else {
                disequations.push(row);
            }
        }

        // Free variables are assigned in increasing order. A disequation is
        // settled when its last free variable is assigned, and excludes at
        // most one value of it.
        let pivot_vars: BTreeSet<Var> = pivots.iter().map(|(v, _)| *v).collect();
        let free: BTreeSet<Var> = pivots
            .iter()
            .flat_map(|(_, r)| r.form.keys())
            .chain(disequations.iter().flat_map(|r| r.form.keys()))
            .filter(|v| !pivot_vars.contains(v))
            .copied()
            .collect();
        let mut values: BTreeMap<Var, Rational> = BTreeMap::new();
        for &v in &free {
            let excluded: Vec<Rational> = disequations
                .iter()
                .filter(|r| r.form.keys().next_back() == Some(&v))
                .map(|r| {
                    let known = r
                        .form
                        .iter()
                        .filter(|(u, _)| **u != v)
                        .fold(Rational::zero(), |acc, (u, c)| acc + c * &values[u]);
                    (&r.rhs - known) / &r.form[&v]
                })
                .collect();
            let mut candidate = Rational::zero();
            while excluded.contains(&candidate) {
                candidate += Rational::one();
            }
            values.insert(v, candidate);
        }
        for (v, row) in &pivots {
            let rest = row
                .form
                .iter()
                .filter(|(u, _)| *u != v)
                .fold(Rational::zero(), |acc, (u, c)| acc + c * &values[u]);
            values.insert(*v, &row.rhs - rest);
        }

        let fresh = self.domain.iter().next_back().map_or(0, |m| m + 1);
        let point = values
            .into_iter()
            .map(|(v, value)| match v {
                Var::Coord(i) => (i, value),
                Var::Tail => (fresh, value),
            })
            .collect();
        Some(point)
    }
}
