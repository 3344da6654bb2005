// SPDX-License-Identifier: Apache-2.0

//! Seeded random atoms, cells, elements, points and terms for property
//! checks. The same seed always yields the same sequence.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constraint::{int, Atom, AtomClass, CoeffSeq, Point, Rational};
use crate::ops::Transformation;
use crate::qe::{Cell, Element, Literal};
use crate::term::Term;

pub struct Sampler {
    rng: ChaCha8Rng,
    /// Coordinates explicit entries are drawn from.
    pub window: Vec<usize>,
    /// Bound on numerators and denominators.
    pub height: i64,
    /// Chance that a sampled atom gets a nonzero coefficient tail.
    pub tail_chance: f64,
    pub max_cells: usize,
    pub max_literals: usize,
}

impl Sampler {
    pub fn new(seed: u64, window: usize, height: i64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            window: (0..window).collect(),
            height,
            tail_chance: 0.25,
            max_cells: 3,
            max_literals: 3,
        }
    }

    /// Only tail-0 atoms from here on.
    pub fn finite(mut self) -> Self {
        self.tail_chance = 0.0;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-self.height..=self.height);
        let d = self.rng.gen_range(1..=self.height.max(1));
        Rational::new(n.into(), d.into())
    }

    fn nonzero_rational(&mut self) -> Rational {
        loop {
            let q = self.rational();
            if q != int(0) {
                return q;
            }
        }
    }

    pub fn coord(&mut self) -> usize {
        *self.window.choose(&mut self.rng).expect("empty window")
    }

    /// A proper atom with one to three explicit entries.
    pub fn atom(&mut self) -> Atom {
        loop {
            let entries = self.rng.gen_range(1..=3.min(self.window.len()));
            let coords: Vec<usize> = self
                .window
                .choose_multiple(&mut self.rng, entries)
                .copied()
                .collect();
            let explicit: Vec<(usize, Rational)> =
                coords.into_iter().map(|c| (c, self.rational())).collect();
            let tail = if self.rng.gen_bool(self.tail_chance) {
                self.nonzero_rational()
            } else {
                int(0)
            };
            let rhs = self.rational();
            let atom = Atom::hyperplane(rhs, CoeffSeq::new(explicit, tail));
            if atom.class() == AtomClass::Proper {
                return atom;
            }
        }
    }

    /// A member of `Po`: a diagonal, `s_i = q`, or a tail-0 hyperplane.
    pub fn po_atom(&mut self) -> Atom {
        match self.rng.gen_range(0..3) {
            0 if self.window.len() >= 2 => {
                let pair: Vec<usize> = self
                    .window
                    .choose_multiple(&mut self.rng, 2)
                    .copied()
                    .collect();
                Atom::diagonal(pair[0].min(pair[1]), pair[0].max(pair[1]))
            }
            1 => {
                let c = self.coord();
                let q = self.rational();
                Atom::coordinate_equals(c, q)
            }
            _ => {
                let saved = self.tail_chance;
                self.tail_chance = 0.0;
                let atom = self.atom();
                self.tail_chance = saved;
                atom
            }
        }
    }

    pub fn literal(&mut self) -> Literal {
        let atom = self.atom();
        Literal::new(atom, self.rng.gen_bool(0.5))
    }

    /// A conjunction of one to `max_literals` literals, possibly
    /// unsatisfiable. `None` when two literals contradict syntactically.
    pub fn cell(&mut self) -> Option<Cell> {
        let n = self.rng.gen_range(1..=self.max_literals);
        Cell::new((0..n).map(|_| self.literal()).collect::<Vec<_>>())
    }

    pub fn element(&mut self) -> Element {
        let n = self.rng.gen_range(1..=self.max_cells);
        let cells: Vec<Cell> = (0..n).filter_map(|_| self.cell()).collect();
        Element::from_cells(cells)
    }

    pub fn nonzero_element(&mut self) -> Element {
        loop {
            let x = self.element();
            if !x.is_empty() {
                return x;
            }
        }
    }

    /// A point with entries on the window.
    pub fn point(&mut self) -> Point {
        let mut point = Point::zero();
        for c in self.window.clone() {
            if self.rng.gen_bool(0.7) {
                let v = self.rational();
                point.set(c, v);
            }
        }
        point
    }

    /// A map of the window into itself, not necessarily injective.
    pub fn transformation(&mut self) -> Transformation {
        let mut pairs = Vec::new();
        for c in self.window.clone() {
            if self.rng.gen_bool(0.5) {
                pairs.push((c, self.coord()));
            }
        }
        Transformation::new(pairs)
    }

    pub fn transposition(&mut self) -> Transformation {
        let pair: Vec<usize> = self
            .window
            .choose_multiple(&mut self.rng, 2)
            .copied()
            .collect();
        Transformation::transposition(pair[0], pair[1])
    }

    /// A Boolean term of at most `depth` operations over `leaves`.
    pub fn boolean_term(&mut self, leaves: &[Term], depth: usize) -> Term {
        if depth == 0 || self.rng.gen_bool(0.25) {
            return leaves.choose(&mut self.rng).expect("no leaves").clone();
        }
        match self.rng.gen_range(0..3) {
            0 => self.boolean_term(leaves, depth - 1).not(),
            1 => {
                let l = self.boolean_term(leaves, depth - 1);
                l.join(self.boolean_term(leaves, depth - 1))
            }
            _ => {
                let l = self.boolean_term(leaves, depth - 1);
                l.meet(self.boolean_term(leaves, depth - 1))
            }
        }
    }

    /// `k` distinct indices below `n`, in increasing order.
    pub fn subset(&mut self, n: usize, k: usize) -> Vec<usize> {
        let mut picked = rand::seq::index::sample(&mut self.rng, n, k.min(n)).into_vec();
        picked.sort_unstable();
        picked
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::is_po;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::new(7, 6, 8);
        let mut b = Sampler::new(7, 6, 8);
        for _ in 0..50 {
            assert_eq!(a.element(), b.element());
        }
    }

    #[test]
    fn po_atoms_are_po() {
        let mut s = Sampler::new(1, 4, 3);
        for _ in 0..200 {
            assert!(is_po(&s.po_atom()));
        }
    }

    #[test]
    fn finite_sampler_has_no_tails() {
        let mut s = Sampler::new(2, 6, 8).finite();
        for _ in 0..200 {
            let x = s.element();
            assert!(x.atoms().iter().all(|a| a.has_finite_support()));
        }
    }
}
