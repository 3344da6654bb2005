// SPDX-License-Identifier: Apache-2.0

//! Decision procedures over `V`.
//!
//! An [`Element`] is a finite union of [`Cell`]s, each a conjunction of signed
//! atoms. Elements are kept normalized: every stored cell is satisfiable, so
//! an element is empty iff it has no cells. Satisfiability, projection of
//! finitely many coordinates, and projection of the tail contribution are
//! all exact (see [`crate::linear`] for the encoding).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::ControlFlow;

use crate::constraint::{Atom, AtomClass, Point};
use crate::linear::{System, Var};

/// A signed atom: the hyperplane itself or its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal {
    atom: Atom,
    positive: bool,
}

impl Literal {
    pub fn new(atom: Atom, positive: bool) -> Self {
        Literal { atom, positive }
    }

    pub fn positive(atom: Atom) -> Self {
        Self::new(atom, true)
    }

    pub fn negative(atom: Atom) -> Self {
        Self::new(atom, false)
    }

    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn negated(&self) -> Self {
        Literal::new(self.atom.clone(), !self.positive)
    }

    /// Constant truth value for literals over Full or Empty atoms.
    pub fn truth(&self) -> Option<bool> {
        match self.atom.class() {
            AtomClass::Proper => None,
            AtomClass::Full => Some(self.positive),
            AtomClass::Empty => Some(!self.positive),
        }
    }

    pub fn eval(&self, point: &Point) -> bool {
        self.atom.eval(point) == self.positive
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .positive
            .cmp(&self.positive)
            .then_with(|| self.atom.cmp(&other.atom))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// A conjunction of literals with no constant literals and no complementary
/// pair. The empty cell is all of `V`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    literals: BTreeSet<Literal>,
}

impl Cell {
    pub fn full() -> Self {
        Self::default()
    }

    /// Builds a cell, dropping vacuous literals. Returns `None` when the
    /// conjunction is syntactically unsatisfiable.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Option<Self> {
        let mut cell = Cell::full();
        for lit in literals {
            cell = cell.with(lit)?;
        }
        Some(cell)
    }

    pub fn with(mut self, literal: Literal) -> Option<Self> {
        match literal.truth() {
            Some(true) => Some(self),
            Some(false) => None,
            None if self.literals.contains(&literal.negated()) => None,
            None => {
                self.literals.insert(literal);
                Some(self)
            }
        }
    }

    pub fn merge(&self, other: &Cell) -> Option<Self> {
        other
            .literals
            .iter()
            .cloned()
            .try_fold(self.clone(), Cell::with)
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn has_literal(&self, literal: &Literal) -> bool {
        self.literals.contains(literal)
    }

    pub fn is_subset(&self, other: &Cell) -> bool {
        self.literals.is_subset(&other.literals)
    }

    pub fn contains(&self, point: &Point) -> bool {
        self.literals.iter().all(|l| l.eval(point))
    }

    /// Union of the explicit supports of the cell's atoms.
    pub fn support(&self) -> BTreeSet<usize> {
        self.literals
            .iter()
            .flat_map(|l| l.atom.coeffs().support())
            .collect()
    }

    fn system(&self, extra: impl IntoIterator<Item = usize>) -> System {
        System::new(self.literals.iter().map(|l| (&l.atom, l.positive)), extra)
    }

    fn from_system(system: System) -> Option<Self> {
        Cell::new(
            system
                .into_literals()
                .into_iter()
                .map(|(atom, positive)| Literal::new(atom, positive)),
        )
    }

    /// A point of `V` in the cell, or `None` if the cell is empty.
    pub fn witness(&self) -> Option<Point> {
        let point = self.system([]).solve();
        if let Some(p) = &point {
            debug_assert!(self.contains(p), "witness {p} fails cell {self}");
        }
        point
    }

    pub fn is_sat(&self) -> bool {
        self.witness().is_some()
    }

    /// `∃ s_v (v ∈ coords)`: the cylindrification of the cell over a finite
    /// coordinate set. `None` when the residual is syntactically
    /// contradictory; an unsatisfiable input may also leave an unsatisfiable
    /// residual.
    pub fn eliminate_finite(&self, coords: &BTreeSet<usize>) -> Option<Self> {
        let mut system = self.system(coords.iter().copied());
        for &v in coords {
            system.eliminate(Var::Coord(v));
        }
        Cell::from_system(system)
    }

    /// Quantifies out every coordinate beyond the cell's explicit window, so
    /// the result has tail 0 everywhere.
    pub fn eliminate_tail(&self) -> Option<Self> {
        let mut system = self.system([]);
        system.eliminate(Var::Tail);
        Cell::from_system(system)
    }

    /// Cylindrification over all coordinates outside `retained`.
    pub fn project_cofinite(&self, retained: &BTreeSet<usize>) -> Option<Self> {
        let mut system = self.system(retained.iter().copied());
        let dropped: Vec<usize> = system
            .domain()
            .iter()
            .filter(|i| !retained.contains(i))
            .copied()
            .collect();
        for v in dropped {
            system.eliminate(Var::Coord(v));
        }
        system.eliminate(Var::Tail);
        Cell::from_system(system)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("1");
        }
        for (n, lit) in self.literals.iter().enumerate() {
            if n > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

/// A member of `℘(V)` in normalized disjunctive form.
///
/// Invariants: every cell is satisfiable; no cell's literals are a superset
/// of another's; a full cell absorbs everything else. The empty set has no
/// cells and `V` is the single empty cell.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Element {
    cells: BTreeSet<Cell>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut cells = BTreeSet::new();
        cells.insert(Cell::full());
        Element { cells }
    }

    pub fn from_atom(atom: Atom) -> Self {
        Self::from_literal(Literal::positive(atom))
    }

    pub fn from_literal(literal: Literal) -> Self {
        Self::from_cells(Cell::new([literal]))
    }

    /// Normalizes an arbitrary union of cells.
    pub fn from_cells(cells: impl IntoIterator<Item = Cell>) -> Self {
        let mut sat: Vec<Cell> = Vec::new();
        for cell in cells {
            if cell.is_empty() {
                return Self::one();
            }
            if cell.is_sat() {
                sat.push(cell);
            }
        }
        Self::from_sat_cells(sat)
    }

    /// Like [`Element::from_cells`] for cells already known satisfiable.
    pub(crate) fn from_sat_cells(mut cells: Vec<Cell>) -> Self {
        if cells.iter().any(Cell::is_empty) {
            return Self::one();
        }
        cells.sort_by_key(Cell::len);
        cells.dedup();
        let mut kept: Vec<Cell> = Vec::with_capacity(cells.len());
        for cell in cells {
            if !kept.iter().any(|k| k.is_subset(&cell)) {
                kept.push(cell);
            }
        }
        Element {
            cells: kept.into_iter().collect(),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_full_syntactically(&self) -> bool {
        self.cells.len() == 1 && self.cells.iter().all(Cell::is_empty)
    }

    pub fn contains(&self, point: &Point) -> bool {
        self.cells.iter().any(|c| c.contains(point))
    }

    pub fn witness(&self) -> Option<Point> {
        self.cells.iter().find_map(Cell::witness)
    }

    pub fn atoms(&self) -> BTreeSet<&Atom> {
        self.cells
            .iter()
            .flat_map(|c| c.literals().map(Literal::atom))
            .collect()
    }

    /// Union of explicit supports of all atoms.
    pub fn support(&self) -> BTreeSet<usize> {
        self.cells.iter().flat_map(Cell::support).collect()
    }

    /// A point in `self` but not in `other`, if any.
    pub fn difference_witness(&self, other: &Element) -> Option<Point> {
        let others: Vec<Cell> = other.cells.iter().cloned().collect();
        self.cells.iter().find_map(|cell| outside(cell, &others))
    }

    /// `self ⊆ other`.
    pub fn leq(&self, other: &Element) -> bool {
        self.difference_witness(other).is_none()
    }

    /// A point in exactly one of the two sets, or `None` when they are equal.
    pub fn separating_witness(&self, other: &Element) -> Option<Point> {
        if self == other {
            return None;
        }
        self.difference_witness(other)
            .or_else(|| other.difference_witness(self))
    }

    /// Semantic equality in `℘(V)`.
    pub fn equal(&self, other: &Element) -> bool {
        self.separating_witness(other).is_none()
    }
}

/// A point of the satisfiable cell `base` lying in none of `others`.
///
/// Case splits on one atom at a time. Literals decided by `base` are removed
/// from the other cells, cells contradicting `base` are dropped, and a cell
/// reduced to nothing means `base` is covered.
fn outside(base: &Cell, others: &[Cell]) -> Option<Point> {
    let mut rest: Vec<Cell> = Vec::with_capacity(others.len());
    for other in others {
        if other.literals().any(|l| base.has_literal(&l.negated())) {
            continue;
        }
        let reduced = Cell {
            literals: other
                .literals
                .iter()
                .filter(|l| !base.has_literal(l))
                .cloned()
                .collect(),
        };
        if reduced.is_empty() {
            return None;
        }
        if base.merge(&reduced).is_some_and(|m| m.is_sat()) {
            rest.push(reduced);
        }
    }
    if rest.is_empty() {
        return base.witness();
    }
    if let Some(unit) = rest.iter().position(|c| c.len() == 1) {
        let lit = rest
            .swap_remove(unit)
            .literals
            .pop_first()
            .expect("unit cell");
        let next = base.clone().with(lit.negated()).filter(Cell::is_sat)?;
        return outside(&next, &rest);
    }
    let mut counts: BTreeMap<&Atom, usize> = BTreeMap::new();
    for lit in rest.iter().flat_map(|c| c.literals()) {
        *counts.entry(lit.atom()).or_default() += 1;
    }
    let (atom, _) = counts
        .into_iter()
        .rev()
        .max_by_key(|&(_, n)| n)
        .expect("nonempty cells");
    let atom = atom.clone();
    [true, false].into_iter().find_map(|positive| {
        let next = base.clone().with(Literal::new(atom.clone(), positive))?;
        if next.is_sat() {
            outside(&next, &rest)
        } else {
            None
        }
    })
}

/// Enumerates satisfiable cells covering `base ∖ ⋃ others` by choosing, for
/// each cell in `others`, one literal to negate.
///
/// Cells disjoint from the current branch are dropped, a cell containing it
/// closes the branch, and the cell with the fewest viable negations is
/// branched on first.
pub(crate) fn refine_against(
    base: &Cell,
    others: &[&Cell],
    sink: &mut dyn FnMut(&Cell) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut live: Vec<&Cell> = Vec::with_capacity(others.len());
    let mut best: Option<(usize, Vec<Cell>)> = None;
    for &other in others {
        if other.literals().any(|l| base.has_literal(&l.negated())) {
            continue;
        }
        if !base.merge(other).is_some_and(|m| m.is_sat()) {
            continue;
        }
        let branches: Vec<Cell> = other
            .literals()
            .filter_map(|l| base.clone().with(l.negated()))
            .filter(Cell::is_sat)
            .collect();
        if branches.is_empty() {
            return ControlFlow::Continue(());
        }
        if best.as_ref().is_none_or(|(_, b)| branches.len() < b.len()) {
            best = Some((live.len(), branches));
        }
        live.push(other);
    }
    let Some((chosen, branches)) = best else {
        return sink(base);
    };
    live.remove(chosen);
    for next in &branches {
        refine_against(next, &live, sink)?;
    }
    ControlFlow::Continue(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return f.write_str("0");
        }
        for (n, cell) in self.cells.iter().enumerate() {
            if n > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{cell}")?;
        }
        Ok(())
    }
}
