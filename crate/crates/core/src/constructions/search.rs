// SPDX-License-Identifier: Apache-2.0

//! Bounded breadth-first search for terms generating given elements.
//!
//! Level 0 holds the candidates and the window diagonals with their
//! complements. Level `n + 1` applies complement, `c_i` and `s_[i,j]` (for
//! `i, j` in the window) to the level-`n` frontier, then joins and meets each
//! frontier item with every item found so far. Elements are deduplicated on their normal form.
//! Nothing here decides that a target is *not* generated: an exhausted or
//! truncated search only reports it as unknown.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::window_transpositions;
use crate::ops::GammaSpec;
use crate::qe::Element;
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub depth: usize,
    /// Coordinates `0..window` are used for diagonals, cylindrifications and
    /// transpositions.
    pub window: usize,
    /// Stop adding elements once the store holds this many.
    pub max_items: usize,
    /// Discard results with more cells than this.
    pub max_cells: usize,
}

impl SearchBounds {
    pub fn new(depth: usize, window: usize) -> Self {
        SearchBounds {
            depth,
            window,
            max_items: 2000,
            max_cells: 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found { witness: Term, depth: usize },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    pub target: Element,
    pub status: SearchStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub hits: Vec<SearchHit>,
    /// A resource cap cut the search short of `bounds.depth`.
    pub truncated: bool,
    /// Distinct elements generated.
    pub explored: usize,
}

impl SearchReport {
    pub fn all_found(&self) -> bool {
        self.hits
            .iter()
            .all(|h| matches!(h.status, SearchStatus::Found { .. }))
    }
}

struct Store {
    items: Vec<(Term, Element)>,
    seen: BTreeSet<Element>,
    hits: Vec<SearchHit>,
    bounds: SearchBounds,
    truncated: bool,
}

impl Store {
    fn full(&self) -> bool {
        self.items.len() >= self.bounds.max_items
    }

    fn done(&self) -> bool {
        self.hits
            .iter()
            .all(|h| matches!(h.status, SearchStatus::Found { .. }))
    }

    fn offer(&mut self, term: Term, x: Element, level: usize) {
        if self.seen.contains(&x) {
            return;
        }
        if x.cell_count() > self.bounds.max_cells || self.full() {
            self.truncated = true;
            return;
        }
        for hit in &mut self.hits {
            if hit.status == SearchStatus::Unknown && hit.target.equal(&x) {
                hit.status = SearchStatus::Found {
                    witness: term.clone(),
                    depth: level,
                };
            }
        }
        self.seen.insert(x.clone());
        self.items.push((term, x));
    }
}

pub fn generator_search(
    targets: &[Element],
    candidates: &[(Term, Element)],
    bounds: SearchBounds,
) -> SearchReport {
    let mut store = Store {
        items: Vec::new(),
        seen: BTreeSet::new(),
        hits: targets
            .iter()
            .map(|t| SearchHit {
                target: t.clone(),
                status: SearchStatus::Unknown,
            })
            .collect(),
        bounds,
        truncated: false,
    };
    for (t, x) in candidates {
        store.offer(t.clone(), x.clone(), 0);
    }
    for i in 0..bounds.window {
        for j in i + 1..bounds.window {
            let d = Element::diagonal(i, j);
            store.offer(Term::Diagonal(i, j).not(), d.complement(), 0);
            store.offer(Term::Diagonal(i, j), d, 0);
        }
    }

    let window: BTreeSet<usize> = (0..bounds.window).collect();
    let swaps = window_transpositions(&window);
    let mut frontier = 0..store.items.len();
    for level in 1..=bounds.depth {
        if store.done() || store.full() {
            break;
        }
        let start = store.items.len();
        for f in frontier.clone() {
            let (t, x) = store.items[f].clone();
            store.offer(t.clone().not(), x.complement(), level);
            for &i in &window {
                let g = GammaSpec::single(i);
                store.offer(t.clone().cylindrify(g.clone()), x.cylindrify(&g), level);
            }
            for s in &swaps {
                store.offer(t.clone().substitute(s.clone()), x.substitute(s), level);
            }
        }
        for f in frontier.clone() {
            for o in 0..start {
                if o > f && frontier.contains(&o) {
                    continue;
                }
                let (ft, fx) = store.items[f].clone();
                let (ot, ox) = store.items[o].clone();
                store.offer(ot.clone().join(ft.clone()), ox.join(&fx), level);
                store.offer(ot.meet(ft), ox.meet(&fx), level);
                if store.done() {
                    break;
                }
            }
        }
        frontier = start..store.items.len();
    }
    SearchReport {
        hits: store.hits,
        truncated: store.truncated,
        explored: store.items.len(),
    }
}
