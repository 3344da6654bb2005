// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use polyadic_core::constraint::{frac, int};
use polyadic_core::{Cell, Point, Rational};

/// `Σ r_i p_i = t` computed straight from an unnormalized description.
pub fn raw_eval(
    rhs: &Rational,
    explicit: &BTreeMap<usize, Rational>,
    tail: &Rational,
    p: &Point,
) -> bool {
    let lhs = p.entries().fold(Rational::zero(), |acc, (i, v)| {
        acc + explicit.get(&i).unwrap_or(tail) * v
    });
    &lhs == rhs
}

/// Literal-by-literal membership, independent of the engine's cell code.
pub fn cell_holds(cell: &Cell, p: &Point) -> bool {
    cell.literals().all(|l| {
        let a = l.atom();
        let explicit: BTreeMap<usize, Rational> =
            a.coeffs().explicit().map(|(i, v)| (i, v.clone())).collect();
        raw_eval(a.rhs(), &explicit, a.coeffs().tail(), p) == l.is_positive()
    })
}

/// `k/12` for `k ∈ -6..=6`.
pub fn grid_values() -> Vec<Rational> {
    (-6..=6).map(|k| frac(k, 12)).collect()
}

/// Every point with coordinates `coords` drawn from `values`, zero elsewhere.
pub fn grid(coords: &[usize], values: &[Rational]) -> Vec<Point> {
    let mut points = vec![Point::zero()];
    for &c in coords {
        let mut next = Vec::with_capacity(points.len() * values.len());
        for p in &points {
            for v in values {
                let mut q = p.clone();
                q.set(c, v.clone());
                next.push(q);
            }
        }
        points = next;
    }
    points
}

pub fn q(n: i64) -> Rational {
    int(n)
}
