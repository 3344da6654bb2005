// SPDX-License-Identifier: Apache-2.0

//! Single-generator fusion.
//!
//! Two elements `x, y` that do not depend on coordinates `k ≠ l` are packed
//! into one element `b = x·d_kl + y·−d_kl`, and recovered from it with
//! `x = c_k(b·d_kl)` and `y = c_k(b·−d_kl)`. The fresh coordinates play the
//! role of the extra dimensions of a dilation: every concrete element has
//! finite explicit support, so coordinates above a high-water mark are
//! always available.
//!
//! The recovery identities need `k, l ∉ Δx ∪ Δy`. Elements whose dimension
//! set is cofinite (anything with a nonzero coefficient tail, such as `a_n`)
//! depend on every coordinate and cannot be fused this way.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::Error;
use crate::ops::GammaSpec;
use crate::qe::Element;
use crate::term::{Branch, Env, Term};

/// Fresh coordinates above a base window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dilation {
    base_window: BTreeSet<usize>,
    fresh: Vec<usize>,
}

impl Dilation {
    pub fn new(base_window: BTreeSet<usize>, fresh: Vec<usize>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for &c in &fresh {
            if base_window.contains(&c) {
                return Err(Error::FreshInBase(c));
            }
            if !seen.insert(c) {
                return Err(Error::SameFreshCoordinate(c));
            }
        }
        Ok(Dilation { base_window, fresh })
    }

    /// The `2 * pairs` smallest coordinates above every explicit support of
    /// `inputs`.
    pub fn above(inputs: &[Element], pairs: usize) -> Self {
        let base_window: BTreeSet<usize> = inputs.iter().flat_map(Element::support).collect();
        let start = base_window.iter().next_back().map_or(0, |m| m + 1);
        Dilation {
            base_window,
            fresh: (start..start + 2 * pairs).collect(),
        }
    }

    pub fn base_window(&self) -> &BTreeSet<usize> {
        &self.base_window
    }

    /// Fresh coordinates taken two at a time.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.fresh.chunks_exact(2).map(|p| (p[0], p[1]))
    }
}

/// `b = x·d_kl + y·−d_kl` without checking the recovery preconditions.
pub fn fused(x: &Element, y: &Element, k: usize, l: usize) -> Element {
    let d = Element::diagonal(k, l);
    x.meet(&d).join(&y.meet(&d.complement()))
}

fn depends_on(x: &Element, coord: usize) -> bool {
    !x.cylindrify_at(coord).equal(x)
}

/// Fuses `x` and `y` along the fresh pair `(k, l)`.
pub fn fuse_pair(x: &Element, y: &Element, k: usize, l: usize) -> Result<Element, Error> {
    if k == l {
        return Err(Error::SameFreshCoordinate(k));
    }
    for (input, which) in [(x, "first"), (y, "second")] {
        for coord in [k, l] {
            if depends_on(input, coord) {
                return Err(Error::CoordinateInDimension { coord, which });
            }
        }
    }
    Ok(fused(x, y, k, l))
}

/// `c_k(b·d_kl)` or `c_k(b·−d_kl)`.
pub fn recover(b: &Element, k: usize, l: usize, branch: Branch) -> Element {
    let d = Element::diagonal(k, l);
    let mask = match branch {
        Branch::First => d,
        Branch::Second => d.complement(),
    };
    b.meet(&mask).cylindrify_at(k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionCertificate {
    pub b: Element,
    pub k: usize,
    pub l: usize,
    pub x_back: Element,
    pub y_back: Element,
    pub ok: bool,
}

/// Fuses, recovers both branches, and checks them against the inputs.
pub fn certify(x: &Element, y: &Element, k: usize, l: usize) -> Result<FusionCertificate, Error> {
    let b = fuse_pair(x, y, k, l)?;
    let x_back = recover(&b, k, l, Branch::First);
    let y_back = recover(&b, k, l, Branch::Second);
    let ok = x_back.equal(x) && y_back.equal(y);
    Ok(FusionCertificate {
        b,
        k,
        l,
        x_back,
        y_back,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusedGenerators {
    pub b: Element,
    /// `recovery_terms[i]` evaluated with `b` bound to the fused element
    /// yields `gens[i]`.
    pub recovery_terms: Vec<Term>,
    pub verified: bool,
}

/// Name the fused element is bound to in recovery terms.
pub const FUSED_VAR: &str = "b";

/// Left fold of [`fuse_pair`] over `gens`, one fresh pair per step.
pub fn fuse_all(gens: &[Element], dilation: &Dilation) -> Result<FusedGenerators, Error> {
    let Some((first, rest)) = gens.split_first() else {
        return Ok(FusedGenerators {
            b: Element::one(),
            recovery_terms: Vec::new(),
            verified: true,
        });
    };
    let pairs: Vec<(usize, usize)> = dilation.pairs().collect();
    if pairs.len() < rest.len() {
        return Err(Error::InsufficientFresh {
            required: 2 * rest.len(),
            available: dilation.fresh.len(),
        });
    }
    let mut b = first.clone();
    for (g, &(k, l)) in rest.iter().zip(&pairs) {
        b = fuse_pair(&b, g, k, l)?;
    }

    // Generator i > 0 sits in the second branch of fusion step i, under the
    // first branches of every later step; generator 0 under all first branches.
    let steps = rest.len();
    let recovery_terms: Vec<Term> = (0..gens.len())
        .map(|i| {
            let mut t = Term::var(FUSED_VAR);
            for &(k, l) in pairs[i..steps].iter().rev() {
                t = t.recover(k, l, Branch::First);
            }
            if i > 0 {
                let (k, l) = pairs[i - 1];
                t = t.recover(k, l, Branch::Second);
            }
            t
        })
        .collect();

    let mut env = Env::new();
    env.insert(FUSED_VAR.into(), b.clone());
    let verified = recovery_terms
        .iter()
        .zip(gens)
        .all(|(t, g)| t.eval(&env).is_ok_and(|v| v.equal(g)));
    Ok(FusedGenerators {
        b,
        recovery_terms,
        verified,
    })
}

/// `x ∈ Nr_J`: `x` is unchanged by cylindrification over every coordinate
/// outside `J`.
pub fn compress_check(x: &Element, retained: &BTreeSet<usize>) -> bool {
    x.cylindrify(&GammaSpec::Cofinite(retained.clone()))
        .equal(x)
}
