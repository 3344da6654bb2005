// SPDX-License-Identifier: Apache-2.0

//! The small ideal `Poz` of `G(0)` and its complementary ultrafilter `Neg`.
//!
//! `Poz` is taken to be the ideal of `G(0)` generated by `Po`: elements
//! covered by finitely many `Po` hyperplanes. A satisfiable cell with a
//! positive proper literal lies inside that hyperplane. A satisfiable cell
//! of negative literals only is the complement of finitely many proper
//! hyperplanes, which no finite union of hyperplanes covers over ℚ. So an
//! element of `G(0)` in normal form is in `Poz` iff each of its cells has a
//! positive literal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::is_po;
use crate::constraint::Atom;
use crate::error::Error;
use crate::fusion::Dilation;
use crate::ops::GammaSpec;
use crate::qe::Element;
use crate::term::{Env, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PozVerdict {
    pub in_poz: bool,
    /// One positive atom per cell when `in_poz`; the element lies below
    /// their union.
    pub covering: Vec<Atom>,
}

pub fn in_poz(x: &Element) -> Result<PozVerdict, Error> {
    if let Some(bad) = x.atoms().into_iter().find(|a| !is_po(a)) {
        return Err(Error::NotPoElement(format!("{bad}")));
    }
    let mut covering: BTreeSet<Atom> = BTreeSet::new();
    for cell in x.cells() {
        match cell.literals().find(|l| l.is_positive()) {
            Some(l) => {
                covering.insert(l.atom().clone());
            }
            None => {
                return Ok(PozVerdict {
                    in_poz: false,
                    covering: Vec::new(),
                })
            }
        }
    }
    Ok(PozVerdict {
        in_poz: true,
        covering: covering.into_iter().collect(),
    })
}

/// Name of the `i`-th generator variable in decomposed terms.
pub fn generator_name(i: usize) -> String {
    format!("y{i}")
}

/// The coefficients of `g = Σ y_i·σ_i + σ_n·∏ −y_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaDecomposition {
    /// `σ_0, ..., σ_{n-1}, σ_n`.
    pub sigma: Vec<Element>,
    /// The identity was checked by the engine and holds.
    pub verified: bool,
    pub classes: Vec<PozVerdict>,
}

/// Splits a term over pairwise disjoint generators `y_0..y_{n-1}` (bound to
/// `ys`, named by [`generator_name`]) into its σ-coefficients.
///
/// `σ_i` is `g` with `y_i ↦ 1` and every other generator `↦ 0`; `σ_n` sends
/// all of them to 0. The recombined sum is then compared with `g`
/// semantically.
pub fn decompose_sigma(g: &Term, ys: &[Element]) -> Result<SigmaDecomposition, Error> {
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            if !ys[i].meet(&ys[j]).is_empty() {
                return Err(Error::OverlappingGenerators(i, j));
            }
        }
    }
    let env_with = |hot: Option<usize>| -> Env {
        (0..ys.len())
            .map(|j| {
                let v = if Some(j) == hot {
                    Element::one()
                } else {
                    Element::zero()
                };
                (generator_name(j), v)
            })
            .collect::<BTreeMap<_, _>>()
    };
    let mut sigma = Vec::with_capacity(ys.len() + 1);
    for i in 0..ys.len() {
        sigma.push(g.eval(&env_with(Some(i)))?);
    }
    sigma.push(g.eval(&env_with(None))?);

    let actual: Env = ys
        .iter()
        .enumerate()
        .map(|(j, y)| (generator_name(j), y.clone()))
        .collect();
    let value = g.eval(&actual)?;
    let outside = ys
        .iter()
        .fold(Element::one(), |acc, y| acc.meet(&y.complement()));
    let recombined = ys
        .iter()
        .zip(&sigma)
        .fold(sigma[ys.len()].meet(&outside), |acc, (y, s)| {
            acc.join(&y.meet(s))
        });
    let verified = value.equal(&recombined);

    let classes = sigma.iter().map(in_poz).collect::<Result<_, _>>()?;
    Ok(SigmaDecomposition {
        sigma,
        verified,
        classes,
    })
}

/// Finds a finite `Γ` inside the explicit support plus two fresh
/// coordinates with `c_(Γ) x = 1`, witnessing that the ideal generated by a
/// nonzero `x` is everything. `None` for `x = 0` or when no such `Γ` is
/// found among the candidates tried.
pub fn simplicity_witness(x: &Element) -> Option<BTreeSet<usize>> {
    if x.is_empty() {
        return None;
    }
    let support = x.support();
    let fresh: Vec<usize> = Dilation::above(core::slice::from_ref(x), 1)
        .pairs()
        .flat_map(|(k, l)| [k, l])
        .collect();
    (0..=fresh.len())
        .map(|n| {
            let mut gamma = support.clone();
            gamma.extend(&fresh[..n]);
            gamma
        })
        .find(|gamma| {
            x.cylindrify(&GammaSpec::Finite(gamma.clone()))
                .equal(&Element::one())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::int;
    use crate::constructions::a_nat;

    fn d(i: usize, j: usize) -> Term {
        Term::Diagonal(i, j)
    }

    #[test]
    fn poz_examples() {
        let d01 = Element::diagonal(0, 1);
        let v = in_poz(&d01).unwrap();
        assert!(v.in_poz);
        assert_eq!(v.covering, [Atom::diagonal(0, 1)]);
        assert!(!in_poz(&d01.complement()).unwrap().in_poz);
        assert!(in_poz(&Element::zero()).unwrap().in_poz);
        assert!(!in_poz(&Element::one()).unwrap().in_poz);
        assert!(matches!(in_poz(&a_nat(0)), Err(Error::NotPoElement(_))));
    }

    #[test]
    fn sigma_examples() {
        let y = Term::var(generator_name(0));
        let g = y
            .clone()
            .meet(d(0, 1).not())
            .join(y.clone().not().meet(d(0, 1)));
        let out = decompose_sigma(&g, &[a_nat(0)]).unwrap();
        assert!(out.verified);
        assert!(out.sigma[0].equal(&Element::diagonal(0, 1).complement()));
        assert!(out.sigma[1].equal(&Element::diagonal(0, 1)));
        assert!(!out.classes[0].in_poz);
        assert!(out.classes[1].in_poz);

        let out = decompose_sigma(&y, &[a_nat(0)]).unwrap();
        assert_eq!(out.sigma, [Element::one(), Element::zero()]);
        assert!(out.verified);

        let out = decompose_sigma(&d(0, 1), &[a_nat(0)]).unwrap();
        assert_eq!(
            out.sigma,
            [Element::diagonal(0, 1), Element::diagonal(0, 1)]
        );
        assert!(out.verified);
    }

    #[test]
    fn sigma_rejects_overlap() {
        let y = Term::var(generator_name(0));
        let overlapping = [a_nat(0), Element::diagonal(0, 1)];
        assert_eq!(
            decompose_sigma(&y, &overlapping),
            Err(Error::OverlappingGenerators(0, 1))
        );
    }

    #[test]
    fn simplicity_examples() {
        assert_eq!(simplicity_witness(&Element::zero()), None);
        assert!(simplicity_witness(&a_nat(3)).is_some());
        let s = Element::from_atom(Atom::coordinate_equals(2, int(5))).complement();
        assert_eq!(simplicity_witness(&s), Some([2].into_iter().collect()));
    }
}
