// SPDX-License-Identifier: Apache-2.0

//! Expression trees over the algebra.
//!
//! A [`Term`] renders in the same surface syntax the command line parses:
//! `+`/`*`/`~` for join, meet and complement, `c{..}(..)` and `C{..}(..)` for
//! finite and cofinite cylindrification, `s[i,j](..)` and `s{i->j,..}(..)` for
//! substitutions.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;

use crate::constraint::{write_rational, Atom, Rational};
use crate::error::Error;
use crate::fusion;
use crate::ops::{GammaSpec, Transformation};
use crate::qe::Element;

/// Which generator a recovery extracts from a fused element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    /// `c_k(b · d_kl)`
    First,
    /// `c_k(b · −d_kl)`
    Second,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::First => "first",
            Branch::Second => "second",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Zero,
    One,
    Var(String),
    /// `a(t) = [t, 𝟏]`
    Sum(Rational),
    Diagonal(usize, usize),
    Atom(Atom),
    Not(Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Cylindrify(GammaSpec, Box<Term>),
    Substitute(Transformation, Box<Term>),
    Fuse(Box<Term>, Box<Term>, usize, usize),
    Recover(Box<Term>, usize, usize, Branch),
}

pub type Env = BTreeMap<String, Element>;

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Term::Not(Box::new(self))
    }

    pub fn join(self, other: Term) -> Self {
        Term::Join(Box::new(self), Box::new(other))
    }

    pub fn meet(self, other: Term) -> Self {
        Term::Meet(Box::new(self), Box::new(other))
    }

    pub fn cylindrify(self, gamma: GammaSpec) -> Self {
        Term::Cylindrify(gamma, Box::new(self))
    }

    pub fn substitute(self, t: Transformation) -> Self {
        Term::Substitute(t, Box::new(self))
    }

    pub fn recover(self, k: usize, l: usize, branch: Branch) -> Self {
        Term::Recover(Box::new(self), k, l, branch)
    }

    pub fn eval(&self, env: &Env) -> Result<Element, Error> {
        Ok(match self {
            Term::Zero => Element::zero(),
            Term::One => Element::one(),
            Term::Var(name) => env
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Unbound(name.clone()))?,
            Term::Sum(t) => Element::from_atom(Atom::sum_equals(t.clone())),
            Term::Diagonal(i, j) => Element::diagonal(*i, *j),
            Term::Atom(a) => Element::from_atom(a.clone()),
            Term::Not(x) => x.eval(env)?.complement(),
            Term::Join(x, y) => x.eval(env)?.join(&y.eval(env)?),
            Term::Meet(x, y) => x.eval(env)?.meet(&y.eval(env)?),
            Term::Cylindrify(g, x) => x.eval(env)?.cylindrify(g),
            Term::Substitute(t, x) => x.eval(env)?.substitute(t),
            Term::Fuse(x, y, k, l) => fusion::fuse_pair(&x.eval(env)?, &y.eval(env)?, *k, *l)?,
            Term::Recover(b, k, l, branch) => fusion::recover(&b.eval(env)?, *k, *l, *branch),
        })
    }

    /// Replaces every variable by the term bound to it in `bindings`.
    pub fn instantiate(&self, bindings: &BTreeMap<String, Term>) -> Term {
        let go = |t: &Term| Box::new(t.instantiate(bindings));
        match self {
            Term::Var(name) => bindings.get(name).cloned().unwrap_or_else(|| self.clone()),
            Term::Not(x) => Term::Not(go(x)),
            Term::Join(x, y) => Term::Join(go(x), go(y)),
            Term::Meet(x, y) => Term::Meet(go(x), go(y)),
            Term::Cylindrify(g, x) => Term::Cylindrify(g.clone(), go(x)),
            Term::Substitute(t, x) => Term::Substitute(t.clone(), go(x)),
            Term::Fuse(x, y, k, l) => Term::Fuse(go(x), go(y), *k, *l),
            Term::Recover(b, k, l, r) => Term::Recover(go(b), *k, *l, *r),
            _ => self.clone(),
        }
    }

    /// Number of operation nodes.
    pub fn depth(&self) -> usize {
        match self {
            Term::Not(x) | Term::Cylindrify(_, x) | Term::Substitute(_, x) => 1 + x.depth(),
            Term::Recover(x, ..) => 1 + x.depth(),
            Term::Join(x, y) | Term::Meet(x, y) | Term::Fuse(x, y, ..) => {
                1 + x.depth().max(y.depth())
            }
            _ => 0,
        }
    }

    fn is_join(&self) -> bool {
        matches!(self, Term::Join(..))
    }

    fn is_meet(&self) -> bool {
        matches!(self, Term::Meet(..))
    }
}

struct Paren<'a>(&'a Term, bool);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn write_coords(
    f: &mut fmt::Formatter<'_>,
    coords: &alloc::collections::BTreeSet<usize>,
) -> fmt::Result {
    let list: alloc::vec::Vec<String> = coords.iter().map(|i| i.to_string()).collect();
    write!(f, "{{{}}}", list.join(","))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Var(name) => f.write_str(name),
            Term::Sum(t) => {
                f.write_str("a(")?;
                write_rational(f, t)?;
                f.write_str(")")
            }
            Term::Diagonal(i, j) => write!(f, "d({i},{j})"),
            Term::Atom(a) => {
                f.write_str("H(")?;
                write_rational(f, a.rhs())?;
                f.write_str(";")?;
                for (i, c) in a.coeffs().explicit() {
                    write!(f, " {i}:")?;
                    write_rational(f, c)?;
                }
                f.write_str(" | ")?;
                write_rational(f, a.coeffs().tail())?;
                f.write_str(")")
            }
            Term::Not(x) => write!(f, "~{}", Paren(x, x.is_join() || x.is_meet())),
            Term::Join(x, y) => write!(f, "{} + {}", x, Paren(y, y.is_join())),
            Term::Meet(x, y) => write!(
                f,
                "{} * {}",
                Paren(x, x.is_join()),
                Paren(y, y.is_join() || y.is_meet())
            ),
            Term::Cylindrify(g, x) => {
                let (tag, coords) = match g {
                    GammaSpec::Finite(s) => ("c", s),
                    GammaSpec::Cofinite(s) => ("C", s),
                };
                f.write_str(tag)?;
                write_coords(f, coords)?;
                write!(f, "({x})")
            }
            Term::Substitute(t, x) => match t.as_transposition() {
                Some((i, j)) => write!(f, "s[{i},{j}]({x})"),
                None => write!(f, "s{t}({x})"),
            },
            Term::Fuse(x, y, k, l) => write!(f, "fuse({x}, {y}, {k}, {l})"),
            Term::Recover(b, k, l, r) => write!(f, "recover({b}, {k}, {l}, {r})"),
        }
    }
}
