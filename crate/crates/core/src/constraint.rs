// SPDX-License-Identifier: Apache-2.0

//! Atomic constraints over finite-support rational sequences.
//!
//! A [`Point`] is a member of `V`: a sequence `s: ω → ℚ` with finitely many
//! nonzero entries. An [`Atom`] is the set `{s ∈ V : Σ r_i s_i = t}` where the
//! coefficient sequence `r` is eventually constant ([`CoeffSeq`]). The sum is
//! always finite because `s` has finite support.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `numer / denom` in lowest terms. Panics if `denom` is zero.
pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Writes a rational as `p/q`, omitting `q` when it is 1.
pub(crate) fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// A member of `V`; coordinates that are not stored are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point {
    entries: BTreeMap<usize, Rational>,
}

impl Point {
    /// The all-zero sequence.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn get(&self, coord: usize) -> Rational {
        self.entries
            .get(&coord)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, coord: usize, value: Rational) {
        if value.is_zero() {
            self.entries.remove(&coord);
        } else {
            self.entries.insert(coord, value);
        }
    }

    /// Coordinates carrying a nonzero value.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&i, v)| (i, v))
    }
}

impl FromIterator<(usize, Rational)> for Point {
    fn from_iter<I: IntoIterator<Item = (usize, Rational)>>(iter: I) -> Self {
        let mut point = Point::zero();
        for (i, v) in iter {
            point.set(i, v);
        }
        point
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (i, v)) in self.entries.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}:")?;
            write_rational(f, v)?;
        }
        f.write_str("}")
    }
}

/// An eventually constant coefficient sequence: explicit values on finitely
/// many coordinates and a `tail` value everywhere else.
///
/// No explicit entry equals the tail, so two sequences are equal as functions
/// iff they are equal as values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoeffSeq {
    explicit: BTreeMap<usize, Rational>,
    tail: Rational,
}

impl CoeffSeq {
    pub fn new(explicit: impl IntoIterator<Item = (usize, Rational)>, tail: Rational) -> Self {
        let explicit = explicit.into_iter().filter(|(_, v)| *v != tail).collect();
        CoeffSeq { explicit, tail }
    }

    /// The constant sequence `t, t, t, ...`.
    pub fn constant(tail: Rational) -> Self {
        CoeffSeq {
            explicit: BTreeMap::new(),
            tail,
        }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn get(&self, coord: usize) -> &Rational {
        self.explicit.get(&coord).unwrap_or(&self.tail)
    }

    pub fn tail(&self) -> &Rational {
        &self.tail
    }

    pub fn explicit(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.explicit.iter().map(|(&i, v)| (i, v))
    }

    /// Coordinates where the sequence differs from its tail.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.explicit.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.explicit.is_empty() && self.tail.is_zero()
    }

    /// `Σ r_i s_i`, a finite sum over the support of `s`.
    pub fn dot(&self, point: &Point) -> Rational {
        point
            .entries()
            .fold(Rational::zero(), |acc, (i, v)| acc + self.get(i) * v)
    }

    fn scaled(&self, factor: &Rational) -> Self {
        CoeffSeq {
            explicit: self
                .explicit
                .iter()
                .map(|(&i, v)| (i, v * factor))
                .collect(),
            tail: &self.tail * factor,
        }
    }

    /// First nonzero explicit entry by coordinate, else the tail.
    fn leading(&self) -> &Rational {
        self.explicit
            .values()
            .find(|v| !v.is_zero())
            .unwrap_or(&self.tail)
    }
}

/// Semantic class of an atom, readable off its canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomClass {
    /// All coefficients and the right-hand side are zero: the whole of `V`.
    Full,
    /// All coefficients are zero, the right-hand side is not.
    Empty,
    /// A genuine hyperplane, never empty and never all of `V`.
    Proper,
}

/// The hyperplane `[t, r] = {s ∈ V : Σ r_i s_i = t}` in canonical form.
///
/// Canonical scaling makes the leading coefficient 1, where the leading
/// coefficient is the first nonzero explicit entry or, failing that, the
/// tail. Two proper atoms denote the same set iff they are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Atom {
    coeffs: CoeffSeq,
    rhs: Rational,
}

impl Atom {
    /// `[rhs, coeffs]`, canonicalized.
    pub fn hyperplane(rhs: Rational, coeffs: CoeffSeq) -> Self {
        if coeffs.is_zero() {
            let rhs = if rhs.is_zero() {
                Rational::zero()
            } else {
                Rational::one()
            };
            return Atom { coeffs, rhs };
        }
        let inv = coeffs.leading().recip();
        Atom {
            coeffs: coeffs.scaled(&inv),
            rhs: rhs * inv,
        }
    }

    /// `d_ij = {s : s_i = s_j}`.
    pub fn diagonal(i: usize, j: usize) -> Self {
        if i == j {
            return Self::full();
        }
        Self::hyperplane(
            Rational::zero(),
            CoeffSeq::new(
                [(i, Rational::one()), (j, -Rational::one())],
                Rational::zero(),
            ),
        )
    }

    /// `[t, 𝟏]`: the coordinates sum to `t`.
    pub fn sum_equals(t: Rational) -> Self {
        Self::hyperplane(t, CoeffSeq::constant(Rational::one()))
    }

    /// `s_coord = value`.
    pub fn coordinate_equals(coord: usize, value: Rational) -> Self {
        Self::hyperplane(
            value,
            CoeffSeq::new([(coord, Rational::one())], Rational::zero()),
        )
    }

    pub fn full() -> Self {
        Atom {
            coeffs: CoeffSeq::zero(),
            rhs: Rational::zero(),
        }
    }

    pub fn empty() -> Self {
        Atom {
            coeffs: CoeffSeq::zero(),
            rhs: Rational::one(),
        }
    }

    pub fn coeffs(&self) -> &CoeffSeq {
        &self.coeffs
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn class(&self) -> AtomClass {
        if !self.coeffs.is_zero() {
            AtomClass::Proper
        } else if self.rhs.is_zero() {
            AtomClass::Full
        } else {
            AtomClass::Empty
        }
    }

    pub fn eval(&self, point: &Point) -> bool {
        self.coeffs.dot(point) == self.rhs
    }

    /// Coordinates with an explicit coefficient.
    pub fn support(&self) -> BTreeSet<usize> {
        self.coeffs.support().collect()
    }

    /// True when every coefficient is zero beyond the explicit part, i.e. the
    /// atom constrains only finitely many coordinates.
    pub fn has_finite_support(&self) -> bool {
        self.coeffs.tail().is_zero()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_rational(f, &self.rhs)?;
        f.write_str(" ;")?;
        for (i, v) in self.coeffs.explicit() {
            write!(f, " {i}:")?;
            write_rational(f, v)?;
        }
        f.write_str(" | ")?;
        write_rational(f, self.coeffs.tail())?;
        f.write_str("]")
    }
}
