//! Degrees with `deg 0 = -inf`.
//!
//! Every degree comparison in the criteria is really a comparison of
//! non-Archimedean absolute values `rho^deg`, so the degree of the zero
//! polynomial must be an absorbing minimum.  `ExtendedDegree` makes that
//! explicit instead of scattering `Option<i64>` logic around.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// A polynomial degree: either a finite integer or `-inf` (for zero).
///
/// Derived `Ord` puts `NegInf` below every finite value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum ExtendedDegree {
    NegInf,
    Finite(i64),
}

use ExtendedDegree::{Finite, NegInf};

impl ExtendedDegree {
    pub fn finite(self) -> Option<i64> {
        match self {
            NegInf => None,
            Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == NegInf
    }

    /// Maximum over an iterator; empty iterators yield `-inf`.
    pub fn max_of<I: IntoIterator<Item = ExtendedDegree>>(iter: I) -> ExtendedDegree {
        iter.into_iter().fold(NegInf, Ord::max)
    }
}

impl Add for ExtendedDegree {
    type Output = ExtendedDegree;

    fn add(self, rhs: ExtendedDegree) -> ExtendedDegree {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => NegInf,
        }
    }
}

impl Add<i64> for ExtendedDegree {
    type Output = ExtendedDegree;

    fn add(self, rhs: i64) -> ExtendedDegree {
        self + Finite(rhs)
    }
}

impl PartialEq<i64> for ExtendedDegree {
    fn eq(&self, other: &i64) -> bool {
        *self == Finite(*other)
    }
}

impl PartialOrd<i64> for ExtendedDegree {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.partial_cmp(&Finite(*other))
    }
}

impl fmt::Display for ExtendedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            Finite(d) => write!(f, "{d}"),
        }
    }
}
