//! Exact scalars in the monoid of M-th roots of unity with zero adjoined.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Either zero or `ζ_M^exponent`. The modulus lives with the ambient category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnitScalar {
    Zero,
    Root(u32),
}

impl UnitScalar {
    pub const ONE: UnitScalar = UnitScalar::Root(0);

    pub fn root(exponent: i64, m: u32) -> Self {
        UnitScalar::Root(exponent.rem_euclid(m as i64) as u32)
    }

    pub fn is_invertible(self) -> bool {
        matches!(self, UnitScalar::Root(_))
    }

    pub fn exponent(self) -> Option<u32> {
        match self {
            UnitScalar::Zero => None,
            UnitScalar::Root(e) => Some(e),
        }
    }

    pub fn mul(self, other: Self, m: u32) -> Self {
        match (self, other) {
            (UnitScalar::Root(a), UnitScalar::Root(b)) => UnitScalar::Root((a + b) % m),
            _ => UnitScalar::Zero,
        }
    }

    /// `None` for zero.
    pub fn inv(self, m: u32) -> Option<Self> {
        match self {
            UnitScalar::Zero => None,
            UnitScalar::Root(a) => Some(UnitScalar::Root((m - a % m) % m)),
        }
    }

    pub fn pow(self, k: i64, m: u32) -> Self {
        match self {
            UnitScalar::Zero if k == 0 => UnitScalar::ONE,
            UnitScalar::Zero => UnitScalar::Zero,
            UnitScalar::Root(a) => UnitScalar::root(a as i64 * k, m),
        }
    }
}

impl fmt::Display for UnitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitScalar::Zero => write!(f, "0"),
            UnitScalar::Root(e) => write!(f, "z^{e}"),
        }
    }
}

/// Exponent arithmetic mod `m`, used where zero never appears.
#[inline]
pub fn add(a: u32, b: u32, m: u32) -> u32 {
    (a + b) % m
}

#[inline]
pub fn neg(a: u32, m: u32) -> u32 {
    (m - a % m) % m
}

#[inline]
pub fn sub(a: u32, b: u32, m: u32) -> u32 {
    add(a, neg(b, m), m)
}
