//! Distances that may be infinite.
//!
//! `∞` is a dedicated sentinel, not a magic finite value; addition
//! saturates so that `∞ + x = ∞` holds by construction.

use core::cmp::Ordering;
use core::fmt;

/// A shortest-path distance: a non-negative integer or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dist {
    Fin(u64),
    Inf,
}

impl Dist {
    pub const ZERO: Dist = Dist::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Fin(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Dist::Inf)
    }

    /// Finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            Dist::Fin(d) => Some(d),
            Dist::Inf => None,
        }
    }

    /// Saturating addition: `∞ + x = ∞`.
    pub fn add(self, other: Dist) -> Dist {
        match (self, other) {
            (Dist::Fin(a), Dist::Fin(b)) => Dist::Fin(a.saturating_add(b)),
            _ => Dist::Inf,
        }
    }

    /// Parity of a finite distance; `None` for `∞`.
    pub fn parity(self) -> Option<u64> {
        self.finite().map(|d| d % 2)
    }
}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dist::Fin(a), Dist::Fin(b)) => a.cmp(b),
            (Dist::Fin(_), Dist::Inf) => Ordering::Less,
            (Dist::Inf, Dist::Fin(_)) => Ordering::Greater,
            (Dist::Inf, Dist::Inf) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Fin(d) => write!(f, "{d}"),
            Dist::Inf => write!(f, "inf"),
        }
    }
}

impl From<u64> for Dist {
    fn from(d: u64) -> Self {
        Dist::Fin(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturating_infinity() {
        assert_eq!(Dist::Inf.add(Dist::Fin(3)), Dist::Inf);
        assert_eq!(Dist::Fin(2).add(Dist::Inf), Dist::Inf);
        assert_eq!(Dist::Fin(2).add(Dist::Fin(3)), Dist::Fin(5));
    }

    #[test]
    fn infinity_is_maximal() {
        assert!(Dist::Fin(u64::MAX) < Dist::Inf);
        assert!(Dist::Fin(0) < Dist::Fin(1));
        assert_eq!(Dist::Inf.cmp(&Dist::Inf), Ordering::Equal);
    }
}
