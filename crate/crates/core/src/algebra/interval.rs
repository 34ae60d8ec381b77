//! Intervals of `[0, 1]` with the IMV operations.
//!
//! Sums and products of intervals are computed on endpoints: the truncated
//! Minkowski sum of `[a, b]` and `[c, d]` is `[a ⊕ c, b ⊕ d]`, and likewise
//! for `⊙`. Derived operations (`bold_meet`, `zeta`, ...) are evaluated
//! literally through their defining terms.

use std::fmt;
use std::str::FromStr;

use super::unit::UnitRational;
use super::AlgebraError;

/// A closed interval `[lo, hi]` with `0 ≤ lo ≤ hi ≤ 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: UnitRational,
    hi: UnitRational,
}

impl Interval {
    pub fn new(lo: UnitRational, hi: UnitRational) -> Result<Self, AlgebraError> {
        if lo > hi {
            return Err(AlgebraError::InvertedInterval {
                lo: Box::new(lo),
                hi: Box::new(hi),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// `[a, a]`
    pub fn degenerate(a: UnitRational) -> Self {
        Interval {
            lo: a.clone(),
            hi: a,
        }
    }

    /// `[lo_num/lo_den, hi_num/hi_den]`
    pub fn from_ratios(lo: (i64, i64), hi: (i64, i64)) -> Result<Self, AlgebraError> {
        Self::new(
            UnitRational::from_ratio(lo.0, lo.1)?,
            UnitRational::from_ratio(hi.0, hi.1)?,
        )
    }

    pub fn zero() -> Self {
        Self::degenerate(UnitRational::zero())
    }

    pub fn one() -> Self {
        Self::degenerate(UnitRational::one())
    }

    /// The whole unit interval, `i`.
    pub fn iota() -> Self {
        Interval {
            lo: UnitRational::zero(),
            hi: UnitRational::one(),
        }
    }

    pub fn lo(&self) -> &UnitRational {
        &self.lo
    }

    pub fn hi(&self) -> &UnitRational {
        &self.hi
    }

    pub fn into_bounds(self) -> (UnitRational, UnitRational) {
        (self.lo, self.hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    /// Central elements are exactly those with `Δx = ∇x`.
    pub fn is_central(&self) -> bool {
        self.delta() == self.nabla()
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn oplus(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.oplus(&other.lo),
            hi: self.hi.oplus(&other.hi),
        }
    }

    pub fn odot(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.odot(&other.lo),
            hi: self.hi.odot(&other.hi),
        }
    }

    /// `u → v = ¬u ⊕ v`
    pub fn implies(&self, other: &Self) -> Self {
        self.neg().oplus(other)
    }

    pub fn delta(&self) -> Self {
        Self::degenerate(self.lo.clone())
    }

    pub fn nabla(&self) -> Self {
        Self::degenerate(self.hi.clone())
    }

    /// `u ∧ v = ¬(¬u ⊙ v) ⊙ v`
    pub fn bold_meet(&self, other: &Self) -> Self {
        self.neg().odot(other).neg().odot(other)
    }

    /// `u ∨ v = ¬(¬u ⊕ v) ⊕ v`
    pub fn bold_join(&self, other: &Self) -> Self {
        self.neg().oplus(other).neg().oplus(other)
    }

    /// Meet in the product order: componentwise minimum of endpoints.
    pub fn product_meet(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.meet(&other.lo),
            hi: self.hi.meet(&other.hi),
        }
    }

    /// Join in the product order: componentwise maximum of endpoints.
    pub fn product_join(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.join(&other.lo),
            hi: self.hi.join(&other.hi),
        }
    }

    /// `ζ(u, v) = Δu ⊕ (i ⊙ ∇v ⊙ ¬Δu)`; equals `[α, β]` when `u = [α, α]`,
    /// `v = [β, β]` and `α ≤ β`.
    pub fn zeta(u: &Self, v: &Self) -> Self {
        let du = u.delta();
        du.oplus(&Self::iota().odot(&v.nabla()).odot(&du.neg()))
    }

    /// Join in the inclusion order: the smallest interval containing both.
    pub fn inclusion_join(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.meet(&other.lo),
            hi: self.hi.join(&other.hi),
        }
    }

    /// `x ⊑ y`, decided by `(¬Δx ⊕ Δy) ⊙ (¬∇x ⊕ ∇y) = 1`.
    pub fn leq_product(&self, other: &Self) -> bool {
        let lower = self.delta().neg().oplus(&other.delta());
        let upper = self.nabla().neg().oplus(&other.nabla());
        lower.odot(&upper) == Self::one()
    }

    /// `x ⊆ y`, decided by `(¬Δy ⊕ Δx) ⊙ (¬∇x ⊕ ∇y) = 1`.
    pub fn leq_inclusion(&self, other: &Self) -> bool {
        let lower = other.delta().neg().oplus(&self.delta());
        let upper = self.nabla().neg().oplus(&other.nabla());
        lower.odot(&upper) == Self::one()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Interval {
    type Err = AlgebraError;

    /// Parses `[p/q, r/s]`, or the degenerate shorthand `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| AlgebraError::Syntax(s.to_string()))?;
            let (lo, hi) = body
                .split_once(',')
                .ok_or_else(|| AlgebraError::Syntax(s.to_string()))?;
            Interval::new(lo.parse()?, hi.parse()?)
        } else if s.contains(',') || s.contains(']') {
            Err(AlgebraError::Syntax(s.to_string()))
        } else {
            Ok(Interval::degenerate(s.parse()?))
        }
    }
}
