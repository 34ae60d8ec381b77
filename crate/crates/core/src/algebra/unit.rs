//! The standard MV-algebra on the rational points of `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use crate::rational::Rational;

use super::AlgebraError;

/// A rational truth value in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitRational(Rational);

impl UnitRational {
    pub fn new(value: Rational) -> Result<Self, AlgebraError> {
        if value.is_negative() || value > Rational::one() {
            return Err(AlgebraError::OutOfUnitRange(value));
        }
        Ok(UnitRational(value))
    }

    /// `num/den`, which must lie in `[0, 1]`.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self, AlgebraError> {
        let value = Rational::new(num, den).ok_or(AlgebraError::ZeroDenominator)?;
        Self::new(value)
    }

    pub fn zero() -> Self {
        UnitRational(Rational::zero())
    }

    pub fn one() -> Self {
        UnitRational(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `1 - a`
    pub fn neg(&self) -> Self {
        UnitRational(Rational::one() - &self.0)
    }

    /// Truncated sum `min(1, a + b)`.
    pub fn oplus(&self, other: &Self) -> Self {
        UnitRational((&self.0 + &other.0).min(Rational::one()))
    }

    /// Łukasiewicz t-norm `max(0, a + b - 1)`.
    pub fn odot(&self, other: &Self) -> Self {
        UnitRational((&self.0 + &other.0 - Rational::one()).max(Rational::zero()))
    }

    pub fn meet(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Łukasiewicz implication `¬a ⊕ b`.
    pub fn implies(&self, other: &Self) -> Self {
        self.neg().oplus(other)
    }
}

impl fmt::Display for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for UnitRational {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value: Rational = s.parse()?;
        if value.is_negative() {
            return Err(AlgebraError::OutOfUnitRange(value));
        }
        Self::new(value)
    }
}

impl TryFrom<Rational> for UnitRational {
    type Error = AlgebraError;

    fn try_from(value: Rational) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}
