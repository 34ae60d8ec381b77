//! The MV-algebra `[0, 1]`, its interval algebra, and finite chains `Ł_k`.

mod chain;
mod interval;
mod unit;

pub use chain::{ChainImv, ChainIndex, ChainInterval, ChainMv};
pub use interval::Interval;
pub use unit::UnitRational;

use thiserror::Error;

use crate::rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is outside [0, 1]")]
    OutOfUnitRange(Rational),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("interval endpoints out of order: [{lo}, {hi}]")]
    InvertedInterval {
        lo: Box<UnitRational>,
        hi: Box<UnitRational>,
    },
    #[error("malformed interval `{0}`, expected [p/q, r/s] or p/q")]
    Syntax(String),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("a chain needs k >= 1")]
    EmptyChain,
    #[error("element {element} is not in L_{k}")]
    ChainElementOutOfRange { k: u32, element: u32 },
    #[error("operands from different chains L_{left} and L_{right}")]
    ChainMismatch { left: u32, right: u32 },
}

/// An MV-algebra given by its basic operations.
pub trait MvAlgebra {
    type Elem: Clone + Eq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn oplus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn odot(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// An IMV-algebra given by its basic operations.
pub trait ImvAlgebra {
    type Elem: Clone + Eq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn iota(&self) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn oplus(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn odot(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn delta(&self, x: &Self::Elem) -> Self::Elem;
    fn nabla(&self, x: &Self::Elem) -> Self::Elem;
}

/// The standard MV-algebra on rational points of `[0, 1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StandardMv;

impl MvAlgebra for StandardMv {
    type Elem = UnitRational;

    fn zero(&self) -> UnitRational {
        UnitRational::zero()
    }
    fn one(&self) -> UnitRational {
        UnitRational::one()
    }
    fn neg(&self, a: &UnitRational) -> UnitRational {
        a.neg()
    }
    fn oplus(&self, a: &UnitRational, b: &UnitRational) -> UnitRational {
        a.oplus(b)
    }
    fn odot(&self, a: &UnitRational, b: &UnitRational) -> UnitRational {
        a.odot(b)
    }
}

/// The IMV-algebra of rational intervals of `[0, 1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StandardImv;

impl ImvAlgebra for StandardImv {
    type Elem = Interval;

    fn zero(&self) -> Interval {
        Interval::zero()
    }
    fn one(&self) -> Interval {
        Interval::one()
    }
    fn iota(&self) -> Interval {
        Interval::iota()
    }
    fn neg(&self, x: &Interval) -> Interval {
        x.neg()
    }
    fn oplus(&self, x: &Interval, y: &Interval) -> Interval {
        x.oplus(y)
    }
    fn odot(&self, x: &Interval, y: &Interval) -> Interval {
        x.odot(y)
    }
    fn delta(&self, x: &Interval) -> Interval {
        x.delta()
    }
    fn nabla(&self, x: &Interval) -> Interval {
        x.nabla()
    }
}
