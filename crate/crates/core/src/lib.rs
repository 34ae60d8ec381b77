//! Interval MV-algebras over exact rationals, with a decision procedure for
//! Łukasiewicz interval logic and the interval construction for finite
//! ordered algebras.

pub mod algebra;
pub mod decide;
pub mod functor;
pub mod normalize;
pub mod rational;
pub mod terms;

pub use algebra::{Interval, UnitRational};
pub use rational::Rational;
pub use terms::{parse, Term};
