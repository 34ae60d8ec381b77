//! Finite Łukasiewicz chains `Ł_k = {0, 1/k, ..., 1}`.

use std::fmt;

use crate::rational::Rational;

use super::interval::Interval;
use super::unit::UnitRational;
use super::{AlgebraError, ImvAlgebra, MvAlgebra};

/// The element `element/k` of `Ł_k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ChainIndex {
    k: u32,
    element: u32,
}

impl ChainIndex {
    pub fn new(k: u32, element: u32) -> Result<Self, AlgebraError> {
        if k == 0 {
            return Err(AlgebraError::EmptyChain);
        }
        if element > k {
            return Err(AlgebraError::ChainElementOutOfRange { k, element });
        }
        Ok(ChainIndex { k, element })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn element(&self) -> u32 {
        self.element
    }

    fn same_chain(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.k != other.k {
            return Err(AlgebraError::ChainMismatch {
                left: self.k,
                right: other.k,
            });
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        ChainIndex {
            k: self.k,
            element: self.k - self.element,
        }
    }

    pub fn oplus(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_chain(other)?;
        Ok(ChainIndex {
            k: self.k,
            element: (self.element + other.element).min(self.k),
        })
    }

    pub fn odot(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_chain(other)?;
        Ok(ChainIndex {
            k: self.k,
            element: (self.element + other.element).saturating_sub(self.k),
        })
    }

    /// The embedding `Ł_k → [0, 1]`, `e ↦ e/k`.
    pub fn to_unit(&self) -> UnitRational {
        UnitRational::new(Rational::new(self.element as i64, self.k as i64).expect("k > 0"))
            .expect("element/k lies in [0, 1]")
    }
}

impl fmt::Display for ChainIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.element, self.k)
    }
}

/// `Ł_k` as an MV-algebra over raw indices `0..=k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainMv {
    k: u32,
}

impl ChainMv {
    pub fn new(k: u32) -> Result<Self, AlgebraError> {
        if k == 0 {
            return Err(AlgebraError::EmptyChain);
        }
        Ok(ChainMv { k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..=self.k
    }

    pub fn embed(&self, e: u32) -> UnitRational {
        ChainIndex {
            k: self.k,
            element: e,
        }
        .to_unit()
    }
}

impl MvAlgebra for ChainMv {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        self.k
    }
    fn neg(&self, a: &u32) -> u32 {
        self.k - a
    }
    fn oplus(&self, a: &u32, b: &u32) -> u32 {
        (a + b).min(self.k)
    }
    fn odot(&self, a: &u32, b: &u32) -> u32 {
        (a + b).saturating_sub(self.k)
    }
}

/// An interval `[lo/k, hi/k]` of `Ł_k`; the chain size lives in [`ChainImv`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ChainInterval {
    pub lo: u32,
    pub hi: u32,
}

/// The IMV-algebra of all intervals of `Ł_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainImv {
    k: u32,
}

impl ChainImv {
    pub fn new(k: u32) -> Result<Self, AlgebraError> {
        if k == 0 {
            return Err(AlgebraError::EmptyChain);
        }
        Ok(ChainImv { k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// All `(k+1)(k+2)/2` intervals, ordered by `(lo, hi)`.
    pub fn elements(&self) -> Vec<ChainInterval> {
        let k = self.k;
        (0..=k)
            .flat_map(|lo| (lo..=k).map(move |hi| ChainInterval { lo, hi }))
            .collect()
    }

    pub fn embed(&self, x: &ChainInterval) -> Interval {
        let mv = ChainMv { k: self.k };
        Interval::new(mv.embed(x.lo), mv.embed(x.hi)).expect("chain intervals are ordered")
    }
}

impl ImvAlgebra for ChainImv {
    type Elem = ChainInterval;

    fn zero(&self) -> ChainInterval {
        ChainInterval { lo: 0, hi: 0 }
    }
    fn one(&self) -> ChainInterval {
        ChainInterval {
            lo: self.k,
            hi: self.k,
        }
    }
    fn iota(&self) -> ChainInterval {
        ChainInterval { lo: 0, hi: self.k }
    }
    fn neg(&self, x: &ChainInterval) -> ChainInterval {
        ChainInterval {
            lo: self.k - x.hi,
            hi: self.k - x.lo,
        }
    }
    fn oplus(&self, x: &ChainInterval, y: &ChainInterval) -> ChainInterval {
        ChainInterval {
            lo: (x.lo + y.lo).min(self.k),
            hi: (x.hi + y.hi).min(self.k),
        }
    }
    fn odot(&self, x: &ChainInterval, y: &ChainInterval) -> ChainInterval {
        ChainInterval {
            lo: (x.lo + y.lo).saturating_sub(self.k),
            hi: (x.hi + y.hi).saturating_sub(self.k),
        }
    }
    fn delta(&self, x: &ChainInterval) -> ChainInterval {
        ChainInterval { lo: x.lo, hi: x.lo }
    }
    fn nabla(&self, x: &ChainInterval) -> ChainInterval {
        ChainInterval { lo: x.hi, hi: x.hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: u32, e: u32) -> ChainIndex {
        ChainIndex::new(k, e).unwrap()
    }

    #[test]
    fn chain_operations() {
        assert_eq!(c(2, 1).neg(), c(2, 1));
        assert_eq!(c(4, 1).oplus(&c(4, 2)).unwrap(), c(4, 3));
        assert_eq!(c(3, 2).odot(&c(3, 2)).unwrap(), c(3, 1));
        // oracle through the embedding: max(0, 4/3 - 1) = 1/3
        assert_eq!(
            c(3, 2).odot(&c(3, 2)).unwrap().to_unit(),
            c(3, 2).to_unit().odot(&c(3, 2).to_unit())
        );
    }

    #[test]
    fn mismatched_chains_are_rejected() {
        assert!(matches!(
            c(2, 1).oplus(&c(4, 2)),
            Err(AlgebraError::ChainMismatch { left: 2, right: 4 })
        ));
        assert!(ChainIndex::new(3, 4).is_err());
        assert!(ChainIndex::new(0, 0).is_err());
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        for k in 1..=6 {
            for a in 0..=k {
                let x = c(k, a);
                assert_eq!(x.neg().to_unit(), x.to_unit().neg());
                for b in 0..=k {
                    let y = c(k, b);
                    assert_eq!(
                        x.oplus(&y).unwrap().to_unit(),
                        x.to_unit().oplus(&y.to_unit())
                    );
                    assert_eq!(
                        x.odot(&y).unwrap().to_unit(),
                        x.to_unit().odot(&y.to_unit())
                    );
                }
            }
        }
    }

    #[test]
    fn interval_counts() {
        for k in 1..=6u32 {
            let n = ChainImv::new(k).unwrap().elements().len() as u32;
            assert_eq!(n, (k + 1) * (k + 2) / 2);
        }
    }
}
