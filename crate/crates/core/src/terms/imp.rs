use std::fmt;

use crate::algebra::Interval;

use super::eval::{EvalError, Valuation};
use super::term::Term;

/// A term in the implicative signature `(i, ¬, Δ, →)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ImpTerm {
    Var(String),
    Iota,
    Neg(Box<ImpTerm>),
    Delta(Box<ImpTerm>),
    Imp(Box<ImpTerm>, Box<ImpTerm>),
}

impl ImpTerm {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: ImpTerm) -> ImpTerm {
        ImpTerm::Neg(Box::new(t))
    }

    pub fn delta(t: ImpTerm) -> ImpTerm {
        ImpTerm::Delta(Box::new(t))
    }

    pub fn imp(a: ImpTerm, b: ImpTerm) -> ImpTerm {
        ImpTerm::Imp(Box::new(a), Box::new(b))
    }

    /// The same term in the full signature, with `→` as [`Term::Arrow`].
    pub fn to_term(&self) -> Term {
        match self {
            ImpTerm::Var(name) => Term::Var(name.clone()),
            ImpTerm::Iota => Term::Iota,
            ImpTerm::Neg(a) => Term::neg(a.to_term()),
            ImpTerm::Delta(a) => Term::delta(a.to_term()),
            ImpTerm::Imp(a, b) => Term::arrow(a.to_term(), b.to_term()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ImpTerm::Var(_) | ImpTerm::Iota => 1,
            ImpTerm::Neg(a) | ImpTerm::Delta(a) => 1 + a.size(),
            ImpTerm::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Interval semantics with `a → b = ¬a ⊕ b`.
    pub fn eval(&self, valuation: &Valuation<Interval>) -> Result<Interval, EvalError> {
        Ok(match self {
            ImpTerm::Var(name) => valuation
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::Unbound(name.clone()))?,
            ImpTerm::Iota => Interval::iota(),
            ImpTerm::Neg(a) => a.eval(valuation)?.neg(),
            ImpTerm::Delta(a) => a.eval(valuation)?.delta(),
            ImpTerm::Imp(a, b) => a.eval(valuation)?.implies(&b.eval(valuation)?),
        })
    }
}

impl fmt::Display for ImpTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_term(), f)
    }
}

impl fmt::Debug for ImpTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}
