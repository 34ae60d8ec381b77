use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{ImvAlgebra, Interval, MvAlgebra, StandardImv, StandardMv, UnitRational};

use super::term::Term;

/// Assignment of values to variable names.
pub type Valuation<V> = BTreeMap<String, V>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is unbound")]
    Unbound(String),
    #[error("`{0}` is not an MV operation")]
    NotMv(&'static str),
}

/// Evaluates `t` in an arbitrary IMV-algebra; `u → v` is read as `¬u ⊕ v`.
pub fn eval_imv_in<A, F>(alg: &A, t: &Term, lookup: &F) -> Result<A::Elem, EvalError>
where
    A: ImvAlgebra,
    F: Fn(&str) -> Option<A::Elem>,
{
    Ok(match t {
        Term::Var(name) => lookup(name).ok_or_else(|| EvalError::Unbound(name.clone()))?,
        Term::Zero => alg.zero(),
        Term::One => alg.one(),
        Term::Iota => alg.iota(),
        Term::Neg(a) => alg.neg(&eval_imv_in(alg, a, lookup)?),
        Term::Delta(a) => alg.delta(&eval_imv_in(alg, a, lookup)?),
        Term::Nabla(a) => alg.nabla(&eval_imv_in(alg, a, lookup)?),
        Term::Oplus(a, b) => {
            alg.oplus(&eval_imv_in(alg, a, lookup)?, &eval_imv_in(alg, b, lookup)?)
        }
        Term::Odot(a, b) => alg.odot(&eval_imv_in(alg, a, lookup)?, &eval_imv_in(alg, b, lookup)?),
        Term::Arrow(a, b) => {
            let na = alg.neg(&eval_imv_in(alg, a, lookup)?);
            alg.oplus(&na, &eval_imv_in(alg, b, lookup)?)
        }
    })
}

/// Evaluates `t` in an arbitrary MV-algebra. Fails on `i`, `Δ`, `∇`.
pub fn eval_mv_in<M, F>(alg: &M, t: &Term, lookup: &F) -> Result<M::Elem, EvalError>
where
    M: MvAlgebra,
    F: Fn(&str) -> Option<M::Elem>,
{
    Ok(match t {
        Term::Var(name) => lookup(name).ok_or_else(|| EvalError::Unbound(name.clone()))?,
        Term::Zero => alg.zero(),
        Term::One => alg.one(),
        Term::Iota | Term::Delta(_) | Term::Nabla(_) => {
            return Err(EvalError::NotMv(t.node_name()))
        }
        Term::Neg(a) => alg.neg(&eval_mv_in(alg, a, lookup)?),
        Term::Oplus(a, b) => alg.oplus(&eval_mv_in(alg, a, lookup)?, &eval_mv_in(alg, b, lookup)?),
        Term::Odot(a, b) => alg.odot(&eval_mv_in(alg, a, lookup)?, &eval_mv_in(alg, b, lookup)?),
        Term::Arrow(a, b) => {
            let na = alg.neg(&eval_mv_in(alg, a, lookup)?);
            alg.oplus(&na, &eval_mv_in(alg, b, lookup)?)
        }
    })
}

/// Evaluates `t` over rational intervals of `[0, 1]`.
pub fn eval_imv(t: &Term, valuation: &Valuation<Interval>) -> Result<Interval, EvalError> {
    eval_imv_in(&StandardImv, t, &|name| valuation.get(name).cloned())
}

/// Evaluates an MV-term over rational points of `[0, 1]`.
pub fn eval_mv(t: &Term, valuation: &Valuation<UnitRational>) -> Result<UnitRational, EvalError> {
    eval_mv_in(&StandardMv, t, &|name| valuation.get(name).cloned())
}
