//! Exhaustive refutation over finite Łukasiewicz chains. Since `Ł_k` is a
//! subalgebra of `[0, 1]`, any failure found here is a genuine
//! counterexample; finding none proves nothing.

use crate::algebra::{ChainImv, ChainInterval, ChainMv, Interval, UnitRational};
use crate::terms::{eval_imv_in, eval_mv_in, Term, Valuation};

use super::DecideError;

/// Default cap on the number of valuations one oracle call may enumerate.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A statement whose validity the oracle tries to refute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleQuery {
    /// `t = 1`
    Tautology(Term),
    /// `s = t`
    Equation(Term, Term),
    /// `θ_1, …, θ_m ⊢ ψ`: every valuation sending each premise to 1 sends
    /// the goal to 1.
    Consequence { premises: Vec<Term>, goal: Term },
}

impl OracleQuery {
    fn terms(&self) -> Vec<&Term> {
        match self {
            OracleQuery::Tautology(t) => vec![t],
            OracleQuery::Equation(s, t) => vec![s, t],
            OracleQuery::Consequence { premises, goal } => {
                premises.iter().chain(std::iter::once(goal)).collect()
            }
        }
    }

    fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for t in self.terms() {
            for v in t.vars_in_order() {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }
}

fn check_budget(count: usize, vars: usize, budget: u64) -> Result<(), DecideError> {
    let required = (count as u128)
        .checked_pow(vars as u32)
        .unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(DecideError::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Calls `visit` on every tuple over `0..count` of length `n` until it
/// returns `true`; yields that tuple.
fn search(count: usize, n: usize, mut visit: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut idx = vec![0usize; n];
    loop {
        if visit(&idx) {
            return Some(idx);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < count {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn fails<E: Eq + Clone>(query: &OracleQuery, one: &E, eval: &dyn Fn(&Term) -> E) -> bool {
    match query {
        OracleQuery::Tautology(t) => eval(t) != *one,
        OracleQuery::Equation(s, t) => eval(s) != eval(t),
        OracleQuery::Consequence { premises, goal } => {
            premises.iter().all(|p| eval(p) == *one) && eval(goal) != *one
        }
    }
}

/// Searches all valuations into the intervals of `Ł_k`.
pub fn chain_oracle(
    query: &OracleQuery,
    k: u32,
    budget: u64,
) -> Result<Option<Valuation<Interval>>, DecideError> {
    let alg = ChainImv::new(k)?;
    let elements = alg.elements();
    let vars = query.variables();
    check_budget(elements.len(), vars.len(), budget)?;
    let one = ChainInterval { lo: k, hi: k };
    let found = search(elements.len(), vars.len(), |idx| {
        let lookup = |name: &str| {
            vars.iter()
                .position(|v| v == name)
                .map(|p| elements[idx[p]])
        };
        let eval = |t: &Term| eval_imv_in(&alg, t, &lookup).expect("all variables bound");
        fails(query, &one, &eval)
    });
    Ok(found.map(|idx| {
        vars.iter()
            .zip(idx)
            .map(|(v, i)| (v.clone(), alg.embed(&elements[i])))
            .collect()
    }))
}

/// Searches all valuations into `Ł_k` itself; the query must consist of
/// MV-terms.
pub fn chain_oracle_mv(
    query: &OracleQuery,
    k: u32,
    budget: u64,
) -> Result<Option<Valuation<UnitRational>>, DecideError> {
    let alg = ChainMv::new(k)?;
    if let Some(t) = query.terms().into_iter().find(|t| !t.is_mv_term()) {
        return Err(DecideError::NotMv(t.clone()));
    }
    let vars = query.variables();
    let count = k as usize + 1;
    check_budget(count, vars.len(), budget)?;
    let found = search(count, vars.len(), |idx| {
        let lookup = |name: &str| vars.iter().position(|v| v == name).map(|p| idx[p] as u32);
        let eval = |t: &Term| eval_mv_in(&alg, t, &lookup).expect("MV-terms with bound variables");
        fails(query, &k, &eval)
    });
    Ok(found.map(|idx| {
        vars.iter()
            .zip(idx)
            .map(|(v, i)| (v.clone(), alg.embed(i as u32)))
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse;

    fn p(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn excluded_middle_fails_at_iota() {
        let q = OracleQuery::Equation(p("x + ~x"), Term::One);
        let cex = chain_oracle(&q, 1, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(cex["x"], Interval::iota());
    }

    #[test]
    fn valid_statements_survive() {
        let q = OracleQuery::Equation(p("D(x + y)"), p("D x + D y"));
        assert_eq!(chain_oracle(&q, 3, DEFAULT_BUDGET).unwrap(), None);
        let q = OracleQuery::Tautology(p("D X -> X"));
        assert_eq!(chain_oracle(&q, 4, DEFAULT_BUDGET).unwrap(), None);
        let q = OracleQuery::Tautology(p("~(X * ~X)"));
        assert_eq!(chain_oracle_mv(&q, 6, DEFAULT_BUDGET).unwrap(), None);
        assert!(chain_oracle(&q, 1, DEFAULT_BUDGET).unwrap().is_some());
    }

    #[test]
    fn consequence_and_budget() {
        let q = OracleQuery::Consequence {
            premises: vec![p("X + X")],
            goal: p("X"),
        };
        let cex = chain_oracle(&q, 2, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(cex["X"], "[1/2, 1/2]".parse().unwrap());
        let q = OracleQuery::Tautology(p("a + b + c + d + e + f"));
        assert!(matches!(
            chain_oracle(&q, 6, 1000),
            Err(DecideError::BudgetExceeded { .. })
        ));
    }
}
