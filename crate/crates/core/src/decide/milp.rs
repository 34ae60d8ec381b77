//! Depth-first branch and bound over the binaries, with an exact LP
//! relaxation at every node.

use crate::rational::Rational;

use super::linear::{MilpProblem, Sense};
use super::simplex::{solve_lp, LpOutcome};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MilpOutcome {
    Infeasible,
    /// The optimum in the problem's own sense, and a feasible assignment
    /// (indexed like `MilpProblem::variables`) attaining it.
    Optimal {
        value: Rational,
        assignment: Vec<Rational>,
    },
}

/// Solves `problem` exactly.
pub fn optimize(problem: &MilpProblem) -> MilpOutcome {
    optimize_from(problem, None)
}

/// Like [`optimize`], seeding the search with `start` when it is a feasible
/// assignment; infeasible seeds are ignored.
pub fn optimize_from(problem: &MilpProblem, start: Option<&[Rational]>) -> MilpOutcome {
    let n = problem.variables.len();
    let minimize = problem.objective.sense == Sense::Minimize;
    let mut cost = vec![Rational::zero(); n];
    for (v, c) in &problem.objective.expr.coeffs {
        cost[v.0] = if minimize { c.clone() } else { -c };
    }
    let inner_value = |x: &[Rational]| {
        cost.iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (c, x)| acc + c * x)
    };

    let mut incumbent: Option<(Rational, Vec<Rational>)> = start
        .filter(|x| problem.is_feasible(x))
        .map(|x| (inner_value(x), x.to_vec()));
    let binaries: Vec<usize> = problem.binaries().map(|v| v.0).collect();
    let half = Rational::new(1, 2).expect("nonzero");

    let mut stack = vec![(vec![Rational::zero(); n], vec![Rational::one(); n])];
    while let Some((lower, upper)) = stack.pop() {
        let (value, point) = match solve_lp(&problem.constraints, &lower, &upper, &cost) {
            LpOutcome::Infeasible => continue,
            LpOutcome::Unbounded => unreachable!("all variables are bounded"),
            LpOutcome::Optimal { value, point } => (value, point),
        };
        if incumbent.as_ref().is_some_and(|(best, _)| value >= *best) {
            continue;
        }
        let fractional = binaries
            .iter()
            .copied()
            .find(|&b| !point[b].is_zero() && !point[b].is_one());
        let Some(b) = fractional else {
            incumbent = Some((value, point));
            continue;
        };
        let near_one = point[b] >= half;
        let mut at_zero = (lower.clone(), upper.clone());
        at_zero.1[b] = Rational::zero();
        let mut at_one = (lower, upper);
        at_one.0[b] = Rational::one();
        // the child nearest the relaxed value is explored first
        if near_one {
            stack.push(at_zero);
            stack.push(at_one);
        } else {
            stack.push(at_one);
            stack.push(at_zero);
        }
    }

    match incumbent {
        None => MilpOutcome::Infeasible,
        Some((inner, assignment)) => {
            let value = if minimize { inner } else { -inner } + &problem.objective.expr.constant;
            MilpOutcome::Optimal { value, assignment }
        }
    }
}
