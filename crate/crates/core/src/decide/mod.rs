//! Decision procedures for Łukasiewicz logic and its interval extension.
//!
//! Łukasiewicz consequence problems are compiled to mixed 0/1 linear
//! programs and optimized exactly. Interval questions are reduced to those
//! through the `Δ`/`∇` normal forms of [`crate::normalize`].

mod compile;
mod instance;
mod linear;
mod milp;
mod oracle;
mod simplex;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

pub use compile::{compile_mv, Compiler};
pub use instance::{ConsequenceInstance, Goal};
pub use linear::{
    LinearConstraint, LinearExpr, MilpProblem, Objective, Relation, Sense, VarId, VarKind, Variable,
};
pub use milp::{optimize, optimize_from, MilpOutcome};
pub use oracle::{chain_oracle, chain_oracle_mv, OracleQuery, DEFAULT_BUDGET};
pub use simplex::{solve_lp, LpOutcome};

use crate::algebra::{AlgebraError, ChainMv, Interval, MvAlgebra, UnitRational};
use crate::normalize::{equation_to_mv_consequences_chi, normalize_leg_with, Leg, VarMap};
use crate::rational::Rational;
use crate::terms::{eval_imv, eval_mv, eval_mv_in, EvalError, Term, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("`{0}` is not an MV-term")]
    NotMv(Term),
    #[error("enumeration needs {required} valuations, over the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("internal error: counterexample failed re-evaluation ({0})")]
    SelfCheck(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Valid,
    Invalid,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Valid => "valid",
            Status::Invalid => "invalid",
        })
    }
}

/// Outcome of a decision. `optimum` is the exact minimum of the goal (for
/// `= 1` goals) or maximum of the distance between its sides (for
/// equations); it is absent when the premises are unsatisfiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<V> {
    pub status: Status,
    pub counterexample: Option<Valuation<V>>,
    pub optimum: Option<Rational>,
}

impl<V> Verdict<V> {
    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }

    fn valid(optimum: Option<Rational>) -> Self {
        Verdict {
            status: Status::Valid,
            counterexample: None,
            optimum,
        }
    }
}

impl<V: fmt::Display> Verdict<V> {
    /// `{"status", "counterexample", "optimum"}` with values in exact
    /// rational text form; keys are sorted, so output is deterministic.
    pub fn to_json(&self) -> serde_json::Value {
        let counterexample = match &self.counterexample {
            Some(cex) => serde_json::Value::Object(
                cex.iter()
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.to_string())))
                    .collect(),
            ),
            None => serde_json::Value::Null,
        };
        serde_json::json!({
            "status": self.status.to_string(),
            "counterexample": counterexample,
            "optimum": self.optimum.as_ref().map(|r| r.to_string()),
        })
    }
}

/// Largest number of variables for which a seeding grid is tried.
const SEED_GRID_MAX_VARS: usize = 6;

/// Runs the decision procedures, memoizing Łukasiewicz subproblems.
///
/// Normalized instances use positional variable names, so structurally
/// different inputs often share them.
#[derive(Debug, Default)]
pub struct Decider {
    cache: HashMap<ConsequenceInstance, Verdict<UnitRational>>,
}

impl Decider {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of distinct Łukasiewicz problems solved so far.
    pub fn solved(&self) -> usize {
        self.cache.len()
    }

    /// Decides a Łukasiewicz consequence problem over `[0, 1]`.
    pub fn mv_consequence(
        &mut self,
        inst: &ConsequenceInstance,
    ) -> Result<Verdict<UnitRational>, DecideError> {
        if let Some(v) = self.cache.get(inst) {
            return Ok(v.clone());
        }
        let verdict = solve_instance(inst)?;
        self.cache.insert(inst.clone(), verdict.clone());
        Ok(verdict)
    }

    /// `σ` takes value 1 under every valuation into `[0, 1]`.
    pub fn is_mv_tautology(&mut self, sigma: &Term) -> Result<Verdict<UnitRational>, DecideError> {
        if !sigma.is_mv_term() {
            return Err(DecideError::NotMv(sigma.clone()));
        }
        self.mv_consequence(&ConsequenceInstance::tautology(sigma.clone()))
    }

    /// `ω = σ` holds in every IMV-algebra: both endpoint instances of the
    /// reduction are valid.
    pub fn imv_equation_valid(
        &mut self,
        omega: &Term,
        sigma: &Term,
    ) -> Result<Verdict<Interval>, DecideError> {
        let chi = equation_to_mv_consequences_chi(omega, sigma);
        for inst in [&chi.delta, &chi.nabla] {
            let leg = self.mv_consequence(inst)?;
            if !leg.is_valid() {
                let cex = reassemble(&chi.var_map, &leg)?;
                if eval_imv(omega, &cex)? == eval_imv(sigma, &cex)? {
                    return Err(DecideError::SelfCheck(format!(
                        "{omega} = {sigma} at {cex:?}"
                    )));
                }
                return Ok(Verdict {
                    status: Status::Invalid,
                    counterexample: Some(cex),
                    optimum: leg.optimum,
                });
            }
        }
        Ok(Verdict::valid(Some(Rational::zero())))
    }

    /// `σ = 1` holds in every IMV-algebra. Each endpoint of `σ` is
    /// minimized separately; `optimum` is the least lower endpoint.
    pub fn is_imv_tautology(&mut self, sigma: &Term) -> Result<Verdict<Interval>, DecideError> {
        let mut map = VarMap::new();
        let lower = normalize_leg_with(sigma, Leg::Delta, &mut map);
        let upper = normalize_leg_with(sigma, Leg::Nabla, &mut map);
        let mut optimum = None;
        for goal in [lower, upper] {
            let inst = ConsequenceInstance::new(map.order_premises(), Vec::new(), Goal::Unit(goal));
            let leg = self.mv_consequence(&inst)?;
            if !leg.is_valid() {
                let cex = reassemble(&map, &leg)?;
                if eval_imv(sigma, &cex)? == Interval::one() {
                    return Err(DecideError::SelfCheck(format!("{sigma} is 1 at {cex:?}")));
                }
                return Ok(Verdict {
                    status: Status::Invalid,
                    counterexample: Some(cex),
                    optimum: leg.optimum,
                });
            }
            optimum = optimum.or(leg.optimum);
        }
        Ok(Verdict::valid(optimum))
    }

    /// `θ_1, …, θ_m ⊢ ψ` in interval logic, decided through the single
    /// instance `Y_i ≤ Z_i, θ_1^Δ = 1, …, θ_m^Δ = 1 ⊢ ψ^Δ = 1`.
    pub fn imv_consequence(
        &mut self,
        premises: &[Term],
        goal: &Term,
    ) -> Result<Verdict<Interval>, DecideError> {
        let mut map = VarMap::new();
        let unit_premises: Vec<Term> = premises
            .iter()
            .map(|p| normalize_leg_with(p, Leg::Delta, &mut map))
            .collect();
        let goal_leg = normalize_leg_with(goal, Leg::Delta, &mut map);
        let inst =
            ConsequenceInstance::new(map.order_premises(), unit_premises, Goal::Unit(goal_leg));
        let verdict = self.mv_consequence(&inst)?;
        if verdict.is_valid() {
            return Ok(Verdict::valid(verdict.optimum));
        }
        let cex = reassemble(&map, &verdict)?;
        let premises_hold = premises
            .iter()
            .map(|p| eval_imv(p, &cex))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .all(|v| v == Interval::one());
        if !premises_hold || eval_imv(goal, &cex)? == Interval::one() {
            return Err(DecideError::SelfCheck(format!("consequence at {cex:?}")));
        }
        Ok(Verdict {
            status: Status::Invalid,
            counterexample: Some(cex),
            optimum: verdict.optimum,
        })
    }

    /// Smallest `k ≤ k_max` for which `(Δθ_1 ⊙ … ⊙ Δθ_m)^k → Δψ` is an
    /// IMV tautology.
    pub fn find_local_deduction_k(
        &mut self,
        premises: &[Term],
        goal: &Term,
        k_max: u32,
    ) -> Result<Option<u32>, DecideError> {
        for k in 1..=k_max {
            if self
                .is_imv_tautology(&local_deduction_term(premises, goal, k))?
                .is_valid()
            {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

/// `(Δθ_1 ⊙ … ⊙ Δθ_m) ⊙ … ⊙ (Δθ_1 ⊙ … ⊙ Δθ_m) → Δψ` with `k` factors; the
/// empty conjunction is 1.
pub fn local_deduction_term(premises: &[Term], goal: &Term, k: u32) -> Term {
    let conj = premises
        .iter()
        .map(|p| Term::delta(p.clone()))
        .reduce(Term::odot)
        .unwrap_or(Term::One);
    let power = (1..k).fold(conj.clone(), |acc, _| Term::odot(acc, conj.clone()));
    Term::arrow(power, Term::delta(goal.clone()))
}

/// `X_i = [Y_i, Z_i]` from a scalar counterexample of a reduced instance.
fn reassemble(
    map: &VarMap,
    verdict: &Verdict<UnitRational>,
) -> Result<Valuation<Interval>, DecideError> {
    let scalar = verdict
        .counterexample
        .as_ref()
        .expect("invalid verdicts carry a witness");
    let mut out = Valuation::new();
    for (x, y, z) in map.entries() {
        let lo = scalar.get(&y).cloned().unwrap_or_else(UnitRational::zero);
        let hi = scalar.get(&z).cloned().unwrap_or_else(UnitRational::zero);
        out.insert(x.to_string(), Interval::new(lo, hi)?);
    }
    Ok(out)
}

/// Builds and solves the program for one instance, then re-checks any
/// counterexample with the evaluator.
fn solve_instance(inst: &ConsequenceInstance) -> Result<Verdict<UnitRational>, DecideError> {
    inst.check_mv()?;
    let vars = inst.variables();
    let mut c = Compiler::new();
    for name in &vars {
        c.input(name);
    }
    for (y, z) in &inst.order_premises {
        let (y, z) = (LinearExpr::var(c.input(y)), LinearExpr::var(c.input(z)));
        c.problem_mut().add_constraint(&y, Relation::Le, &z);
    }
    for p in &inst.unit_premises {
        let e = c.compile(p)?;
        c.problem_mut()
            .add_constraint(&e, Relation::Eq, &LinearExpr::constant(Rational::one()));
    }
    let (expr, sense) = match &inst.goal {
        Goal::Unit(t) => (c.compile(t)?, Sense::Minimize),
        Goal::Equal(s, t) => (
            c.compile(&Term::distance(s.clone(), t.clone()))?,
            Sense::Maximize,
        ),
    };
    c.problem_mut().objective = Objective { expr, sense };

    let seed = grid_seed(inst, &vars).map(|point| c.complete(&point));
    let (value, assignment) = match optimize_from(c.problem(), seed.as_deref()) {
        MilpOutcome::Infeasible => return Ok(Verdict::valid(None)),
        MilpOutcome::Optimal { value, assignment } => (value, assignment),
    };
    let valid = match inst.goal {
        Goal::Unit(_) => value.is_one(),
        Goal::Equal(..) => value.is_zero(),
    };
    if valid {
        return Ok(Verdict::valid(Some(value)));
    }

    let mut cex = Valuation::new();
    for (name, v) in c.inputs() {
        cex.insert(name.clone(), UnitRational::new(assignment[v.0].clone())?);
    }
    if !witnesses_failure(inst, &cex)? {
        return Err(DecideError::SelfCheck(format!("{inst} at {cex:?}")));
    }
    Ok(Verdict {
        status: Status::Invalid,
        counterexample: Some(cex),
        optimum: Some(value),
    })
}

fn witnesses_failure(
    inst: &ConsequenceInstance,
    cex: &Valuation<UnitRational>,
) -> Result<bool, DecideError> {
    for (y, z) in &inst.order_premises {
        if cex[y] > cex[z] {
            return Ok(false);
        }
    }
    for p in &inst.unit_premises {
        if !eval_mv(p, cex)?.is_one() {
            return Ok(false);
        }
    }
    Ok(match &inst.goal {
        Goal::Unit(t) => !eval_mv(t, cex)?.is_one(),
        Goal::Equal(s, t) => eval_mv(s, cex)? != eval_mv(t, cex)?,
    })
}

/// A good feasible starting point from the grid `{0, 1/2, 1}^n`, used only
/// to prune the search early.
fn grid_seed(inst: &ConsequenceInstance, vars: &[String]) -> Option<BTreeMap<String, Rational>> {
    if vars.len() > SEED_GRID_MAX_VARS {
        return None;
    }
    let alg = ChainMv::new(2).expect("k > 0");
    let mut idx = vec![0u32; vars.len()];
    let mut best: Option<(u32, Vec<u32>)> = None;
    loop {
        let lookup = |name: &str| vars.iter().position(|v| v == name).map(|p| idx[p]);
        let eval = |t: &Term| eval_mv_in(&alg, t, &lookup).ok();
        let admissible = inst
            .order_premises
            .iter()
            .all(|(y, z)| lookup(y) <= lookup(z))
            && inst
                .unit_premises
                .iter()
                .all(|p| eval(p) == Some(alg.one()));
        if admissible {
            // score: lower is better
            let score = match &inst.goal {
                Goal::Unit(t) => eval(t),
                Goal::Equal(s, t) => match (eval(s), eval(t)) {
                    (Some(a), Some(b)) => Some(2 - a.abs_diff(b)),
                    _ => None,
                },
            };
            if let Some(score) = score {
                if best.as_ref().is_none_or(|(b, _)| score < *b) {
                    best = Some((score, idx.clone()));
                }
            }
        }
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return best.map(|(_, point)| {
                    vars.iter()
                        .zip(point)
                        .map(|(v, e)| (v.clone(), alg.embed(e).into_inner()))
                        .collect()
                });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] <= 2 {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Decides a Łukasiewicz consequence problem over `[0, 1]`.
pub fn mv_consequence(inst: &ConsequenceInstance) -> Result<Verdict<UnitRational>, DecideError> {
    Decider::new().mv_consequence(inst)
}

/// `σ` is a Łukasiewicz tautology.
pub fn is_mv_tautology(sigma: &Term) -> Result<Verdict<UnitRational>, DecideError> {
    Decider::new().is_mv_tautology(sigma)
}

/// `ω = σ` holds in every IMV-algebra.
pub fn imv_equation_valid(omega: &Term, sigma: &Term) -> Result<Verdict<Interval>, DecideError> {
    Decider::new().imv_equation_valid(omega, sigma)
}

/// `σ = 1` holds in every IMV-algebra.
pub fn is_imv_tautology(sigma: &Term) -> Result<Verdict<Interval>, DecideError> {
    Decider::new().is_imv_tautology(sigma)
}

/// `θ_1, …, θ_m ⊢ ψ` in interval logic.
pub fn imv_consequence(premises: &[Term], goal: &Term) -> Result<Verdict<Interval>, DecideError> {
    Decider::new().imv_consequence(premises, goal)
}

/// Smallest local-deduction exponent up to `k_max`.
pub fn find_local_deduction_k(
    premises: &[Term],
    goal: &Term,
    k_max: u32,
) -> Result<Option<u32>, DecideError> {
    Decider::new().find_local_deduction_k(premises, goal, k_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse;

    fn p(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn mv_tautologies() {
        assert!(is_mv_tautology(&p("~X + X")).unwrap().is_valid());
        let v = is_mv_tautology(&p("X + X")).unwrap();
        assert_eq!(v.status, Status::Invalid);
        assert_eq!(v.counterexample.unwrap()["X"], UnitRational::zero());
        assert_eq!(v.optimum, Some(Rational::zero()));
        assert!(is_mv_tautology(&p("~(X * ~X)")).unwrap().is_valid());
        assert!(is_mv_tautology(&p("D X")).is_err());
    }

    #[test]
    fn consequences() {
        let inst = ConsequenceInstance::new(
            vec![("Y".into(), "Z".into())],
            vec![],
            Goal::Unit(p("~Y + Z")),
        );
        assert!(mv_consequence(&inst).unwrap().is_valid());
        let inst = ConsequenceInstance::new(vec![], vec![], Goal::Equal(p("X"), Term::One));
        let v = mv_consequence(&inst).unwrap();
        assert_eq!(v.counterexample.unwrap()["X"], UnitRational::zero());
        let inst = ConsequenceInstance::new(vec![], vec![p("X")], Goal::Unit(p("X * X")));
        assert!(mv_consequence(&inst).unwrap().is_valid());
        // unsatisfiable premises give a vacuous yes
        let inst = ConsequenceInstance::new(vec![], vec![p("X * ~X")], Goal::Unit(Term::Zero));
        assert_eq!(mv_consequence(&inst).unwrap(), Verdict::valid(None));
    }

    #[test]
    fn interval_equations() {
        let v = imv_equation_valid(&p("x + ~x"), &Term::One).unwrap();
        assert_eq!(v.counterexample.unwrap()["x"], Interval::iota());
        assert!(imv_equation_valid(&p("D x + i * N x * ~D x"), &p("x"))
            .unwrap()
            .is_valid());
        assert!(imv_equation_valid(&p("D(x + y)"), &p("D x + D y"))
            .unwrap()
            .is_valid());
    }

    #[test]
    fn interval_tautologies() {
        assert!(is_imv_tautology(&p("~D X + X")).unwrap().is_valid());
        let v = is_imv_tautology(&p("~(X * ~X)")).unwrap();
        assert_eq!(v.status, Status::Invalid);
        let x = &v.counterexample.unwrap()["X"];
        assert_ne!(
            eval_imv(&p("~(X * ~X)"), &BTreeMap::from([("X".into(), x.clone())])).unwrap(),
            Interval::one()
        );
    }

    #[test]
    fn interval_consequence() {
        assert!(imv_consequence(&[p("X")], &p("X * X")).unwrap().is_valid());
        let v = imv_consequence(&[p("X + X")], &p("X")).unwrap();
        assert_eq!(
            v.counterexample.unwrap()["X"],
            "[1/2, 1/2]".parse().unwrap()
        );
    }

    #[test]
    fn local_deduction() {
        assert_eq!(
            find_local_deduction_k(&[p("X")], &p("X"), 4).unwrap(),
            Some(1)
        );
        assert_eq!(
            find_local_deduction_k(&[p("X")], &p("X * X"), 4).unwrap(),
            Some(2)
        );
        assert_eq!(
            find_local_deduction_k(&[Term::Zero], &p("Y"), 4).unwrap(),
            Some(1)
        );
        assert_eq!(
            find_local_deduction_k(&[p("X + X")], &p("X"), 6).unwrap(),
            None
        );
    }

    #[test]
    fn json_shape() {
        let v = imv_equation_valid(&p("x + ~x"), &Term::One).unwrap();
        assert_eq!(
            v.to_json().to_string(),
            r#"{"counterexample":{"x":"[0, 1]"},"optimum":"1","status":"invalid"}"#
        );
    }
}
