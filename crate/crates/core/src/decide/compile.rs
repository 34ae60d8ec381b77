//! Mixed-integer encoding of MV-terms.
//!
//! `¬u` is the affine expression `1 - u`. Each `u ⊕ v` gets a continuous
//! output `z` and a binary `b` with
//!
//! ```text
//! z ≥ b,  z ≥ u + v - b,  z ≤ u + v,  u + v ≤ 1 + b,  u + v ≥ b
//! ```
//!
//! (`z ≤ 1` is the variable bound), so that `b = 1` forces `z = 1 ≤ u + v`
//! and `b = 0` forces `z = u + v ≤ 1`. `u ⊙ v` is `¬(¬u ⊕ ¬v)` and `u → v`
//! is `¬u ⊕ v`. Structurally equal subterms share one gadget.

use std::collections::{BTreeMap, HashMap};

use crate::rational::Rational;
use crate::terms::Term;

use super::linear::{LinearExpr, MilpProblem, Relation, VarId, VarKind};
use super::DecideError;

#[derive(Clone, Debug)]
struct Gate {
    u: LinearExpr,
    v: LinearExpr,
    sum: VarId,
    flag: VarId,
}

/// Incrementally compiles MV-terms into one shared [`MilpProblem`].
#[derive(Clone, Debug, Default)]
pub struct Compiler {
    problem: MilpProblem,
    inputs: BTreeMap<String, VarId>,
    shared: HashMap<Term, LinearExpr>,
    gates: Vec<Gate>,
}

impl Compiler {
    pub fn new() -> Self {
        Self::default()
    }

    /// The continuous variable standing for the term variable `name`.
    pub fn input(&mut self, name: &str) -> VarId {
        if let Some(v) = self.inputs.get(name) {
            return *v;
        }
        let v = self.problem.add_variable(name, VarKind::Continuous);
        self.inputs.insert(name.to_string(), v);
        v
    }

    pub fn inputs(&self) -> &BTreeMap<String, VarId> {
        &self.inputs
    }

    pub fn problem(&self) -> &MilpProblem {
        &self.problem
    }

    pub fn problem_mut(&mut self) -> &mut MilpProblem {
        &mut self.problem
    }

    pub fn into_problem(self) -> MilpProblem {
        self.problem
    }

    /// An affine expression equal to the value of `t` at every feasible point.
    pub fn compile(&mut self, t: &Term) -> Result<LinearExpr, DecideError> {
        Ok(match t {
            Term::Var(name) => LinearExpr::var(self.input(name)),
            Term::Zero => LinearExpr::constant(Rational::zero()),
            Term::One => LinearExpr::constant(Rational::one()),
            Term::Iota | Term::Delta(_) | Term::Nabla(_) => {
                return Err(DecideError::NotMv(t.clone()))
            }
            Term::Neg(a) => self.compile(a)?.complement(),
            Term::Oplus(a, b) | Term::Odot(a, b) | Term::Arrow(a, b) => {
                if let Some(e) = self.shared.get(t) {
                    return Ok(e.clone());
                }
                let u = self.compile(a)?;
                let v = self.compile(b)?;
                let out = match t {
                    Term::Oplus(..) => self.oplus_gadget(u, v),
                    Term::Odot(..) => self
                        .oplus_gadget(u.complement(), v.complement())
                        .complement(),
                    _ => self.oplus_gadget(u.complement(), v),
                };
                self.shared.insert(t.clone(), out.clone());
                out
            }
        })
    }

    fn oplus_gadget(&mut self, u: LinearExpr, v: LinearExpr) -> LinearExpr {
        let k = self.gates.len();
        let sum = self
            .problem
            .add_variable(format!("s{k}"), VarKind::Continuous);
        let flag = self.problem.add_variable(format!("b{k}"), VarKind::Binary);
        let z = LinearExpr::var(sum);
        let b = LinearExpr::var(flag);
        let uv = u.plus(&v);
        let one = LinearExpr::constant(Rational::one());
        self.problem.add_constraint(&z, Relation::Ge, &b);
        self.problem.add_constraint(&z, Relation::Ge, &uv.minus(&b));
        self.problem.add_constraint(&z, Relation::Le, &uv);
        self.problem
            .add_constraint(&uv, Relation::Le, &one.plus(&b));
        self.problem.add_constraint(&uv, Relation::Ge, &b);
        self.gates.push(Gate { u, v, sum, flag });
        z
    }

    /// Extends values of the inputs to a feasible assignment of every
    /// variable by evaluating the gadgets. Missing inputs default to 0.
    pub fn complete(&self, values: &BTreeMap<String, Rational>) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.problem.variables.len()];
        for (name, v) in &self.inputs {
            if let Some(value) = values.get(name) {
                x[v.0] = value.clone();
            }
        }
        for gate in &self.gates {
            let s = gate.u.eval(&x) + gate.v.eval(&x);
            if s >= Rational::one() {
                x[gate.sum.0] = Rational::one();
                x[gate.flag.0] = Rational::one();
            } else {
                x[gate.sum.0] = s;
                x[gate.flag.0] = Rational::zero();
            }
        }
        x
    }
}

/// Encodes a single MV-term; the returned expression is its value.
pub fn compile_mv(t: &Term) -> Result<(MilpProblem, LinearExpr), DecideError> {
    let mut c = Compiler::new();
    let out = c.compile(t)?;
    Ok((c.into_problem(), out))
}
