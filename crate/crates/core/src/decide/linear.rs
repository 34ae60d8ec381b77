//! Linear expressions and mixed 0/1 linear programs over `[0, 1]`-bounded
//! variables.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Continuous,
    Binary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

/// `Σ coeffs[v]·v + constant`
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearExpr {
    pub coeffs: BTreeMap<VarId, Rational>,
    pub constant: Rational,
}

impl LinearExpr {
    pub fn constant(c: Rational) -> Self {
        LinearExpr {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn var(v: VarId) -> Self {
        LinearExpr {
            coeffs: BTreeMap::from([(v, Rational::one())]),
            constant: Rational::zero(),
        }
    }

    pub fn add_term(&mut self, v: VarId, c: &Rational) {
        let entry = self.coeffs.entry(v).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn plus(&self, other: &LinearExpr) -> LinearExpr {
        let mut out = self.clone();
        for (v, c) in &other.coeffs {
            out.add_term(*v, c);
        }
        out.constant = &out.constant + &other.constant;
        out
    }

    pub fn scaled(&self, factor: &Rational) -> LinearExpr {
        if factor.is_zero() {
            return LinearExpr::default();
        }
        LinearExpr {
            coeffs: self.coeffs.iter().map(|(v, c)| (*v, c * factor)).collect(),
            constant: &self.constant * factor,
        }
    }

    pub fn minus(&self, other: &LinearExpr) -> LinearExpr {
        self.plus(&other.scaled(&-Rational::one()))
    }

    /// `1 - self`
    pub fn complement(&self) -> LinearExpr {
        LinearExpr::constant(Rational::one()).minus(self)
    }

    pub fn eval(&self, assignment: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .fold(self.constant.clone(), |acc, (v, c)| {
                acc + c * &assignment[v.0]
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// `Σ coeffs[v]·v  relation  constant`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: BTreeMap<VarId, Rational>,
    pub relation: Relation,
    pub constant: Rational,
}

impl LinearConstraint {
    /// `lhs relation rhs`, with everything moved to normal form.
    pub fn new(lhs: &LinearExpr, relation: Relation, rhs: &LinearExpr) -> Self {
        let diff = lhs.minus(rhs);
        LinearConstraint {
            coeffs: diff.coeffs,
            relation,
            constant: -diff.constant,
        }
    }

    pub fn is_satisfied(&self, assignment: &[Rational]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .fold(Rational::zero(), |acc, (v, c)| acc + c * &assignment[v.0]);
        match self.relation {
            Relation::Le => lhs <= self.constant,
            Relation::Eq => lhs == self.constant,
            Relation::Ge => lhs >= self.constant,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub expr: LinearExpr,
    pub sense: Sense,
}

/// A mixed 0/1 linear program. Every variable lies in `[0, 1]`; binaries
/// must additionally be integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilpProblem {
    pub variables: Vec<Variable>,
    pub constraints: Vec<LinearConstraint>,
    pub objective: Objective,
}

impl Default for MilpProblem {
    fn default() -> Self {
        MilpProblem {
            variables: Vec::new(),
            constraints: Vec::new(),
            objective: Objective {
                expr: LinearExpr::default(),
                sense: Sense::Minimize,
            },
        }
    }
}

impl MilpProblem {
    pub fn add_variable(&mut self, name: impl Into<String>, kind: VarKind) -> VarId {
        self.variables.push(Variable {
            name: name.into(),
            kind,
        });
        VarId(self.variables.len() - 1)
    }

    pub fn add_constraint(&mut self, lhs: &LinearExpr, relation: Relation, rhs: &LinearExpr) {
        let c = LinearConstraint::new(lhs, relation, rhs);
        self.constraints.push(c);
    }

    pub fn binaries(&self) -> impl Iterator<Item = VarId> + '_ {
        self.variables
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == VarKind::Binary)
            .map(|(i, _)| VarId(i))
    }

    pub fn binary_count(&self) -> usize {
        self.binaries().count()
    }

    /// Bounds, integrality and every constraint.
    pub fn is_feasible(&self, assignment: &[Rational]) -> bool {
        assignment.len() == self.variables.len()
            && self.variables.iter().zip(assignment).all(|(var, x)| {
                !x.is_negative()
                    && *x <= Rational::one()
                    && (var.kind == VarKind::Continuous || x.is_zero() || x.is_one())
            })
            && self.constraints.iter().all(|c| c.is_satisfied(assignment))
    }
}

impl fmt::Display for MilpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |coeffs: &BTreeMap<VarId, Rational>| {
            if coeffs.is_empty() {
                return "0".to_string();
            }
            coeffs
                .iter()
                .map(|(v, c)| format!("{c}*{}", self.variables[v.0].name))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let sense = match self.objective.sense {
            Sense::Minimize => "minimize",
            Sense::Maximize => "maximize",
        };
        writeln!(
            f,
            "{sense} {} + {}",
            render(&self.objective.expr.coeffs),
            self.objective.expr.constant
        )?;
        for c in &self.constraints {
            let rel = match c.relation {
                Relation::Le => "<=",
                Relation::Eq => "=",
                Relation::Ge => ">=",
            };
            writeln!(f, "  {} {rel} {}", render(&c.coeffs), c.constant)?;
        }
        Ok(())
    }
}
