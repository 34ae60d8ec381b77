use std::collections::BTreeSet;
use std::fmt;

use crate::terms::Term;

use super::DecideError;

/// What a consequence problem asks to derive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Goal {
    /// `t = 1`
    Unit(Term),
    /// `s = t`
    Equal(Term, Term),
}

/// `Y_1 ≤ Z_1, …, θ_1 = 1, … ⊢ goal` over the standard MV-algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConsequenceInstance {
    /// Pairs `(y, z)` read as `y ≤ z`.
    pub order_premises: Vec<(String, String)>,
    /// Terms required to take value 1.
    pub unit_premises: Vec<Term>,
    pub goal: Goal,
}

impl ConsequenceInstance {
    pub fn new(
        order_premises: Vec<(String, String)>,
        unit_premises: Vec<Term>,
        goal: Goal,
    ) -> Self {
        ConsequenceInstance {
            order_premises,
            unit_premises,
            goal,
        }
    }

    /// Goal `t = 1` with no premises.
    pub fn tautology(t: Term) -> Self {
        Self::new(Vec::new(), Vec::new(), Goal::Unit(t))
    }

    pub fn terms(&self) -> Vec<&Term> {
        let mut out: Vec<&Term> = self.unit_premises.iter().collect();
        match &self.goal {
            Goal::Unit(t) => out.push(t),
            Goal::Equal(s, t) => {
                out.push(s);
                out.push(t);
            }
        }
        out
    }

    /// Every variable mentioned, order premises first.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut add = |name: &str| {
            if seen.insert(name.to_string()) {
                out.push(name.to_string());
            }
        };
        for (y, z) in &self.order_premises {
            add(y);
            add(z);
        }
        for t in self.terms() {
            t.visit_vars(&mut add);
        }
        out
    }

    pub fn check_mv(&self) -> Result<(), DecideError> {
        match self.terms().into_iter().find(|t| !t.is_mv_term()) {
            Some(t) => Err(DecideError::NotMv(t.clone())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for ConsequenceInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut premises: Vec<String> = self
            .order_premises
            .iter()
            .map(|(y, z)| format!("{y} <= {z}"))
            .collect();
        premises.extend(self.unit_premises.iter().map(|t| t.to_string()));
        let goal = match &self.goal {
            Goal::Unit(t) => t.to_string(),
            Goal::Equal(s, t) => format!("{s} = {t}"),
        };
        write!(f, "{} |- {goal}", premises.join(", "))
    }
}
