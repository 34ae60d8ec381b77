//! Δ/∇ normal forms and the reductions from interval logic to Łukasiewicz
//! logic.
//!
//! The collapse rules push `Δ` and `∇` through every connective until they
//! sit directly above variables:
//!
//! ```text
//! Δ(x ⊕ y) → Δx ⊕ Δy    Δ(x ⊙ y) → Δx ⊙ Δy    Δ¬x → ¬∇x
//! ΔΔx → Δx    Δ∇x → ∇x    Δi → 0    Δ0 → 0    Δ1 → 1
//! ```
//!
//! and dually for `∇` (`∇¬x → ¬Δx`, `∇i → 1`). An implication is collapsed
//! as `Δ(x → y) → ¬∇x ⊕ Δy` (dually for `∇`). Rewriting is outermost-first,
//! so a contracted redex never has a collapse above it and the sum, over all
//! `Δ`/`∇` nodes, of the size of their argument strictly decreases.

use std::fmt;

use thiserror::Error;

use crate::decide::{ConsequenceInstance, Goal};
use crate::terms::{ImpTerm, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("`{0}` is not an MV-term")]
    NotMv(Term),
}

/// Which endpoint a normalized term computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Leg {
    Delta,
    Nabla,
}

impl Leg {
    pub fn apply(self, t: Term) -> Term {
        match self {
            Leg::Delta => Term::delta(t),
            Leg::Nabla => Term::nabla(t),
        }
    }
}

impl fmt::Display for Leg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Leg::Delta => "delta",
            Leg::Nabla => "nabla",
        })
    }
}

/// Maps original variables `X_i` to the scalar variables `Y_i` (lower
/// endpoint) and `Z_i` (upper endpoint), numbered by first occurrence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarMap {
    originals: Vec<String>,
}

impl VarMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers every variable of `t` not seen yet, left to right.
    pub fn register_term(&mut self, t: &Term) {
        for name in t.vars_in_order() {
            if !self.originals.contains(&name) {
                self.originals.push(name);
            }
        }
    }

    /// One-based position of `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.originals.iter().position(|n| n == name).map(|p| p + 1)
    }

    pub fn lower_name(index: usize) -> String {
        format!("Y_{index}")
    }

    pub fn upper_name(index: usize) -> String {
        format!("Z_{index}")
    }

    pub fn len(&self) -> usize {
        self.originals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.originals.is_empty()
    }

    /// `(X_i, Y_i, Z_i)` triples in index order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, String, String)> {
        self.originals
            .iter()
            .enumerate()
            .map(|(p, x)| (x.as_str(), Self::lower_name(p + 1), Self::upper_name(p + 1)))
    }

    /// The premises `Y_i ≤ Z_i`.
    pub fn order_premises(&self) -> Vec<(String, String)> {
        self.entries().map(|(_, y, z)| (y, z)).collect()
    }
}

/// An MV-term computing one endpoint of an IMV term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedLeg {
    pub leg: Leg,
    pub mv_term: Term,
    pub var_map: VarMap,
}

/// Sum over all `Δ`/`∇` nodes of the size of their argument.
pub fn collapse_measure(t: &Term) -> usize {
    match t {
        Term::Var(_) | Term::Zero | Term::One | Term::Iota => 0,
        Term::Delta(a) | Term::Nabla(a) => a.size() + collapse_measure(a),
        Term::Neg(a) => collapse_measure(a),
        Term::Oplus(a, b) | Term::Odot(a, b) | Term::Arrow(a, b) => {
            collapse_measure(a) + collapse_measure(b)
        }
    }
}

fn contract(outer: Leg, arg: &Term) -> Option<Term> {
    use Leg::{Delta, Nabla};
    Some(match (outer, arg) {
        (_, Term::Var(_)) => return None,
        (leg, Term::Oplus(x, y)) => Term::oplus(leg.apply((**x).clone()), leg.apply((**y).clone())),
        (leg, Term::Odot(x, y)) => Term::odot(leg.apply((**x).clone()), leg.apply((**y).clone())),
        (Delta, Term::Neg(x)) => Term::neg(Term::nabla((**x).clone())),
        (Nabla, Term::Neg(x)) => Term::neg(Term::delta((**x).clone())),
        (_, Term::Delta(x)) => Term::delta((**x).clone()),
        (_, Term::Nabla(x)) => Term::nabla((**x).clone()),
        (Delta, Term::Iota) | (_, Term::Zero) => Term::Zero,
        (Nabla, Term::Iota) | (_, Term::One) => Term::One,
        // u → v is ¬u ⊕ v, with the negation rule applied in the same step
        (Delta, Term::Arrow(x, y)) => Term::oplus(
            Term::neg(Term::nabla((**x).clone())),
            Term::delta((**y).clone()),
        ),
        (Nabla, Term::Arrow(x, y)) => Term::oplus(
            Term::neg(Term::delta((**x).clone())),
            Term::nabla((**y).clone()),
        ),
    })
}

/// Applies one collapse rule at the outermost-leftmost redex.
pub fn rewrite_step(t: &Term) -> Option<Term> {
    match t {
        Term::Var(_) | Term::Zero | Term::One | Term::Iota => None,
        Term::Delta(a) => contract(Leg::Delta, a),
        Term::Nabla(a) => contract(Leg::Nabla, a),
        Term::Neg(a) => rewrite_step(a).map(Term::neg),
        Term::Oplus(a, b) | Term::Odot(a, b) | Term::Arrow(a, b) => {
            let rebuild = |x: Term, y: Term| match t {
                Term::Oplus(..) => Term::oplus(x, y),
                Term::Odot(..) => Term::odot(x, y),
                _ => Term::arrow(x, y),
            };
            if let Some(a2) = rewrite_step(a) {
                Some(rebuild(a2, (**b).clone()))
            } else {
                rewrite_step(b).map(|b2| rebuild((**a).clone(), b2))
            }
        }
    }
}

/// Rewrites to a fixpoint: afterwards `Δ` and `∇` occur only directly above
/// variables.
pub fn collapse_normal_form(t: &Term) -> Term {
    let mut current = t.clone();
    while let Some(next) = rewrite_step(&current) {
        current = next;
    }
    current
}

fn rename_atoms(t: &Term, map: &VarMap) -> Term {
    let scalar = |x: &Term, upper: bool| match x {
        Term::Var(name) => {
            let i = map.index_of(name).expect("variable registered in the map");
            Term::Var(if upper {
                VarMap::upper_name(i)
            } else {
                VarMap::lower_name(i)
            })
        }
        other => unreachable!("collapse over non-variable `{other}` in normal form"),
    };
    match t {
        Term::Delta(x) => scalar(x, false),
        Term::Nabla(x) => scalar(x, true),
        Term::Var(_) => unreachable!("bare variable in a leg normal form"),
        Term::Zero | Term::One => t.clone(),
        Term::Iota => unreachable!("bare i in a leg normal form"),
        Term::Neg(a) => Term::neg(rename_atoms(a, map)),
        Term::Oplus(a, b) => Term::oplus(rename_atoms(a, map), rename_atoms(b, map)),
        Term::Odot(a, b) => Term::odot(rename_atoms(a, map), rename_atoms(b, map)),
        Term::Arrow(a, b) => Term::arrow(rename_atoms(a, map), rename_atoms(b, map)),
    }
}

/// Normalizes `leg(ω)` against a shared variable map, registering any new
/// variables of `ω`.
pub fn normalize_leg_with(omega: &Term, leg: Leg, map: &mut VarMap) -> Term {
    map.register_term(omega);
    let nf = collapse_normal_form(&leg.apply(omega.clone()));
    rename_atoms(&nf, map)
}

/// The MV-term computing the lower (`Delta`) or upper (`Nabla`) endpoint of
/// `ω` from the endpoints `Y_i`, `Z_i` of its variables.
pub fn normalize_leg(omega: &Term, leg: Leg) -> NormalizedLeg {
    let mut var_map = VarMap::new();
    let mv_term = normalize_leg_with(omega, leg, &mut var_map);
    NormalizedLeg {
        leg,
        mv_term,
        var_map,
    }
}

/// `σ(ΔX_1, …, ΔX_n)` for an MV-term `σ`.
pub fn delta_closure_psi(sigma: &Term) -> Result<Term, NormalizeError> {
    if !sigma.is_mv_term() {
        return Err(NormalizeError::NotMv(sigma.clone()));
    }
    Ok(sigma.map_vars(&|name| Some(Term::delta(Term::Var(name.to_string())))))
}

/// An IMV equation split into one Łukasiewicz consequence problem per
/// endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiReduction {
    pub var_map: VarMap,
    pub delta: ConsequenceInstance,
    pub nabla: ConsequenceInstance,
}

/// `ω = σ` holds in all IMV-algebras iff both
/// `Y_1 ≤ Z_1, …, Y_n ≤ Z_n ⊢ ω^Δ = σ^Δ` and its `∇` counterpart hold.
pub fn equation_to_mv_consequences_chi(omega: &Term, sigma: &Term) -> ChiReduction {
    let mut var_map = VarMap::new();
    var_map.register_term(omega);
    var_map.register_term(sigma);
    let mut instance = |leg| {
        let lhs = normalize_leg_with(omega, leg, &mut var_map);
        let rhs = normalize_leg_with(sigma, leg, &mut var_map);
        (lhs, rhs)
    };
    let (dl, dr) = instance(Leg::Delta);
    let (nl, nr) = instance(Leg::Nabla);
    let premises = var_map.order_premises();
    ChiReduction {
        delta: ConsequenceInstance::new(premises.clone(), vec![], Goal::Equal(dl, dr)),
        nabla: ConsequenceInstance::new(premises, vec![], Goal::Equal(nl, nr)),
        var_map,
    }
}

/// `¬δ(Δω, Δσ) ⊙ ¬δ(∇ω, ∇σ)`, an IMV tautology exactly when `ω = σ` is
/// valid.
pub fn equation_to_tautology(omega: &Term, sigma: &Term) -> Term {
    let lower = Term::distance(Term::delta(omega.clone()), Term::delta(sigma.clone()));
    let upper = Term::distance(Term::nabla(omega.clone()), Term::nabla(sigma.clone()));
    Term::odot(Term::neg(lower), Term::neg(upper))
}

/// Rewrites into the `(i, ¬, Δ, →)` signature: `0 = Δi`, `1 = ¬Δi`,
/// `∇x = ¬Δ¬x`, `x ⊕ y = ¬x → y`, `x ⊙ y = ¬(x → ¬y)`.
pub fn to_implicative(t: &Term) -> ImpTerm {
    match t {
        Term::Var(name) => ImpTerm::Var(name.clone()),
        Term::Iota => ImpTerm::Iota,
        Term::Zero => ImpTerm::delta(ImpTerm::Iota),
        Term::One => ImpTerm::neg(ImpTerm::delta(ImpTerm::Iota)),
        Term::Neg(a) => ImpTerm::neg(to_implicative(a)),
        Term::Delta(a) => ImpTerm::delta(to_implicative(a)),
        Term::Nabla(a) => ImpTerm::neg(ImpTerm::delta(ImpTerm::neg(to_implicative(a)))),
        Term::Oplus(a, b) => ImpTerm::imp(ImpTerm::neg(to_implicative(a)), to_implicative(b)),
        Term::Odot(a, b) => ImpTerm::neg(ImpTerm::imp(
            to_implicative(a),
            ImpTerm::neg(to_implicative(b)),
        )),
        Term::Arrow(a, b) => ImpTerm::imp(to_implicative(a), to_implicative(b)),
    }
}

/// Reads an implicative term in the full signature, `→` becoming
/// [`Term::Arrow`].
pub fn from_implicative(t: &ImpTerm) -> Term {
    t.to_term()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse;

    fn p(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn leg_examples() {
        let n = normalize_leg(&p("D(X + ~Y)"), Leg::Delta);
        assert_eq!(n.mv_term, p("Y_1 + ~Z_2"));
        assert_eq!(normalize_leg(&p("i"), Leg::Nabla).mv_term, Term::One);
        assert_eq!(normalize_leg(&p("i"), Leg::Delta).mv_term, Term::Zero);
        assert_eq!(normalize_leg(&p("X"), Leg::Delta).mv_term, p("Y_1"));
        assert_eq!(
            normalize_leg(&p("X -> Y"), Leg::Nabla).mv_term,
            p("~Y_1 + Z_2")
        );
    }

    #[test]
    fn bare_iota_is_eliminated_by_the_outer_collapse() {
        let n = normalize_leg(&p("i * N X + ~i"), Leg::Delta);
        assert_eq!(n.mv_term, p("0 * Z_1 + ~1"));
        assert!(n.mv_term.is_mv_term());
    }

    #[test]
    fn measure_decreases_each_step() {
        let mut t = Term::delta(p("D(X * ~N Y) + ~(i -> Z) * D 1"));
        let mut m = collapse_measure(&t);
        while let Some(next) = rewrite_step(&t) {
            let m2 = collapse_measure(&next);
            assert!(m2 < m, "{t:?} -> {next:?}");
            t = next;
            m = m2;
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(delta_closure_psi(&p("X + Y")).unwrap(), p("D X + D Y"));
        assert_eq!(delta_closure_psi(&Term::Zero).unwrap(), Term::Zero);
        assert_eq!(delta_closure_psi(&p("~X")).unwrap(), p("~D X"));
        assert!(delta_closure_psi(&p("N X")).is_err());
    }

    #[test]
    fn chi_examples() {
        let chi = equation_to_mv_consequences_chi(&p("x + ~x"), &Term::One);
        assert_eq!(chi.delta.goal, Goal::Equal(p("Y_1 + ~Z_1"), Term::One));
        assert_eq!(chi.delta.order_premises, vec![("Y_1".into(), "Z_1".into())]);

        let chi = equation_to_mv_consequences_chi(&p("D x"), &p("N x"));
        assert_eq!(chi.delta.goal, Goal::Equal(p("Y_1"), p("Z_1")));
        assert_eq!(chi.nabla.goal, Goal::Equal(p("Y_1"), p("Z_1")));

        let s = p("D(a * b) + ~c");
        let chi = equation_to_mv_consequences_chi(&s, &s);
        for inst in [&chi.delta, &chi.nabla] {
            match &inst.goal {
                Goal::Equal(l, r) => assert_eq!(l, r),
                Goal::Unit(_) => panic!("equation expected"),
            }
        }
    }

    #[test]
    fn implicative_translation_shapes() {
        assert_eq!(to_implicative(&Term::Zero), ImpTerm::delta(ImpTerm::Iota));
        assert_eq!(
            to_implicative(&p("x + y")),
            ImpTerm::imp(
                ImpTerm::neg(ImpTerm::Var("x".into())),
                ImpTerm::Var("y".into())
            )
        );
        assert_eq!(from_implicative(&to_implicative(&p("x -> i"))), p("x -> i"));
    }
}
