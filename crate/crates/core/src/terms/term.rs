use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::TermError;

/// A term over the IMV signature `(0, 1, i, ¬, Δ, ∇, ⊕, ⊙)` plus the
/// implication `u → v`, which abbreviates `¬u ⊕ v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Term {
    Var(String),
    #[default]
    Zero,
    One,
    Iota,
    Neg(Box<Term>),
    Delta(Box<Term>),
    Nabla(Box<Term>),
    Oplus(Box<Term>, Box<Term>),
    Odot(Box<Term>, Box<Term>),
    Arrow(Box<Term>, Box<Term>),
}

/// Words that the grammar reserves and variables may not use.
pub const RESERVED_WORDS: [&str; 3] = ["D", "N", "i"];

/// `letter (letter | digit | _)*`, excluding the reserved words.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !RESERVED_WORDS.contains(&name)
}

impl Term {
    /// A variable. Panics if `name` is not a legal identifier; use
    /// [`Term::try_var`] for untrusted input.
    pub fn var(name: &str) -> Term {
        Term::try_var(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_var(name: &str) -> Result<Term, TermError> {
        if RESERVED_WORDS.contains(&name) {
            return Err(TermError::ReservedVariable(name.to_string()));
        }
        if !is_identifier(name) {
            return Err(TermError::IllegalVariable(name.to_string()));
        }
        Ok(Term::Var(name.to_string()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn delta(t: Term) -> Term {
        Term::Delta(Box::new(t))
    }

    pub fn nabla(t: Term) -> Term {
        Term::Nabla(Box::new(t))
    }

    pub fn oplus(a: Term, b: Term) -> Term {
        Term::Oplus(Box::new(a), Box::new(b))
    }

    pub fn odot(a: Term, b: Term) -> Term {
        Term::Odot(Box::new(a), Box::new(b))
    }

    pub fn arrow(a: Term, b: Term) -> Term {
        Term::Arrow(Box::new(a), Box::new(b))
    }

    /// `u ∧ v = ¬(¬u ⊙ v) ⊙ v`
    pub fn bold_meet(u: Term, v: Term) -> Term {
        Term::odot(Term::neg(Term::odot(Term::neg(u), v.clone())), v)
    }

    /// `u ∨ v = ¬(¬u ⊕ v) ⊕ v`
    pub fn bold_join(u: Term, v: Term) -> Term {
        Term::oplus(Term::neg(Term::oplus(Term::neg(u), v.clone())), v)
    }

    /// Chang distance `δ(x, y) = (x ⊙ ¬y) ⊕ (y ⊙ ¬x)`.
    pub fn distance(x: Term, y: Term) -> Term {
        Term::oplus(
            Term::odot(x.clone(), Term::neg(y.clone())),
            Term::odot(y, Term::neg(x)),
        )
    }

    /// `ζ(u, v) = Δu ⊕ (i ⊙ ∇v ⊙ ¬Δu)`
    pub fn zeta(u: Term, v: Term) -> Term {
        let du = Term::delta(u);
        Term::oplus(
            du.clone(),
            Term::odot(Term::odot(Term::Iota, Term::nabla(v)), Term::neg(du)),
        )
    }

    /// Number of symbols.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One | Term::Iota => 1,
            Term::Neg(a) | Term::Delta(a) | Term::Nabla(a) => 1 + a.size(),
            Term::Oplus(a, b) | Term::Odot(a, b) | Term::Arrow(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// True when the term uses neither `i`, `Δ` nor `∇`.
    pub fn is_mv_term(&self) -> bool {
        match self {
            Term::Iota | Term::Delta(_) | Term::Nabla(_) => false,
            Term::Var(_) | Term::Zero | Term::One => true,
            Term::Neg(a) => a.is_mv_term(),
            Term::Oplus(a, b) | Term::Odot(a, b) | Term::Arrow(a, b) => {
                a.is_mv_term() && b.is_mv_term()
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |name| {
            out.insert(name.to_string());
        });
        out
    }

    /// Distinct variables in order of first occurrence, left to right.
    pub fn vars_in_order(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.visit_vars(&mut |name| {
            if seen.insert(name.to_string()) {
                out.push(name.to_string());
            }
        });
        out
    }

    pub(crate) fn visit_vars(&self, f: &mut impl FnMut(&str)) {
        match self {
            Term::Var(name) => f(name),
            Term::Zero | Term::One | Term::Iota => {}
            Term::Neg(a) | Term::Delta(a) | Term::Nabla(a) => a.visit_vars(f),
            Term::Oplus(a, b) | Term::Odot(a, b) | Term::Arrow(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
        }
    }

    /// Simultaneous substitution; variables outside `map` are kept.
    pub fn substitute(&self, map: &BTreeMap<String, Term>) -> Term {
        self.map_vars(&|name| map.get(name).cloned())
    }

    pub(crate) fn map_vars(&self, f: &impl Fn(&str) -> Option<Term>) -> Term {
        match self {
            Term::Var(name) => f(name).unwrap_or_else(|| self.clone()),
            Term::Zero | Term::One | Term::Iota => self.clone(),
            Term::Neg(a) => Term::neg(a.map_vars(f)),
            Term::Delta(a) => Term::delta(a.map_vars(f)),
            Term::Nabla(a) => Term::nabla(a.map_vars(f)),
            Term::Oplus(a, b) => Term::oplus(a.map_vars(f), b.map_vars(f)),
            Term::Odot(a, b) => Term::odot(a.map_vars(f), b.map_vars(f)),
            Term::Arrow(a, b) => Term::arrow(a.map_vars(f), b.map_vars(f)),
        }
    }

    /// Replaces every `u → v` by `¬u ⊕ v`.
    pub fn desugar(&self) -> Term {
        match self {
            Term::Var(_) | Term::Zero | Term::One | Term::Iota => self.clone(),
            Term::Neg(a) => Term::neg(a.desugar()),
            Term::Delta(a) => Term::delta(a.desugar()),
            Term::Nabla(a) => Term::nabla(a.desugar()),
            Term::Oplus(a, b) => Term::oplus(a.desugar(), b.desugar()),
            Term::Odot(a, b) => Term::odot(a.desugar(), b.desugar()),
            Term::Arrow(a, b) => Term::oplus(Term::neg(a.desugar()), b.desugar()),
        }
    }

    pub(crate) fn node_name(&self) -> &'static str {
        match self {
            Term::Var(_) => "variable",
            Term::Zero => "0",
            Term::One => "1",
            Term::Iota => "i",
            Term::Neg(_) => "~",
            Term::Delta(_) => "D",
            Term::Nabla(_) => "N",
            Term::Oplus(..) => "+",
            Term::Odot(..) => "*",
            Term::Arrow(..) => "->",
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Arrow(..) => 1,
            Term::Oplus(..) => 2,
            Term::Odot(..) => 3,
            _ => 4,
        }
    }

    fn write_at(&self, out: &mut String, min_prec: u8) {
        if self.precedence() < min_prec {
            out.push('(');
            self.write_at(out, 0);
            out.push(')');
            return;
        }
        match self {
            Term::Var(name) => out.push_str(name),
            Term::Zero => out.push('0'),
            Term::One => out.push('1'),
            Term::Iota => out.push('i'),
            Term::Neg(a) => {
                out.push('~');
                a.write_at(out, 4);
            }
            Term::Delta(a) | Term::Nabla(a) => {
                out.push(if matches!(self, Term::Delta(_)) {
                    'D'
                } else {
                    'N'
                });
                // `DX` would lex as an identifier
                if a.precedence() >= 4 {
                    out.push(' ');
                }
                a.write_at(out, 4);
            }
            Term::Oplus(a, b) => {
                a.write_at(out, 2);
                out.push_str(" + ");
                b.write_at(out, 3);
            }
            Term::Odot(a, b) => {
                a.write_at(out, 3);
                out.push_str(" * ");
                b.write_at(out, 4);
            }
            Term::Arrow(a, b) => {
                a.write_at(out, 2);
                out.push_str(" -> ");
                b.write_at(out, 1);
            }
        }
    }
}

impl fmt::Display for Term {
    /// Minimal-parenthesis rendering in the surface grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_at(&mut out, 0);
        f.write_str(&out)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("X")
    }
    fn y() -> Term {
        Term::var("Y")
    }
    fn z() -> Term {
        Term::var("Z")
    }

    #[test]
    fn printing() {
        assert_eq!(Term::neg(Term::neg(x())).to_string(), "~~X");
        assert_eq!(
            Term::oplus(x(), Term::odot(y(), z())).to_string(),
            "X + Y * Z"
        );
        assert_eq!(
            Term::odot(Term::oplus(x(), y()), z()).to_string(),
            "(X + Y) * Z"
        );
        assert_eq!(
            Term::oplus(x(), Term::oplus(y(), z())).to_string(),
            "X + (Y + Z)"
        );
        assert_eq!(
            Term::arrow(Term::arrow(x(), y()), z()).to_string(),
            "(X -> Y) -> Z"
        );
        assert_eq!(
            Term::arrow(x(), Term::arrow(y(), z())).to_string(),
            "X -> Y -> Z"
        );
        assert_eq!(Term::delta(Term::nabla(x())).to_string(), "D N X");
        assert_eq!(Term::delta(Term::oplus(x(), y())).to_string(), "D(X + Y)");
        assert_eq!(Term::neg(Term::Iota).to_string(), "~i");
    }

    #[test]
    fn variables() {
        assert!(Term::try_var("D").is_err());
        assert!(Term::try_var("i").is_err());
        assert!(Term::try_var("1x").is_err());
        assert!(Term::try_var("").is_err());
        assert!(Term::try_var("Y_1").is_ok());
        assert!(Term::try_var("ix").is_ok());
    }

    #[test]
    fn substitution_and_free_vars() {
        let t = Term::oplus(x(), y());
        let mut map = BTreeMap::new();
        map.insert("X".to_string(), Term::delta(x()));
        assert_eq!(t.substitute(&map), Term::oplus(Term::delta(x()), y()));
        assert_eq!(t.substitute(&BTreeMap::new()), t);
        let zeta = Term::zeta(Term::var("u"), Term::var("v"));
        let vars: Vec<_> = zeta.free_vars().into_iter().collect();
        assert_eq!(vars, ["u", "v"]);
        // simultaneous: X -> Y and Y -> X swap
        let mut swap = BTreeMap::new();
        swap.insert("X".to_string(), y());
        swap.insert("Y".to_string(), x());
        assert_eq!(t.substitute(&swap), Term::oplus(y(), x()));
    }

    #[test]
    fn shape_predicates() {
        assert!(Term::arrow(x(), Term::neg(y())).is_mv_term());
        assert!(!Term::oplus(x(), Term::Iota).is_mv_term());
        assert_eq!(Term::oplus(x(), Term::neg(y())).size(), 4);
        assert_eq!(
            Term::oplus(y(), Term::odot(x(), y())).vars_in_order(),
            ["Y", "X"]
        );
        assert_eq!(
            Term::arrow(x(), y()).desugar(),
            Term::oplus(Term::neg(x()), y())
        );
    }
}
