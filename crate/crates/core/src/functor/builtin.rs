//! Small algebras used in tests and from the command line, each with
//! quasiequations it satisfies, equations determining its order, and a
//! term rebuilding intervals from their endpoints where one exists.

use serde::{Deserialize, Serialize};

use super::fterm::{FTerm, Quasiequation};
use super::poalgebra::{FinitePoalgebra, Polarity, Signature, Symbol};
use super::FunctorError;
use crate::rational::Rational;

use Polarity::{Minus, Plus};

/// Statements about an algebra in its signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub axioms: Vec<Quasiequation>,
    /// Equations in `x, y` holding exactly when `x ≤ y`.
    pub order_equations: Vec<(FTerm, FTerm)>,
    /// `t(y, z)` with `t(Δx, ∇x) = x` on the interval algebra.
    pub reconstruction: Option<FTerm>,
}

/// The file form of a [`Theory`], with terms as text.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryJson {
    #[serde(default)]
    pub axioms: Vec<String>,
    #[serde(default)]
    pub order_equations: Vec<(String, String)>,
    #[serde(default)]
    pub reconstruction: Option<String>,
}

impl TheoryJson {
    pub fn to_theory(&self, sig: &Signature) -> Result<Theory, FunctorError> {
        Ok(Theory {
            axioms: self
                .axioms
                .iter()
                .map(|q| Quasiequation::parse(q, sig))
                .collect::<Result<_, _>>()?,
            order_equations: self
                .order_equations
                .iter()
                .map(|(s, t)| Ok((FTerm::parse(s, sig)?, FTerm::parse(t, sig)?)))
                .collect::<Result<_, FunctorError>>()?,
            reconstruction: self
                .reconstruction
                .as_deref()
                .map(|t| FTerm::parse(t, sig))
                .transpose()?,
        })
    }
}

fn theory(
    alg: &FinitePoalgebra,
    axioms: &[&str],
    order: &[(&str, &str)],
    t: Option<&str>,
) -> Theory {
    TheoryJson {
        axioms: axioms.iter().map(|s| s.to_string()).collect(),
        order_equations: order
            .iter()
            .map(|(s, t)| (s.to_string(), t.to_string()))
            .collect(),
        reconstruction: t.map(str::to_string),
    }
    .to_theory(&alg.signature())
    .expect("builtin theories parse")
}

fn chain_names(n: usize) -> Vec<String> {
    let mut names = vec!["0".to_string()];
    names.extend((0..n.saturating_sub(2)).map(|k| ((b'a' + k as u8) as char).to_string()));
    if n > 1 {
        names.push("1".to_string());
    }
    names
}

fn chain_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|k| (k - 1, k)).collect()
}

const LATTICE_RECONSTRUCTION: &str = "meet(join(i, y), z)";

/// The `n`-element chain `0 < a < b < … < 1` as a Heyting algebra with
/// meet, join and the Gödel implication.
pub fn godel_chain(n: usize) -> Result<(FinitePoalgebra, Theory), FunctorError> {
    if !(2..=26).contains(&n) {
        return Err(FunctorError::Internal(format!(
            "chain size {n} is out of range"
        )));
    }
    let top = n - 1;
    let alg = FinitePoalgebra::from_fn(
        chain_names(n),
        &chain_pairs(n),
        0,
        top,
        vec![
            (
                Symbol::new("meet", &[Plus, Plus]),
                Box::new(|a: &[usize]| a[0].min(a[1])),
            ),
            (
                Symbol::new("join", &[Plus, Plus]),
                Box::new(|a: &[usize]| a[0].max(a[1])),
            ),
            (
                Symbol::new("imp", &[Minus, Plus]),
                Box::new(move |a: &[usize]| if a[0] <= a[1] { top } else { a[1] }),
            ),
        ],
    )?;
    let th = theory(
        &alg,
        &[
            "meet(x, join(x, y)) = x",
            "join(x, meet(x, y)) = x",
            "meet(x, y) = meet(y, x)",
            "imp(x, x) = 1",
            "meet(x, imp(x, y)) = meet(x, y)",
            "meet(y, imp(x, y)) = y",
            "imp(x, meet(y, z)) = meet(imp(x, y), imp(x, z))",
            "join(imp(x, y), imp(y, x)) = 1",
        ],
        &[("meet(x, y)", "x")],
        Some(LATTICE_RECONSTRUCTION),
    );
    Ok((alg, th))
}

/// The chain `0 < a < 1` with only the Gödel implication.
pub fn hilbert3() -> (FinitePoalgebra, Theory) {
    let alg = FinitePoalgebra::from_fn(
        chain_names(3),
        &chain_pairs(3),
        0,
        2,
        vec![(
            Symbol::new("imp", &[Minus, Plus]),
            Box::new(|a: &[usize]| if a[0] <= a[1] { 2 } else { a[1] }),
        )],
    )
    .expect("builtin algebra");
    let th = theory(
        &alg,
        &[
            "imp(x, imp(y, x)) = 1",
            "imp(imp(x, imp(y, z)), imp(imp(x, y), imp(x, z))) = 1",
            "imp(x, y) = 1, imp(y, x) = 1 => x = y",
            "imp(0, x) = 1",
            "imp(x, 1) = 1",
        ],
        &[("imp(x, y)", "1")],
        None,
    );
    (alg, th)
}

/// The Łukasiewicz chain `{0, 1/k, …, 1}` with negation, `⊕` and `⊙`.
pub fn mv_chain(k: u32) -> Result<(FinitePoalgebra, Theory), FunctorError> {
    if k == 0 || k > 64 {
        return Err(FunctorError::Internal(format!(
            "chain denominator {k} is out of range"
        )));
    }
    let top = k as usize;
    let names = (0..=k as i64)
        .map(|j| {
            Rational::new(j, k as i64)
                .expect("nonzero denominator")
                .to_string()
        })
        .collect();
    let alg = FinitePoalgebra::from_fn(
        names,
        &chain_pairs(top + 1),
        0,
        top,
        vec![
            (
                Symbol::new("neg", &[Minus]),
                Box::new(move |a: &[usize]| top - a[0]),
            ),
            (
                Symbol::new("oplus", &[Plus, Plus]),
                Box::new(move |a: &[usize]| (a[0] + a[1]).min(top)),
            ),
            (
                Symbol::new("odot", &[Plus, Plus]),
                Box::new(move |a: &[usize]| (a[0] + a[1]).saturating_sub(top)),
            ),
        ],
    )?;
    let th = theory(
        &alg,
        &[
            "oplus(x, oplus(y, z)) = oplus(oplus(x, y), z)",
            "oplus(x, y) = oplus(y, x)",
            "oplus(x, 0) = x",
            "oplus(x, neg(0)) = neg(0)",
            "neg(neg(x)) = x",
            "oplus(neg(oplus(neg(x), y)), y) = oplus(neg(oplus(neg(y), x)), x)",
            "odot(x, y) = neg(oplus(neg(x), neg(y)))",
            "neg(0) = 1",
        ],
        &[("oplus(neg(x), y)", "1")],
        Some("oplus(y, odot(odot(i, z), neg(y)))"),
    );
    Ok((alg, th))
}

/// Looks a builtin up by name: `godel<n>`, `hilbert3` or `mv<k>`.
pub fn by_name(name: &str) -> Option<(FinitePoalgebra, Theory)> {
    if name == "hilbert3" {
        return Some(hilbert3());
    }
    if let Some(n) = name.strip_prefix("godel") {
        return godel_chain(n.parse().ok()?).ok();
    }
    if let Some(k) = name.strip_prefix("mv") {
        return mv_chain(k.parse().ok()?).ok();
    }
    None
}
