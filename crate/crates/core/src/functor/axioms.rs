//! Quasiequations axiomatizing the interval algebras of a class of ordered
//! algebras, and exhaustive checking of quasiequations on finite algebras.

use std::collections::BTreeMap;

use super::fterm::{FTerm, Quasiequation};
use super::poalgebra::{FinitePoalgebra, Polarity, Signature};
use super::FunctorError;

/// Default cap on the assignments one check may enumerate.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

fn eq(lhs: FTerm, rhs: FTerm) -> (FTerm, FTerm) {
    (lhs, rhs)
}

/// Every symbol as `(application to x1..xn, polarity)`, constants `0` and
/// `1` first.
fn applications(sig: &Signature) -> Vec<(FTerm, Vec<FTerm>, Vec<Polarity>)> {
    let mut out = vec![
        (FTerm::Zero, Vec::new(), Vec::new()),
        (FTerm::One, Vec::new(), Vec::new()),
    ];
    for s in &sig.symbols {
        let xs: Vec<FTerm> = (1..=s.arity())
            .map(|k| FTerm::var(&format!("x{k}")))
            .collect();
        out.push((FTerm::op(&s.name, xs.clone()), xs, s.polarity.clone()));
    }
    out
}

fn rebuild(head: &FTerm, args: Vec<FTerm>) -> FTerm {
    match head {
        FTerm::Op(name, _) => FTerm::Op(name.clone(), args),
        other => other.clone(),
    }
}

/// Quasiequations whose models are the algebras `I(A)` for `A` satisfying
/// `m`, given order-determining equations `e` in variables `x, y` (so that
/// `a ≤ b` iff every pair of `e` agrees at `(a, b)`).
///
/// The list, in order: closure of the center under each operation; `m`
/// relativized to central elements; determination of an element by its
/// endpoints; `e` at `(Δx, ∇x)`; distribution of `Δ` and `∇` over each
/// operation according to its polarity; the identities for `i`, `Δ`, `∇`.
pub fn generate_axioms(
    m: &[Quasiequation],
    e: &[(FTerm, FTerm)],
    sig: &Signature,
) -> Result<Vec<Quasiequation>, FunctorError> {
    for q in m {
        let terms = q
            .premises
            .iter()
            .flat_map(|(s, t)| [s, t])
            .chain([&q.lhs, &q.rhs]);
        for t in terms {
            if t.uses_interval_ops() {
                return Err(FunctorError::NotBaseTerm(t.to_string()));
            }
        }
    }
    for (s, t) in e {
        for term in [s, t] {
            if term.uses_interval_ops() {
                return Err(FunctorError::NotBaseTerm(term.to_string()));
            }
            if let Some(v) = term
                .vars_in_order()
                .into_iter()
                .find(|v| v != "x" && v != "y")
            {
                return Err(FunctorError::Unbound(v));
            }
        }
    }
    let x = FTerm::var("x");
    let y = FTerm::var("y");
    let d = FTerm::delta;
    let n = FTerm::nabla;
    let apps = applications(sig);
    let mut out = Vec::new();

    for (app, xs, _) in &apps {
        out.push(Quasiequation {
            premises: xs.iter().map(|v| eq(d(v.clone()), v.clone())).collect(),
            lhs: d(app.clone()),
            rhs: app.clone(),
        });
    }

    for q in m {
        let mut premises: Vec<(FTerm, FTerm)> = q
            .vars_in_order()
            .into_iter()
            .map(|v| eq(d(FTerm::Var(v.clone())), FTerm::Var(v)))
            .collect();
        premises.extend(q.premises.iter().cloned());
        out.push(Quasiequation {
            premises,
            lhs: q.lhs.clone(),
            rhs: q.rhs.clone(),
        });
    }

    out.push(Quasiequation {
        premises: vec![
            eq(d(x.clone()), d(y.clone())),
            eq(n(x.clone()), n(y.clone())),
        ],
        lhs: x.clone(),
        rhs: y.clone(),
    });

    let at_endpoints: BTreeMap<String, FTerm> = [
        ("x".to_string(), d(x.clone())),
        ("y".to_string(), n(x.clone())),
    ]
    .into();
    for (s, t) in e {
        out.push(Quasiequation::equation(
            s.substitute(&at_endpoints),
            t.substitute(&at_endpoints),
        ));
    }

    for (app, xs, polarity) in &apps {
        let corner = |low: bool| {
            let args = xs
                .iter()
                .zip(polarity)
                .map(|(v, p)| {
                    if (*p == Polarity::Plus) == low {
                        d(v.clone())
                    } else {
                        n(v.clone())
                    }
                })
                .collect();
            rebuild(app, args)
        };
        out.push(Quasiequation::equation(d(app.clone()), corner(true)));
        out.push(Quasiequation::equation(n(app.clone()), corner(false)));
    }

    out.push(Quasiequation::equation(d(FTerm::Iota), FTerm::Zero));
    out.push(Quasiequation::equation(n(FTerm::Iota), FTerm::One));
    out.push(Quasiequation::equation(d(d(x.clone())), d(x.clone())));
    out.push(Quasiequation::equation(n(d(x.clone())), d(x.clone())));
    out.push(Quasiequation::equation(n(n(x.clone())), n(x.clone())));
    out.push(Quasiequation::equation(d(n(x.clone())), n(x.clone())));

    let mut seen = std::collections::HashSet::new();
    out.retain(|q| seen.insert(q.clone()));
    Ok(out)
}

/// Searches every assignment into `alg` for one satisfying the premises
/// and refuting the conclusion.
pub fn check_quasiequation(
    alg: &FinitePoalgebra,
    q: &Quasiequation,
    budget: u64,
) -> Result<Option<BTreeMap<String, String>>, FunctorError> {
    let vars = q.vars_in_order();
    let size = alg.size();
    let required = (size as u128)
        .checked_pow(vars.len() as u32)
        .unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(FunctorError::BudgetExceeded { required, budget });
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let env = |name: &str| vars.iter().position(|v| v == name).map(|p| idx[p]);
        if q.refuted_by(alg, &env)? {
            return Ok(Some(
                vars.iter()
                    .zip(&idx)
                    .map(|(v, &e)| (v.clone(), alg.name(e).to_string()))
                    .collect(),
            ));
        }
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < size {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Pairs `(a, b)` where `a ≤ b` disagrees with "every equation of `e`
/// holds at `x = a, y = b`".
pub fn order_equation_mismatches(
    alg: &FinitePoalgebra,
    e: &[(FTerm, FTerm)],
) -> Result<Vec<(String, String)>, FunctorError> {
    let mut out = Vec::new();
    for a in 0..alg.size() {
        for b in 0..alg.size() {
            let env = |name: &str| match name {
                "x" => Some(a),
                "y" => Some(b),
                _ => None,
            };
            let mut all = true;
            for (s, t) in e {
                if s.eval(alg, &env)? != t.eval(alg, &env)? {
                    all = false;
                    break;
                }
            }
            if all != alg.leq(a, b) {
                out.push((alg.name(a).to_string(), alg.name(b).to_string()));
            }
        }
    }
    Ok(out)
}
