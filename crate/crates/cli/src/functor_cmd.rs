use std::fmt::Write as _;

use clap::Subcommand;
use serde_json::{json, Value};

use imv_core::functor::{
    self, check_equivalence, check_quasiequation, generate_axioms, FTerm, FinitePoalgebra,
    FunctorError, IntervalAlgebra, Signature, SignatureJson, Theory, TheoryJson,
};

use crate::{budget, Failure, Report};

#[derive(Subcommand)]
pub enum FunctorCommand {
    /// Check the order, the bounds and the declared polarities.
    Validate {
        /// Algebra JSON file, or `builtin:NAME` (godelN, hilbert3, mvK).
        algebra: String,
    },
    /// Build the interval algebra.
    Build { algebra: String },
    /// List the quasiequations axiomatizing the interval algebras, and check
    /// them on the interval algebra when SOURCE is an algebra.
    Axioms {
        /// Algebra JSON, signature JSON, or `builtin:NAME`.
        source: String,
        /// JSON with `axioms`, `order_equations` and `reconstruction`.
        #[arg(long)]
        theory: Option<String>,
    },
    /// Test whether the center and i generate the interval algebra, and
    /// whether TERM rebuilds every interval from its endpoints.
    Equiv {
        algebra: String,
        /// `t(y, z)` checked as `t(D x, N x) = x`.
        #[arg(long)]
        term: Option<String>,
    },
}

fn failure(e: FunctorError) -> Failure {
    match e {
        FunctorError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
        FunctorError::Internal(_) => Failure::Internal(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
}

enum Source {
    Algebra(FinitePoalgebra, Option<Theory>),
    Signature(Signature),
}

fn load(location: &str) -> Result<Source, Failure> {
    if let Some(name) = location.strip_prefix("builtin:") {
        let (alg, th) = functor::by_name(name)
            .ok_or_else(|| Failure::Usage(format!("no builtin algebra `{name}`")))?;
        return Ok(Source::Algebra(alg, Some(th)));
    }
    let text = read(location)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{location} is not JSON: {e}")))?;
    if value.get("carrier").is_some() {
        let alg = FinitePoalgebra::parse_json(&text).map_err(failure)?;
        Ok(Source::Algebra(alg, None))
    } else {
        let sig: SignatureJson = serde_json::from_value(value).map_err(|e| {
            Failure::Usage(format!(
                "{location} is neither an algebra nor a signature: {e}"
            ))
        })?;
        Ok(Source::Signature(sig.to_signature().map_err(failure)?))
    }
}

fn load_algebra(location: &str) -> Result<(FinitePoalgebra, Option<Theory>), Failure> {
    match load(location)? {
        Source::Algebra(a, th) => Ok((a, th)),
        Source::Signature(_) => Err(Failure::Usage(format!(
            "{location} is a signature, an algebra is needed"
        ))),
    }
}

fn validate(location: &str) -> Result<Report, Failure> {
    let (alg, _) = load_algebra(location)?;
    let report = alg.validate();
    let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    Ok(Report {
        ok: report.is_valid(),
        human: if report.is_valid() {
            format!(
                "valid: {} elements, {} operations",
                alg.size(),
                alg.ops().len()
            )
        } else {
            format!("invalid:\n{report}")
        },
        json: json!({"valid": report.is_valid(), "violations": lines}),
    })
}

fn invalid_report(e: FunctorError) -> Result<Report, Failure> {
    match e {
        FunctorError::Invalid(report) => Ok(Report {
            ok: false,
            human: format!("invalid:\n{report}"),
            json: json!({
                "valid": false,
                "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            }),
        }),
        other => Err(failure(other)),
    }
}

fn build(location: &str) -> Result<Report, Failure> {
    let (alg, _) = load_algebra(location)?;
    let ia = match IntervalAlgebra::build(&alg) {
        Ok(ia) => ia,
        Err(e) => return invalid_report(e),
    };
    let j = ia.algebra();
    let mut human = format!("{} intervals: {}\n", j.size(), j.names().join(" "));
    let n = j.size();
    for op in j.ops() {
        let arity = op.symbol.arity();
        for idx in 0..n.pow(arity as u32) {
            let mut args = vec![0usize; arity];
            let mut rest = idx;
            for slot in args.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            let shown: Vec<&str> = args.iter().map(|&a| j.name(a)).collect();
            let _ = writeln!(
                human,
                "{}({}) = {}",
                op.symbol.name,
                shown.join(", "),
                j.name(j.apply(op, &args))
            );
        }
    }
    let json = serde_json::to_value(j.to_json()).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Report {
        ok: true,
        human: human.trim_end().to_string(),
        json,
    })
}

fn axioms(location: &str, theory: Option<&str>) -> Result<Report, Failure> {
    let source = load(location)?;
    let sig = match &source {
        Source::Algebra(a, _) => a.signature(),
        Source::Signature(s) => s.clone(),
    };
    let theory = match (theory, &source) {
        (Some(path), _) => {
            let json: TheoryJson = serde_json::from_str(&read(path)?)
                .map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            json.to_theory(&sig).map_err(failure)?
        }
        (None, Source::Algebra(_, Some(th))) => th.clone(),
        (None, _) => Theory {
            axioms: Vec::new(),
            order_equations: Vec::new(),
            reconstruction: None,
        },
    };
    let generated =
        generate_axioms(&theory.axioms, &theory.order_equations, &sig).map_err(failure)?;
    let Source::Algebra(alg, _) = &source else {
        let shown: Vec<String> = generated.iter().map(|q| q.to_string()).collect();
        return Ok(Report {
            ok: true,
            human: shown.join("\n"),
            json: json!({"axioms": shown}),
        });
    };
    let ia = match IntervalAlgebra::build(alg) {
        Ok(ia) => ia,
        Err(e) => return invalid_report(e),
    };
    let limit = budget()?;
    let mut ok = true;
    let mut human = String::new();
    let mut entries = Vec::new();
    let mismatches =
        functor::order_equation_mismatches(alg, &theory.order_equations).map_err(failure)?;
    if !theory.order_equations.is_empty() && !mismatches.is_empty() {
        ok = false;
        let _ = writeln!(
            human,
            "order equations do not determine the order at {mismatches:?}"
        );
    }
    for q in &theory.axioms {
        if let Some(cex) = check_quasiequation(alg, q, limit).map_err(failure)? {
            ok = false;
            let _ = writeln!(human, "base algebra fails {q} at {cex:?}");
        }
    }
    for q in &generated {
        let cex = check_quasiequation(ia.algebra(), q, limit).map_err(failure)?;
        match &cex {
            None => {
                let _ = writeln!(human, "holds  {q}");
            }
            Some(c) => {
                ok = false;
                let shown: Vec<String> = c.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                let _ = writeln!(human, "FAILS  {q}  at {}", shown.join(", "));
            }
        }
        entries.push(json!({"axiom": q.to_string(), "counterexample": cex}));
    }
    Ok(Report {
        ok,
        human: human.trim_end().to_string(),
        json: json!({"axioms": entries, "order_mismatches": mismatches, "holds": ok}),
    })
}

fn equiv(location: &str, term: Option<&str>) -> Result<Report, Failure> {
    let (alg, theory) = load_algebra(location)?;
    let ia = match IntervalAlgebra::build(&alg) {
        Ok(ia) => ia,
        Err(e) => return invalid_report(e),
    };
    let t = match term {
        Some(text) => Some(FTerm::parse(text, &ia.algebra().signature()).map_err(failure)?),
        None => theory.and_then(|th| th.reconstruction),
    };
    let report = check_equivalence(&alg, t.as_ref()).map_err(failure)?;
    let json = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Report {
        ok: report.holds(),
        human: report.to_string(),
        json,
    })
}

pub fn run(command: &FunctorCommand) -> Result<Report, Failure> {
    match command {
        FunctorCommand::Validate { algebra } => validate(algebra),
        FunctorCommand::Build { algebra } => build(algebra),
        FunctorCommand::Axioms { source, theory } => axioms(source, theory.as_deref()),
        FunctorCommand::Equiv { algebra, term } => equiv(algebra, term.as_deref()),
    }
}
