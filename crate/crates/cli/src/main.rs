//! `imv`: decide interval Łukasiewicz logic, evaluate terms, and work with
//! interval algebras of finite ordered algebras.
//!
//! Exit codes: 0 valid or success, 1 invalid or failed check, 2 malformed
//! input, 3 enumeration budget exceeded, 4 internal error.

mod functor_cmd;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use imv_core::algebra::{Interval, UnitRational};
use imv_core::decide::{
    chain_oracle, chain_oracle_mv, ConsequenceInstance, DecideError, Decider, Goal, OracleQuery,
    Verdict, DEFAULT_BUDGET,
};
use imv_core::normalize::{normalize_leg_with, Leg, VarMap};
use imv_core::terms::{eval_imv, eval_mv, parse, Term, Valuation};

#[derive(Parser)]
#[command(
    name = "imv",
    version,
    about = "Interval MV-algebras and interval Łukasiewicz logic"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LegArg {
    Delta,
    Nabla,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether TERM = 1 holds in every IMV-algebra.
    CheckTaut {
        term: String,
        /// Decide over the standard MV-algebra [0, 1] instead.
        #[arg(long)]
        mv: bool,
    },
    /// Decide whether LHS = RHS holds in every IMV-algebra.
    CheckEq {
        lhs: String,
        rhs: String,
        /// Decide over the standard MV-algebra [0, 1] instead.
        #[arg(long)]
        mv: bool,
    },
    /// Decide PREMISE, ... |- GOAL in interval logic.
    Consequence {
        /// A premise; repeat for several.
        #[arg(long = "premise")]
        premises: Vec<String>,
        goal: String,
        /// Also report the least local-deduction exponent up to this bound.
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Print the Łukasiewicz normal form of a collapse of TERM.
    Normalize {
        term: String,
        /// Only this collapse; both when omitted.
        #[arg(long, value_enum)]
        leg: Option<LegArg>,
    },
    /// Evaluate TERM on intervals.
    Eval {
        term: String,
        /// `X=[p/q,r/s]` or `X=p/q`; repeat for each variable.
        #[arg(long = "assign")]
        assignments: Vec<String>,
    },
    /// Search the intervals of the chain L_k for a counterexample to TERM = 1.
    Oracle {
        term: String,
        #[arg(long)]
        chain: u32,
        /// Check TERM = EQUALS instead of TERM = 1.
        #[arg(long)]
        equals: Option<String>,
        /// Search L_k itself rather than its intervals.
        #[arg(long)]
        mv: bool,
    },
    /// Finite ordered algebras and their interval algebras.
    Functor {
        #[command(subcommand)]
        command: functor_cmd::FunctorCommand,
    },
}

/// Everything that stops a command before it produces a verdict.
pub enum Failure {
    Usage(String),
    Budget(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Budget(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            DecideError::SelfCheck(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// A finished command: exit code 0 or 1 plus both renderings.
pub struct Report {
    pub ok: bool,
    pub human: String,
    pub json: Value,
}

pub fn budget() -> Result<u64, Failure> {
    match std::env::var("IMV_BUDGET") {
        Ok(text) => text.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "IMV_BUDGET must be a non-negative integer, got `{text}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn term(text: &str) -> Result<Term, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("cannot parse `{text}`: {e}")))
}

fn show_valuation<V: std::fmt::Display>(val: &Valuation<V>) -> String {
    val.iter()
        .map(|(k, v)| format!("{k} = {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn verdict_report<V: std::fmt::Display>(
    verdict: &Verdict<V>,
    detail: impl FnOnce(&Valuation<V>) -> String,
) -> Report {
    let mut human = verdict.status.to_string();
    if let Some(cex) = &verdict.counterexample {
        let _ = write!(human, "\ncounterexample: {}", show_valuation(cex));
        human.push_str(&detail(cex));
    }
    Report {
        ok: verdict.is_valid(),
        human,
        json: verdict.to_json(),
    }
}

fn check_taut(text: &str, mv: bool) -> Result<Report, Failure> {
    let t = term(text)?;
    let mut decider = Decider::new();
    if mv {
        let verdict = decider.is_mv_tautology(&t)?;
        Ok(verdict_report(&verdict, |cex| {
            eval_mv(&t, cex)
                .map(|v| format!("\nvalue: {v}"))
                .unwrap_or_default()
        }))
    } else {
        let verdict = decider.is_imv_tautology(&t)?;
        Ok(verdict_report(&verdict, |cex| {
            eval_imv(&t, cex)
                .map(|v| format!("\nvalue: {v}"))
                .unwrap_or_default()
        }))
    }
}

fn check_eq(lhs: &str, rhs: &str, mv: bool) -> Result<Report, Failure> {
    let (l, r) = (term(lhs)?, term(rhs)?);
    let mut decider = Decider::new();
    if mv {
        let inst =
            ConsequenceInstance::new(Vec::new(), Vec::new(), Goal::Equal(l.clone(), r.clone()));
        inst.check_mv()?;
        let verdict = decider.mv_consequence(&inst)?;
        Ok(verdict_report(&verdict, |cex| {
            match (eval_mv(&l, cex), eval_mv(&r, cex)) {
                (Ok(a), Ok(b)) => format!("\nsides: {a} and {b}"),
                _ => String::new(),
            }
        }))
    } else {
        let verdict = decider.imv_equation_valid(&l, &r)?;
        Ok(verdict_report(&verdict, |cex| {
            match (eval_imv(&l, cex), eval_imv(&r, cex)) {
                (Ok(a), Ok(b)) => format!("\nsides: {a} and {b}"),
                _ => String::new(),
            }
        }))
    }
}

fn consequence(premises: &[String], goal: &str, k_max: Option<u32>) -> Result<Report, Failure> {
    let premises = premises
        .iter()
        .map(|p| term(p))
        .collect::<Result<Vec<_>, _>>()?;
    let goal = term(goal)?;
    let mut decider = Decider::new();
    let verdict = decider.imv_consequence(&premises, &goal)?;
    let mut report = verdict_report(&verdict, |_| String::new());
    if let Some(k_max) = k_max {
        let k = decider.find_local_deduction_k(&premises, &goal, k_max)?;
        match k {
            Some(k) => {
                let _ = write!(report.human, "\nlocal deduction exponent: {k}");
            }
            None => {
                let _ = write!(report.human, "\nno local deduction exponent up to {k_max}");
            }
        }
        report.json["local_deduction_k"] = json!(k);
    }
    Ok(report)
}

fn normalize(text: &str, leg: Option<LegArg>) -> Result<Report, Failure> {
    let t = term(text)?;
    let legs: Vec<Leg> = match leg {
        Some(LegArg::Delta) => vec![Leg::Delta],
        Some(LegArg::Nabla) => vec![Leg::Nabla],
        None => vec![Leg::Delta, Leg::Nabla],
    };
    let mut map = VarMap::new();
    let forms: Vec<(Leg, Term)> = legs
        .into_iter()
        .map(|l| (l, normalize_leg_with(&t, l, &mut map)))
        .collect();
    let mut human = String::new();
    for (leg, form) in &forms {
        let _ = writeln!(human, "{leg}: {form}");
    }
    let mut variables = Vec::new();
    for (x, lower, upper) in map.entries() {
        let _ = writeln!(human, "{x} = [{lower}, {upper}]");
        variables.push(json!({"variable": x, "lower": lower, "upper": upper}));
    }
    let legs_json: serde_json::Map<String, Value> = forms
        .iter()
        .map(|(l, f)| (l.to_string(), Value::String(f.to_string())))
        .collect();
    Ok(Report {
        ok: true,
        human: human.trim_end().to_string(),
        json: json!({"legs": legs_json, "variables": variables}),
    })
}

fn parse_assignment(text: &str) -> Result<(String, Interval), Failure> {
    let (name, value) = text.split_once('=').ok_or_else(|| {
        Failure::Usage(format!("assignment `{text}` should look like X=[1/4,3/4]"))
    })?;
    let name = name.trim();
    Term::try_var(name).map_err(|e| Failure::Usage(e.to_string()))?;
    let value: Interval = value
        .parse()
        .map_err(|e| Failure::Usage(format!("in assignment to {name}: {e}")))?;
    Ok((name.to_string(), value))
}

fn eval(text: &str, assignments: &[String]) -> Result<Report, Failure> {
    let t = term(text)?;
    let mut val = Valuation::new();
    for a in assignments {
        let (name, v) = parse_assignment(a)?;
        if val.insert(name.clone(), v).is_some() {
            return Err(Failure::Usage(format!("{name} is assigned twice")));
        }
    }
    let value = eval_imv(&t, &val).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Report {
        ok: true,
        human: value.to_string(),
        json: json!({"value": value.to_string()}),
    })
}

fn oracle(text: &str, k: u32, equals: Option<&str>, mv: bool) -> Result<Report, Failure> {
    let t = term(text)?;
    let query = match equals {
        Some(s) => OracleQuery::Equation(t, term(s)?),
        None => OracleQuery::Tautology(t),
    };
    let limit = budget()?;
    let found: Option<Valuation<String>> = if mv {
        chain_oracle_mv(&query, k, limit)?.map(|v| {
            v.into_iter()
                .map(|(x, u): (String, UnitRational)| (x, u.to_string()))
                .collect()
        })
    } else {
        chain_oracle(&query, k, limit)?
            .map(|v| v.into_iter().map(|(x, i)| (x, i.to_string())).collect())
    };
    let scope = if mv {
        format!("L_{k}")
    } else {
        format!("intervals of L_{k}")
    };
    Ok(match found {
        None => Report {
            ok: true,
            human: format!("no counterexample on {scope}"),
            json: json!({"chain": k, "counterexample": null}),
        },
        Some(cex) => Report {
            ok: false,
            human: format!("counterexample on {scope}: {}", show_valuation(&cex)),
            json: json!({"chain": k, "counterexample": cex}),
        },
    })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::CheckTaut { term, mv } => check_taut(term, *mv),
        Command::CheckEq { lhs, rhs, mv } => check_eq(lhs, rhs, *mv),
        Command::Consequence {
            premises,
            goal,
            k_max,
        } => consequence(premises, goal, *k_max),
        Command::Normalize { term, leg } => normalize(term, *leg),
        Command::Eval { term, assignments } => eval(term, assignments),
        Command::Oracle {
            term,
            chain,
            equals,
            mv,
        } => oracle(term, *chain, equals.as_deref(), *mv),
        Command::Functor { command } => functor_cmd::run(command),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Human => println!("{}", report.human),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("JSON values serialize")
                ),
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
