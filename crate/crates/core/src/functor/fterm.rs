//! Terms over a declared signature extended by `Δ`, `∇` and `i`, and
//! quasiequations between them.
//!
//! Surface syntax is functional: `f(x, g(y))`, with `D t` and `N t` as
//! prefix operators, `i`, `0` and `1` as constants, and nullary symbols
//! written with or without `()`. A quasiequation is written
//! `s1 = t1, s2 = t2 => s = t`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::poalgebra::{FinitePoalgebra, Signature};
use super::FunctorError;
use crate::terms::is_identifier;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FTerm {
    Var(String),
    Zero,
    One,
    Iota,
    Delta(Box<FTerm>),
    Nabla(Box<FTerm>),
    Op(String, Vec<FTerm>),
}

impl FTerm {
    pub fn var(name: &str) -> FTerm {
        FTerm::Var(name.to_string())
    }

    pub fn delta(t: FTerm) -> FTerm {
        FTerm::Delta(Box::new(t))
    }

    pub fn nabla(t: FTerm) -> FTerm {
        FTerm::Nabla(Box::new(t))
    }

    pub fn op(name: &str, args: Vec<FTerm>) -> FTerm {
        FTerm::Op(name.to_string(), args)
    }

    /// Parses `text`; identifiers naming a symbol of `sig` are operations,
    /// all others are variables.
    pub fn parse(text: &str, sig: &Signature) -> Result<FTerm, FunctorError> {
        let mut p = Parser::new(text, sig);
        let t = p.term()?;
        p.end()?;
        Ok(t)
    }

    /// Variables in order of first occurrence.
    pub fn vars_in_order(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            FTerm::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            FTerm::Zero | FTerm::One | FTerm::Iota => {}
            FTerm::Delta(t) | FTerm::Nabla(t) => t.collect_vars(out),
            FTerm::Op(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Simultaneous substitution; unmapped variables stay.
    pub fn substitute(&self, map: &BTreeMap<String, FTerm>) -> FTerm {
        match self {
            FTerm::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            FTerm::Zero | FTerm::One | FTerm::Iota => self.clone(),
            FTerm::Delta(t) => FTerm::delta(t.substitute(map)),
            FTerm::Nabla(t) => FTerm::nabla(t.substitute(map)),
            FTerm::Op(f, args) => {
                FTerm::Op(f.clone(), args.iter().map(|a| a.substitute(map)).collect())
            }
        }
    }

    /// Whether `Δ`, `∇` or `i` occur.
    pub fn uses_interval_ops(&self) -> bool {
        match self {
            FTerm::Var(_) | FTerm::Zero | FTerm::One => false,
            FTerm::Iota | FTerm::Delta(_) | FTerm::Nabla(_) => true,
            FTerm::Op(_, args) => args.iter().any(FTerm::uses_interval_ops),
        }
    }

    /// Value in `alg`, which must carry operations `D`, `N` and `i` if the
    /// term uses them.
    pub fn eval(
        &self,
        alg: &FinitePoalgebra,
        env: &dyn Fn(&str) -> Option<usize>,
    ) -> Result<usize, FunctorError> {
        let apply = |name: &str, args: &[usize]| {
            alg.apply_named(name, args)
                .ok_or_else(|| FunctorError::UnknownSymbol(name.to_string()))
        };
        match self {
            FTerm::Var(v) => env(v).ok_or_else(|| FunctorError::Unbound(v.clone())),
            FTerm::Zero => Ok(alg.zero()),
            FTerm::One => Ok(alg.one()),
            FTerm::Iota => apply("i", &[]),
            FTerm::Delta(t) => apply("D", &[t.eval(alg, env)?]),
            FTerm::Nabla(t) => apply("N", &[t.eval(alg, env)?]),
            FTerm::Op(f, args) => {
                let vals = args
                    .iter()
                    .map(|a| a.eval(alg, env))
                    .collect::<Result<Vec<_>, _>>()?;
                apply(f, &vals)
            }
        }
    }
}

impl fmt::Display for FTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FTerm::Var(v) => f.write_str(v),
            FTerm::Zero => f.write_str("0"),
            FTerm::One => f.write_str("1"),
            FTerm::Iota => f.write_str("i"),
            FTerm::Delta(t) => write!(f, "D {t}"),
            FTerm::Nabla(t) => write!(f, "N {t}"),
            FTerm::Op(name, args) => {
                write!(f, "{name}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for FTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

/// `premises ⇒ lhs = rhs`; an equation when there are no premises.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quasiequation {
    pub premises: Vec<(FTerm, FTerm)>,
    pub lhs: FTerm,
    pub rhs: FTerm,
}

impl Quasiequation {
    pub fn equation(lhs: FTerm, rhs: FTerm) -> Self {
        Quasiequation {
            premises: Vec::new(),
            lhs,
            rhs,
        }
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<Self, FunctorError> {
        let mut p = Parser::new(text, sig);
        let mut equations = vec![p.equation()?];
        while p.eat(',') {
            equations.push(p.equation()?);
        }
        let q = if p.eat_arrow() {
            let (lhs, rhs) = p.equation()?;
            Quasiequation {
                premises: equations,
                lhs,
                rhs,
            }
        } else if equations.len() == 1 {
            let (lhs, rhs) = equations.pop().expect("one equation");
            Quasiequation::equation(lhs, rhs)
        } else {
            return Err(p.error("'=>'"));
        };
        p.end()?;
        Ok(q)
    }

    /// Variables in order of first occurrence, premises first.
    pub fn vars_in_order(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (s, t) in &self.premises {
            s.collect_vars(&mut out);
            t.collect_vars(&mut out);
        }
        self.lhs.collect_vars(&mut out);
        self.rhs.collect_vars(&mut out);
        out
    }

    pub fn substitute(&self, map: &BTreeMap<String, FTerm>) -> Self {
        Quasiequation {
            premises: self
                .premises
                .iter()
                .map(|(s, t)| (s.substitute(map), t.substitute(map)))
                .collect(),
            lhs: self.lhs.substitute(map),
            rhs: self.rhs.substitute(map),
        }
    }

    /// Whether the assignment satisfies all premises but not the
    /// conclusion.
    pub fn refuted_by(
        &self,
        alg: &FinitePoalgebra,
        env: &dyn Fn(&str) -> Option<usize>,
    ) -> Result<bool, FunctorError> {
        for (s, t) in &self.premises {
            if s.eval(alg, env)? != t.eval(alg, env)? {
                return Ok(false);
            }
        }
        Ok(self.lhs.eval(alg, env)? != self.rhs.eval(alg, env)?)
    }
}

impl fmt::Display for Quasiequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.premises.is_empty() {
            let ps: Vec<String> = self
                .premises
                .iter()
                .map(|(s, t)| format!("{s} = {t}"))
                .collect();
            write!(f, "{} => ", ps.join(", "))?;
        }
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Quasiequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, sig: &'a Signature) -> Self {
        Parser { text, pos: 0, sig }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) && !self.text[self.pos..].starts_with("=>") {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_arrow(&mut self) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with("=>") {
            self.pos += 2;
            true
        } else {
            false
        }
    }

    fn error(&mut self, expected: &str) -> FunctorError {
        self.skip_ws();
        let found = match self.text[self.pos..].chars().next() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        FunctorError::Parse {
            offset: self.pos,
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn end(&mut self) -> Result<(), FunctorError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("end of input")),
        }
    }

    fn word(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn equation(&mut self) -> Result<(FTerm, FTerm), FunctorError> {
        let lhs = self.term()?;
        if !self.eat('=') {
            return Err(self.error("'='"));
        }
        let rhs = self.term()?;
        Ok((lhs, rhs))
    }

    fn term(&mut self) -> Result<FTerm, FunctorError> {
        if self.eat('(') {
            let t = self.term()?;
            if !self.eat(')') {
                return Err(self.error("')'"));
            }
            return Ok(t);
        }
        let Some((start, word)) = self.word() else {
            return Err(self.error("a term"));
        };
        match word {
            "0" => return Ok(FTerm::Zero),
            "1" => return Ok(FTerm::One),
            "i" => return Ok(FTerm::Iota),
            "D" => return Ok(FTerm::delta(self.term()?)),
            "N" => return Ok(FTerm::nabla(self.term()?)),
            _ => {}
        }
        if let Some(symbol) = self.sig.get(word) {
            let arity = symbol.arity();
            let mut args = Vec::new();
            if self.eat('(') {
                if !self.eat(')') {
                    args.push(self.term()?);
                    while self.eat(',') {
                        args.push(self.term()?);
                    }
                    if !self.eat(')') {
                        return Err(self.error("',' or ')'"));
                    }
                }
            } else if arity > 0 {
                return Err(self.error("'('"));
            }
            if args.len() != arity {
                return Err(FunctorError::Arity {
                    symbol: word.to_string(),
                    expected: arity,
                    found: args.len(),
                });
            }
            return Ok(FTerm::Op(word.to_string(), args));
        }
        if !is_identifier(word) {
            self.pos = start;
            return Err(self.error("a term"));
        }
        if self.peek() == Some('(') {
            return Err(FunctorError::UnknownSymbol(word.to_string()));
        }
        Ok(FTerm::Var(word.to_string()))
    }
}

/// Collects the distinct variables of several quasiequations.
pub fn variables_of(qs: &[Quasiequation]) -> BTreeSet<String> {
    qs.iter().flat_map(|q| q.vars_in_order()).collect()
}
