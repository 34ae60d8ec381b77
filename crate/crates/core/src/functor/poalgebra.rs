//! Finite bounded partially ordered algebras whose operations are monotone
//! or antitone in each argument.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FunctorError;

/// Names that operation symbols may not use: the constants and the interval
/// operations added by the construction.
pub const RESERVED_SYMBOLS: [&str; 5] = ["0", "1", "i", "D", "N"];

/// An operation given as a function on element indices.
pub type OpFn<'a> = Box<dyn Fn(&[usize]) -> usize + 'a>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Plus => "+",
            Polarity::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub polarity: Vec<Polarity>,
}

impl Symbol {
    pub fn new(name: &str, polarity: &[Polarity]) -> Self {
        Symbol {
            name: name.to_string(),
            polarity: polarity.to_vec(),
        }
    }

    pub fn arity(&self) -> usize {
        self.polarity.len()
    }
}

/// Operation symbols besides the constants `0` and `1`, which every
/// signature has.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub symbols: Vec<Symbol>,
}

impl Signature {
    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.symbols.iter().find(|s| s.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    pub symbol: Symbol,
    /// Values indexed by the arguments read as base-`n` digits, first
    /// argument most significant.
    pub table: Vec<usize>,
}

/// A finite algebra with a partial order and bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoalgebra {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    zero: usize,
    one: usize,
    ops: Vec<Operation>,
}

/// One failure of the ordered-algebra conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotReflexive(String),
    NotAntisymmetric(String, String),
    NotTransitive(String, String, String),
    BelowZero(String),
    AboveOne(String),
    /// Raising coordinate `coordinate` (0-based) from `lower` to `upper`
    /// moved the value the wrong way.
    Polarity {
        op: String,
        coordinate: usize,
        polarity: Polarity,
        lower: Vec<String>,
        upper: Vec<String>,
        lower_value: String,
        upper_value: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotReflexive(a) => write!(f, "order is not reflexive at {a}"),
            Violation::NotAntisymmetric(a, b) => {
                write!(f, "{a} <= {b} and {b} <= {a} but {a} != {b}")
            }
            Violation::NotTransitive(a, b, c) => {
                write!(f, "{a} <= {b} <= {c} but not {a} <= {c}")
            }
            Violation::BelowZero(a) => write!(f, "the bottom is not below {a}"),
            Violation::AboveOne(a) => write!(f, "{a} is not below the top"),
            Violation::Polarity {
                op,
                coordinate,
                polarity,
                lower,
                upper,
                lower_value,
                upper_value,
            } => {
                write!(
                f,
                "{op} is not {} in argument {}: {op}({}) = {lower_value}, {op}({}) = {upper_value}",
                if *polarity == Polarity::Plus { "monotone" } else { "antitone" },
                coordinate + 1,
                lower.join(", "),
                upper.join(", "),
            )
            }
        }
    }
}

/// All violations found by [`FinitePoalgebra::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Splits a table key at commas outside brackets, so element names such as
/// `[0, a]` can appear in keys.
fn split_key(key: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in key.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&key[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&key[start..]);
    out
}

fn check_element_name(name: &str) -> Result<(), FunctorError> {
    if name.is_empty() || split_key(name).len() != 1 || name.trim() != name {
        return Err(FunctorError::BadName(name.to_string()));
    }
    Ok(())
}

fn check_symbol_name(name: &str) -> Result<(), FunctorError> {
    if RESERVED_SYMBOLS.contains(&name) {
        return Err(FunctorError::ReservedSymbol(name.to_string()));
    }
    if !crate::terms::is_identifier(name) {
        return Err(FunctorError::BadName(name.to_string()));
    }
    Ok(())
}

/// Reflexive-transitive closure of `pairs` over `n` points.
fn closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n]; n];
    for (a, row) in leq.iter_mut().enumerate() {
        row[a] = true;
    }
    for &(a, b) in pairs {
        leq[a][b] = true;
    }
    for k in 0..n {
        let through = leq[k].clone();
        for row in leq.iter_mut() {
            if row[k] {
                for (b, &kb) in through.iter().enumerate() {
                    if kb {
                        row[b] = true;
                    }
                }
            }
        }
    }
    leq
}

impl FinitePoalgebra {
    /// Builds an algebra from element names, generating pairs of the order
    /// (closed reflexively and transitively), bounds, and operations given
    /// as functions on element indices.
    pub fn from_fn(
        names: Vec<String>,
        order_pairs: &[(usize, usize)],
        zero: usize,
        one: usize,
        ops: Vec<(Symbol, OpFn<'_>)>,
    ) -> Result<Self, FunctorError> {
        let n = names.len();
        if n == 0 {
            return Err(FunctorError::EmptyCarrier);
        }
        for (k, name) in names.iter().enumerate() {
            check_element_name(name)?;
            if names[..k].contains(name) {
                return Err(FunctorError::DuplicateName(name.clone()));
            }
        }
        let mut built = Vec::new();
        for (symbol, f) in ops {
            check_symbol_name(&symbol.name)?;
            if built
                .iter()
                .any(|o: &Operation| o.symbol.name == symbol.name)
            {
                return Err(FunctorError::DuplicateName(symbol.name.clone()));
            }
            let arity = symbol.arity();
            let mut table = Vec::with_capacity(n.pow(arity as u32));
            let mut args = vec![0usize; arity];
            for idx in 0..n.pow(arity as u32) {
                let mut rest = idx;
                for slot in args.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                let value = f(&args);
                if value >= n {
                    return Err(FunctorError::Internal(format!(
                        "{} returned an index outside the carrier",
                        symbol.name
                    )));
                }
                table.push(value);
            }
            built.push(Operation { symbol, table });
        }
        Ok(FinitePoalgebra {
            leq: closure(n, order_pairs),
            names,
            zero,
            one,
            ops: built,
        })
    }

    /// Like [`FinitePoalgebra::from_fn`] with the order given as a full
    /// relation instead of generating pairs.
    pub fn from_relation(
        names: Vec<String>,
        leq: &dyn Fn(usize, usize) -> bool,
        zero: usize,
        one: usize,
        ops: Vec<(Symbol, OpFn<'_>)>,
    ) -> Result<Self, FunctorError> {
        let n = names.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| leq(a, b))
            .collect();
        let mut alg = Self::from_fn(names, &pairs, zero, one, ops)?;
        // keep the relation exactly as given so validation can see it
        alg.leq = (0..n)
            .map(|a| (0..n).map(|b| leq(a, b)).collect())
            .collect();
        Ok(alg)
    }

    /// Assembles an algebra without checking names; used for constructed
    /// algebras whose operations include `D`, `N` and `i`.
    pub(crate) fn from_parts(
        names: Vec<String>,
        leq: Vec<Vec<bool>>,
        zero: usize,
        one: usize,
        ops: Vec<Operation>,
    ) -> Self {
        FinitePoalgebra {
            names,
            leq,
            zero,
            one,
            ops,
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn op(&self, name: &str) -> Option<&Operation> {
        self.ops.iter().find(|o| o.symbol.name == name)
    }

    pub fn signature(&self) -> Signature {
        Signature {
            symbols: self.ops.iter().map(|o| o.symbol.clone()).collect(),
        }
    }

    fn table_index(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.size() + a)
    }

    pub fn apply(&self, op: &Operation, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), op.symbol.arity());
        op.table[self.table_index(args)]
    }

    /// Applies the operation named `name`; `0` and `1` name the bounds.
    pub fn apply_named(&self, name: &str, args: &[usize]) -> Option<usize> {
        match (name, args.len()) {
            ("0", 0) => Some(self.zero),
            ("1", 0) => Some(self.one),
            _ => {
                let op = self.op(name)?;
                (op.symbol.arity() == args.len()).then(|| self.apply(op, args))
            }
        }
    }

    /// Checks the partial order, the bounds, and the polarity of every
    /// operation at every tuple and every comparable pair in each
    /// coordinate.
    pub fn validate(&self) -> ValidationReport {
        let n = self.size();
        let name = |e: usize| self.names[e].clone();
        let mut violations = Vec::new();
        for a in 0..n {
            if !self.leq[a][a] {
                violations.push(Violation::NotReflexive(name(a)));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.leq[a][b] && self.leq[b][a] {
                    violations.push(Violation::NotAntisymmetric(name(a), name(b)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.leq[a][b] && self.leq[b][c] && !self.leq[a][c] {
                        violations.push(Violation::NotTransitive(name(a), name(b), name(c)));
                    }
                }
            }
        }
        for a in 0..n {
            if !self.leq[self.zero][a] {
                violations.push(Violation::BelowZero(name(a)));
            }
            if !self.leq[a][self.one] {
                violations.push(Violation::AboveOne(name(a)));
            }
        }
        for op in &self.ops {
            let arity = op.symbol.arity();
            for idx in 0..n.pow(arity as u32) {
                let mut args = vec![0usize; arity];
                let mut rest = idx;
                for slot in args.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                for k in 0..arity {
                    let a = args[k];
                    for b in 0..n {
                        if a == b || !self.leq[a][b] {
                            continue;
                        }
                        let mut upper = args.clone();
                        upper[k] = b;
                        let lo_val = self.apply(op, &args);
                        let hi_val = self.apply(op, &upper);
                        let ok = match op.symbol.polarity[k] {
                            Polarity::Plus => self.leq[lo_val][hi_val],
                            Polarity::Minus => self.leq[hi_val][lo_val],
                        };
                        if !ok {
                            violations.push(Violation::Polarity {
                                op: op.symbol.name.clone(),
                                coordinate: k,
                                polarity: op.symbol.polarity[k],
                                lower: args.iter().map(|&e| name(e)).collect(),
                                upper: upper.iter().map(|&e| name(e)).collect(),
                                lower_value: name(lo_val),
                                upper_value: name(hi_val),
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Same tables and order, with new polarities for the named operation.
    pub fn with_polarity(&self, op: &str, polarity: &[Polarity]) -> Result<Self, FunctorError> {
        let mut out = self.clone();
        let target = out
            .ops
            .iter_mut()
            .find(|o| o.symbol.name == op)
            .ok_or_else(|| FunctorError::UnknownSymbol(op.to_string()))?;
        if target.symbol.arity() != polarity.len() {
            return Err(FunctorError::Arity {
                symbol: op.to_string(),
                expected: target.symbol.arity(),
                found: polarity.len(),
            });
        }
        target.symbol.polarity = polarity.to_vec();
        Ok(out)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let n = self.size();
        let mut leq = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] {
                    leq.push((self.names[a].clone(), self.names[b].clone()));
                }
            }
        }
        let ops = self
            .ops
            .iter()
            .map(|op| {
                let arity = op.symbol.arity();
                let mut table = BTreeMap::new();
                for idx in 0..n.pow(arity as u32) {
                    let mut args = vec![0usize; arity];
                    let mut rest = idx;
                    for slot in args.iter_mut().rev() {
                        *slot = rest % n;
                        rest /= n;
                    }
                    let key = args
                        .iter()
                        .map(|&e| self.names[e].as_str())
                        .collect::<Vec<_>>()
                        .join(",");
                    table.insert(key, self.names[op.table[idx]].clone());
                }
                (
                    op.symbol.name.clone(),
                    OpJson {
                        arity,
                        polarity: op.symbol.polarity.clone(),
                        table,
                    },
                )
            })
            .collect();
        AlgebraJson {
            carrier: self.names.clone(),
            leq,
            bounds: BoundsJson {
                zero: self.names[self.zero].clone(),
                one: self.names[self.one].clone(),
            },
            ops,
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self, FunctorError> {
        let names = json.carrier.clone();
        let index = |name: &str| {
            names
                .iter()
                .position(|n| n == name.trim())
                .ok_or_else(|| FunctorError::UnknownElement(name.to_string()))
        };
        let mut pairs = Vec::new();
        for (a, b) in &json.leq {
            pairs.push((index(a)?, index(b)?));
        }
        let zero = index(&json.bounds.zero)?;
        let one = index(&json.bounds.one)?;
        let n = names.len();
        let mut ops: Vec<(Symbol, OpFn<'static>)> = Vec::new();
        for (op_name, op) in &json.ops {
            if op.polarity.len() != op.arity {
                return Err(FunctorError::Arity {
                    symbol: op_name.clone(),
                    expected: op.arity,
                    found: op.polarity.len(),
                });
            }
            let mut table = vec![None; n.pow(op.arity as u32)];
            for (key, value) in &op.table {
                let args: Vec<usize> = if op.arity == 0 {
                    if !key.trim().is_empty() {
                        return Err(FunctorError::BadTableKey {
                            op: op_name.clone(),
                            key: key.clone(),
                        });
                    }
                    Vec::new()
                } else {
                    split_key(key)
                        .into_iter()
                        .map(index)
                        .collect::<Result<_, _>>()?
                };
                if args.len() != op.arity {
                    return Err(FunctorError::BadTableKey {
                        op: op_name.clone(),
                        key: key.clone(),
                    });
                }
                let slot = args.iter().fold(0, |acc, &a| acc * n + a);
                table[slot] = Some(index(value)?);
            }
            if let Some(missing) = table.iter().position(|v| v.is_none()) {
                let mut args = vec![0usize; op.arity];
                let mut rest = missing;
                for slot in args.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                return Err(FunctorError::MissingTableEntry {
                    op: op_name.clone(),
                    key: args
                        .iter()
                        .map(|&e| names[e].as_str())
                        .collect::<Vec<_>>()
                        .join(","),
                });
            }
            let table: Vec<usize> = table.into_iter().map(|v| v.expect("checked")).collect();
            let arity = op.arity;
            ops.push((
                Symbol {
                    name: op_name.clone(),
                    polarity: op.polarity.clone(),
                },
                Box::new(move |args: &[usize]| {
                    let slot = args.iter().fold(0, |acc, &a| acc * n + a);
                    debug_assert_eq!(args.len(), arity);
                    table[slot]
                }),
            ));
        }
        Self::from_fn(names.clone(), &pairs, zero, one, ops)
    }

    pub fn parse_json(text: &str) -> Result<Self, FunctorError> {
        let json: AlgebraJson =
            serde_json::from_str(text).map_err(|e| FunctorError::Json(e.to_string()))?;
        Self::from_json(&json)
    }
}

/// The file form of a finite algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub carrier: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    pub bounds: BoundsJson,
    #[serde(default)]
    pub ops: BTreeMap<String, OpJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsJson {
    pub zero: String,
    pub one: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpJson {
    pub arity: usize,
    pub polarity: Vec<Polarity>,
    #[serde(default)]
    pub table: BTreeMap<String, String>,
}

/// The file form of a signature: the ops block without tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureJson(pub BTreeMap<String, SymbolJson>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolJson {
    pub arity: usize,
    pub polarity: Vec<Polarity>,
}

impl SignatureJson {
    pub fn to_signature(&self) -> Result<Signature, FunctorError> {
        let mut symbols = Vec::new();
        for (name, s) in &self.0 {
            check_symbol_name(name)?;
            if s.polarity.len() != s.arity {
                return Err(FunctorError::Arity {
                    symbol: name.clone(),
                    expected: s.arity,
                    found: s.polarity.len(),
                });
            }
            symbols.push(Symbol::new(name, &s.polarity));
        }
        Ok(Signature { symbols })
    }
}
