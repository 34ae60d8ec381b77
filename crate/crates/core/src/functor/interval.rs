//! The interval algebra `I(A)` of a finite ordered algebra, its center, and
//! the maps relating an algebra, its interval algebra and the center.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::fterm::FTerm;
use super::poalgebra::{FinitePoalgebra, Operation, Polarity, Symbol};
use super::FunctorError;

/// `I(A)`: the pairs `a ≤ b` of `A` under the product order, with every
/// operation of `A` computed at the extreme corners given by its
/// polarity, plus `Δ[a, b] = [a, a]`, `∇[a, b] = [b, b]` and `i = [0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalAlgebra {
    base: FinitePoalgebra,
    pairs: Vec<(usize, usize)>,
    algebra: FinitePoalgebra,
}

fn decode(mut idx: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut args = vec![0usize; arity];
    for slot in args.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    args
}

impl IntervalAlgebra {
    /// Fails with the validation report if `base` is not a bounded ordered
    /// algebra with the declared polarities.
    pub fn build(base: &FinitePoalgebra) -> Result<Self, FunctorError> {
        let report = base.validate();
        if !report.is_valid() {
            return Err(FunctorError::Invalid(report));
        }
        let n = base.size();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| base.leq(a, b))
            .collect();
        let m = pairs.len();
        let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p);
        let names = pairs
            .iter()
            .map(|&(a, b)| format!("[{}, {}]", base.name(a), base.name(b)))
            .collect();
        let leq = pairs
            .iter()
            .map(|&(a, b)| {
                pairs
                    .iter()
                    .map(|&(c, d)| base.leq(a, c) && base.leq(b, d))
                    .collect()
            })
            .collect();
        let mut ops = Vec::new();
        for op in base.ops() {
            let arity = op.symbol.arity();
            let mut table = Vec::with_capacity(m.pow(arity as u32));
            for idx in 0..m.pow(arity as u32) {
                let args = decode(idx, m, arity);
                let (mut lo, mut hi) = (Vec::with_capacity(arity), Vec::with_capacity(arity));
                for (k, &x) in args.iter().enumerate() {
                    let (a, b) = pairs[x];
                    match op.symbol.polarity[k] {
                        Polarity::Plus => {
                            lo.push(a);
                            hi.push(b);
                        }
                        Polarity::Minus => {
                            lo.push(b);
                            hi.push(a);
                        }
                    }
                }
                let value = (base.apply(op, &lo), base.apply(op, &hi));
                let v = index(value).ok_or_else(|| {
                    FunctorError::Internal(format!(
                        "{} produced an inverted interval",
                        op.symbol.name
                    ))
                })?;
                table.push(v);
            }
            ops.push(Operation {
                symbol: op.symbol.clone(),
                table,
            });
        }
        let unary = |name: &str, f: &dyn Fn(usize, usize) -> (usize, usize)| Operation {
            symbol: Symbol::new(name, &[Polarity::Plus]),
            table: pairs
                .iter()
                .map(|&(a, b)| index(f(a, b)).expect("degenerate intervals exist"))
                .collect(),
        };
        ops.push(unary("D", &|a, _| (a, a)));
        ops.push(unary("N", &|_, b| (b, b)));
        ops.push(Operation {
            symbol: Symbol::new("i", &[]),
            table: vec![index((base.zero(), base.one())).expect("bounds are comparable")],
        });
        let zero = index((base.zero(), base.zero())).expect("degenerate");
        let one = index((base.one(), base.one())).expect("degenerate");
        let algebra = FinitePoalgebra::from_parts(names, leq, zero, one, ops);
        Ok(IntervalAlgebra {
            base: base.clone(),
            pairs,
            algebra,
        })
    }

    pub fn base(&self) -> &FinitePoalgebra {
        &self.base
    }

    pub fn algebra(&self) -> &FinitePoalgebra {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    /// Endpoints of interval `x`.
    pub fn pair(&self, x: usize) -> (usize, usize) {
        self.pairs[x]
    }

    pub fn index_of_pair(&self, a: usize, b: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (a, b))
    }

    /// `[a, a]` for every `a`, in the order of `A`.
    pub fn degenerate(&self) -> Vec<usize> {
        (0..self.base.size())
            .map(|a| self.index_of_pair(a, a).expect("degenerate"))
            .collect()
    }

    /// `{f(e_1, …, e_n) : e_k ∈ x_k}` computed in `A`, where each `x_k` is
    /// an interval of this algebra.
    pub fn pointwise_image(
        &self,
        op: &str,
        args: &[usize],
    ) -> Result<BTreeSet<usize>, FunctorError> {
        let f = self
            .base
            .op(op)
            .ok_or_else(|| FunctorError::UnknownSymbol(op.to_string()))?;
        if f.symbol.arity() != args.len() {
            return Err(FunctorError::Arity {
                symbol: op.to_string(),
                expected: f.symbol.arity(),
                found: args.len(),
            });
        }
        let members: Vec<Vec<usize>> = args
            .iter()
            .map(|&x| {
                let (a, b) = self.pairs[x];
                (0..self.base.size())
                    .filter(|&e| self.base.leq(a, e) && self.base.leq(e, b))
                    .collect()
            })
            .collect();
        let mut out = BTreeSet::new();
        let mut idx = vec![0usize; args.len()];
        loop {
            let point: Vec<usize> = idx.iter().zip(&members).map(|(&i, m)| m[i]).collect();
            out.insert(self.base.apply(f, &point));
            let mut pos = args.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < members[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

/// The central elements `Δx = x = ∇x` of an algebra carrying `D`, `N` and
/// `i`, with the operations that are not `D`, `N`, `i` restricted to them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center {
    pub algebra: FinitePoalgebra,
    /// Position in the enclosing algebra of each central element.
    pub embedding: Vec<usize>,
}

fn require_interval_ops(j: &FinitePoalgebra) -> Result<(), FunctorError> {
    for (name, arity) in [("D", 1), ("N", 1), ("i", 0)] {
        match j.op(name) {
            Some(op) if op.symbol.arity() == arity => {}
            _ => return Err(FunctorError::UnknownSymbol(name.to_string())),
        }
    }
    Ok(())
}

pub fn center(j: &FinitePoalgebra) -> Result<Center, FunctorError> {
    require_interval_ops(j)?;
    let delta = j.op("D").expect("checked");
    let nabla = j.op("N").expect("checked");
    let embedding: Vec<usize> = (0..j.size())
        .filter(|&x| j.apply(delta, &[x]) == x && j.apply(nabla, &[x]) == x)
        .collect();
    let pos = |x: usize| embedding.iter().position(|&e| e == x);
    let m = embedding.len();
    let zero = pos(j.zero()).ok_or_else(|| FunctorError::NotClosed("0".into()))?;
    let one = pos(j.one()).ok_or_else(|| FunctorError::NotClosed("1".into()))?;
    let mut ops = Vec::new();
    for op in j
        .ops()
        .iter()
        .filter(|o| !["D", "N", "i"].contains(&o.symbol.name.as_str()))
    {
        let arity = op.symbol.arity();
        let mut table = Vec::with_capacity(m.pow(arity as u32));
        for idx in 0..m.pow(arity as u32) {
            let args: Vec<usize> = decode(idx, m, arity)
                .into_iter()
                .map(|k| embedding[k])
                .collect();
            let v = j.apply(op, &args);
            table.push(pos(v).ok_or_else(|| FunctorError::NotClosed(op.symbol.name.clone()))?);
        }
        ops.push(Operation {
            symbol: op.symbol.clone(),
            table,
        });
    }
    let names = embedding.iter().map(|&x| j.name(x).to_string()).collect();
    let leq = embedding
        .iter()
        .map(|&x| embedding.iter().map(|&y| j.leq(x, y)).collect())
        .collect();
    Ok(Center {
        algebra: FinitePoalgebra::from_parts(names, leq, zero, one, ops),
        embedding,
    })
}

/// A map between finite algebras with the properties checked for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedMap {
    pub map: Vec<usize>,
    pub homomorphism: bool,
    pub order_embedding: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl CheckedMap {
    fn new(from: &FinitePoalgebra, to: &FinitePoalgebra, map: Vec<usize>) -> Self {
        let image: BTreeSet<usize> = map.iter().copied().collect();
        CheckedMap {
            homomorphism: check_homomorphism(from, to, &map).is_ok(),
            order_embedding: is_order_embedding(from, to, &map),
            injective: image.len() == map.len(),
            surjective: image.len() == to.size(),
            map,
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.homomorphism && self.order_embedding && self.injective && self.surjective
    }
}

/// Checks that `h` preserves the bounds and every operation of `from`,
/// which must also exist in `to`.
pub fn check_homomorphism(
    from: &FinitePoalgebra,
    to: &FinitePoalgebra,
    h: &[usize],
) -> Result<(), FunctorError> {
    let fail = |what: String| Err(FunctorError::NotHomomorphism(what));
    if h.len() != from.size() || h.iter().any(|&y| y >= to.size()) {
        return fail("map does not fit the carriers".into());
    }
    if h[from.zero()] != to.zero() {
        return fail("0 is not preserved".into());
    }
    if h[from.one()] != to.one() {
        return fail("1 is not preserved".into());
    }
    let n = from.size();
    for op in from.ops() {
        let arity = op.symbol.arity();
        let Some(target) = to.op(&op.symbol.name).filter(|t| t.symbol.arity() == arity) else {
            return fail(format!("{} has no counterpart", op.symbol.name));
        };
        for idx in 0..n.pow(arity as u32) {
            let args = decode(idx, n, arity);
            let image: Vec<usize> = args.iter().map(|&a| h[a]).collect();
            if h[from.apply(op, &args)] != to.apply(target, &image) {
                let shown: Vec<&str> = args.iter().map(|&a| from.name(a)).collect();
                return fail(format!(
                    "{} is not preserved at ({})",
                    op.symbol.name,
                    shown.join(", ")
                ));
            }
        }
    }
    Ok(())
}

pub fn is_order_preserving(from: &FinitePoalgebra, to: &FinitePoalgebra, h: &[usize]) -> bool {
    (0..from.size()).all(|a| (0..from.size()).all(|b| !from.leq(a, b) || to.leq(h[a], h[b])))
}

/// `a ≤ b ⇔ h(a) ≤ h(b)`.
pub fn is_order_embedding(from: &FinitePoalgebra, to: &FinitePoalgebra, h: &[usize]) -> bool {
    (0..from.size()).all(|a| (0..from.size()).all(|b| from.leq(a, b) == to.leq(h[a], h[b])))
}

/// `ι_A(a) = [a, a]`, as a map from `A` onto the center of `I(A)`.
pub fn iota(ia: &IntervalAlgebra) -> Result<(Center, CheckedMap), FunctorError> {
    let c = center(ia.algebra())?;
    let map = ia
        .degenerate()
        .into_iter()
        .map(|x| {
            c.embedding.iter().position(|&e| e == x).ok_or_else(|| {
                FunctorError::Internal(format!("{} is not central", ia.algebra().name(x)))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let checked = CheckedMap::new(ia.base(), &c.algebra, map);
    Ok((c, checked))
}

/// `γ_J(x) = [Δx, ∇x]`, as a map from `J` into `I(C(J))`.
pub fn gamma(j: &FinitePoalgebra) -> Result<(IntervalAlgebra, CheckedMap), FunctorError> {
    let c = center(j)?;
    let ic = IntervalAlgebra::build(&c.algebra)?;
    let delta = j.op("D").expect("center checked");
    let nabla = j.op("N").expect("center checked");
    let pos = |x: usize| c.embedding.iter().position(|&e| e == x);
    let mut map = Vec::with_capacity(j.size());
    for x in 0..j.size() {
        let lo = pos(j.apply(delta, &[x])).ok_or_else(|| FunctorError::NotClosed("D".into()))?;
        let hi = pos(j.apply(nabla, &[x])).ok_or_else(|| FunctorError::NotClosed("N".into()))?;
        let v = ic.index_of_pair(lo, hi).ok_or_else(|| {
            FunctorError::Internal(format!("D {0} is not below N {0}", j.name(x)))
        })?;
        map.push(v);
    }
    let checked = CheckedMap::new(j, ic.algebra(), map);
    Ok((ic, checked))
}

/// `I(h)[a, b] = [h(a), h(b)]` for an order-preserving homomorphism
/// `h: A → B`.
pub fn lift_homomorphism(
    ia: &IntervalAlgebra,
    ib: &IntervalAlgebra,
    h: &[usize],
) -> Result<Vec<usize>, FunctorError> {
    check_homomorphism(ia.base(), ib.base(), h)?;
    if !is_order_preserving(ia.base(), ib.base(), h) {
        return Err(FunctorError::NotOrderPreserving);
    }
    let lifted = (0..ia.size())
        .map(|x| {
            let (a, b) = ia.pair(x);
            ib.index_of_pair(h[a], h[b]).expect("order preserved")
        })
        .collect::<Vec<_>>();
    check_homomorphism(ia.algebra(), ib.algebra(), &lifted)
        .map_err(|e| FunctorError::Internal(format!("lifted map: {e}")))?;
    Ok(lifted)
}

/// Evaluation order used when closing a set under the operations; both
/// reach the same least fixpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureOrder {
    /// Rounds over all tuples of the current set, operations in order.
    Rounds,
    /// A stack of new elements, operations in reverse order.
    Worklist,
}

/// The subuniverse of `j` generated by `generators`, including the bounds
/// and all constants.
pub fn generate_subalgebra(
    j: &FinitePoalgebra,
    generators: &[usize],
    order: ClosureOrder,
) -> BTreeSet<usize> {
    let mut members: BTreeSet<usize> = generators.iter().copied().collect();
    members.insert(j.zero());
    members.insert(j.one());
    for op in j.ops().iter().filter(|o| o.symbol.arity() == 0) {
        members.insert(j.apply(op, &[]));
    }
    match order {
        ClosureOrder::Rounds => loop {
            let snapshot: Vec<usize> = members.iter().copied().collect();
            let before = members.len();
            for op in j.ops() {
                let arity = op.symbol.arity();
                for idx in 0..snapshot.len().pow(arity as u32) {
                    let args: Vec<usize> = decode(idx, snapshot.len(), arity)
                        .into_iter()
                        .map(|k| snapshot[k])
                        .collect();
                    members.insert(j.apply(op, &args));
                }
            }
            if members.len() == before {
                return members;
            }
        },
        ClosureOrder::Worklist => {
            let mut stack: Vec<usize> = members.iter().copied().collect();
            while let Some(e) = stack.pop() {
                for op in j.ops().iter().rev() {
                    let arity = op.symbol.arity();
                    let current: Vec<usize> = members.iter().copied().collect();
                    for idx in 0..current.len().pow(arity as u32) {
                        let args: Vec<usize> = decode(idx, current.len(), arity)
                            .into_iter()
                            .map(|k| current[k])
                            .collect();
                        if !args.contains(&e) {
                            continue;
                        }
                        let v = j.apply(op, &args);
                        if members.insert(v) {
                            stack.push(v);
                        }
                    }
                }
            }
            members
        }
    }
}

/// The algebra on a subuniverse of `j`, with all of its operations.
pub fn subalgebra(
    j: &FinitePoalgebra,
    members: &BTreeSet<usize>,
) -> Result<(FinitePoalgebra, Vec<usize>), FunctorError> {
    let embedding: Vec<usize> = members.iter().copied().collect();
    let pos = |x: usize| embedding.iter().position(|&e| e == x);
    let m = embedding.len();
    let zero = pos(j.zero()).ok_or_else(|| FunctorError::NotClosed("0".into()))?;
    let one = pos(j.one()).ok_or_else(|| FunctorError::NotClosed("1".into()))?;
    let mut ops = Vec::new();
    for op in j.ops() {
        let arity = op.symbol.arity();
        let mut table = Vec::with_capacity(m.pow(arity as u32));
        for idx in 0..m.pow(arity as u32) {
            let args: Vec<usize> = decode(idx, m, arity)
                .into_iter()
                .map(|k| embedding[k])
                .collect();
            table.push(
                pos(j.apply(op, &args))
                    .ok_or_else(|| FunctorError::NotClosed(op.symbol.name.clone()))?,
            );
        }
        ops.push(Operation {
            symbol: op.symbol.clone(),
            table,
        });
    }
    let names = embedding.iter().map(|&x| j.name(x).to_string()).collect();
    let leq = embedding
        .iter()
        .map(|&x| embedding.iter().map(|&y| j.leq(x, y)).collect())
        .collect();
    Ok((
        FinitePoalgebra::from_parts(names, leq, zero, one, ops),
        embedding,
    ))
}

/// Outcome of testing whether `I(A)` is generated by its center and `i`,
/// and optionally whether a term rebuilds every element from its
/// endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub interval_size: usize,
    pub generated: Vec<String>,
    pub missing: Vec<String>,
    pub center_generates: bool,
    pub reconstruction: Option<ReconstructionCheck>,
}

/// Elements `x` with `t(Δx, ∇x) ≠ x`, paired with the value obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconstructionCheck {
    pub term: String,
    pub failures: Vec<(String, String)>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.center_generates
            && self
                .reconstruction
                .as_ref()
                .is_none_or(|r| r.failures.is_empty())
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "generated by center and i: {} ({} of {} intervals",
            if self.center_generates { "yes" } else { "no" },
            self.generated.len(),
            self.interval_size
        )?;
        if !self.missing.is_empty() {
            write!(f, "; missing {}", self.missing.join(" "))?;
        }
        f.write_str(")")?;
        if let Some(r) = &self.reconstruction {
            write!(
                f,
                "\nt(D x, N x) = x for t(y, z) = {}: {}",
                r.term,
                if r.failures.is_empty() { "yes" } else { "no" }
            )?;
            for (x, v) in &r.failures {
                write!(f, "\n  x = {x} gives {v}")?;
            }
        }
        Ok(())
    }
}

/// Builds `I(A)`, closes the center and `i` under all operations (by both
/// evaluation orders, which must agree), and checks the reconstruction
/// term `t(y, z)` if one is given.
pub fn check_equivalence(
    a: &FinitePoalgebra,
    t: Option<&FTerm>,
) -> Result<EquivalenceReport, FunctorError> {
    let ia = IntervalAlgebra::build(a)?;
    let j = ia.algebra();
    let mut generators = ia.degenerate();
    generators.push(
        ia.index_of_pair(a.zero(), a.one())
            .expect("bounds comparable"),
    );
    let by_rounds = generate_subalgebra(j, &generators, ClosureOrder::Rounds);
    let by_worklist = generate_subalgebra(j, &generators, ClosureOrder::Worklist);
    if by_rounds != by_worklist {
        return Err(FunctorError::Internal("closure orders disagree".into()));
    }
    let generated: Vec<String> = by_rounds.iter().map(|&x| j.name(x).to_string()).collect();
    let missing: Vec<String> = (0..j.size())
        .filter(|x| !by_rounds.contains(x))
        .map(|x| j.name(x).to_string())
        .collect();
    let reconstruction = match t {
        None => None,
        Some(t) => {
            if let Some(v) = t.vars_in_order().into_iter().find(|v| v != "y" && v != "z") {
                return Err(FunctorError::Unbound(v));
            }
            let delta = j.op("D").expect("built");
            let nabla = j.op("N").expect("built");
            let mut failures = Vec::new();
            for x in 0..j.size() {
                let y = j.apply(delta, &[x]);
                let z = j.apply(nabla, &[x]);
                let env = |name: &str| match name {
                    "y" => Some(y),
                    "z" => Some(z),
                    _ => None,
                };
                let v = t.eval(j, &env)?;
                if v != x {
                    failures.push((j.name(x).to_string(), j.name(v).to_string()));
                }
            }
            Some(ReconstructionCheck {
                term: t.to_string(),
                failures,
            })
        }
    };
    Ok(EquivalenceReport {
        interval_size: j.size(),
        center_generates: missing.is_empty(),
        generated,
        missing,
        reconstruction,
    })
}
