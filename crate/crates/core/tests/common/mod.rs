//! Generators shared by the integration tests.
#![allow(dead_code)]

use imv_core::algebra::{Interval, UnitRational};
use imv_core::terms::{Term, Valuation};
use imv_core::Rational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit(rng: &mut impl Rng, max_den: i64) -> UnitRational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(0..=den);
    UnitRational::from_ratio(num, den).unwrap()
}

pub fn random_interval(rng: &mut impl Rng, max_den: i64) -> Interval {
    let a = random_unit(rng, max_den);
    let b = random_unit(rng, max_den);
    if a <= b {
        Interval::new(a, b).unwrap()
    } else {
        Interval::new(b, a).unwrap()
    }
}

pub fn random_valuation(rng: &mut impl Rng, vars: &[String], max_den: i64) -> Valuation<Interval> {
    vars.iter()
        .map(|v| (v.clone(), random_interval(rng, max_den)))
        .collect()
}

pub fn half() -> Rational {
    Rational::new(1, 2).unwrap()
}

fn combine(sizes: &[Vec<Term>], size: usize, mv_only: bool) -> Vec<Term> {
    let mut out = Vec::new();
    for a in &sizes[size - 1] {
        out.push(Term::neg(a.clone()));
        if !mv_only {
            out.push(Term::delta(a.clone()));
            out.push(Term::nabla(a.clone()));
        }
    }
    for left in 1..size - 1 {
        let right = size - 1 - left;
        for a in &sizes[left] {
            for b in &sizes[right] {
                out.push(Term::oplus(a.clone(), b.clone()));
                out.push(Term::odot(a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Every term of size at most `max_size` over the given variables, built
/// from `0, 1, ¬, ⊕, ⊙` (and `i, Δ, ∇` unless `mv_only`).
pub fn enumerate_terms(max_size: usize, vars: &[&str], mv_only: bool) -> Vec<Term> {
    let mut sizes: Vec<Vec<Term>> = vec![Vec::new()];
    let mut leaves: Vec<Term> = vars.iter().map(|v| Term::var(v)).collect();
    leaves.extend([Term::Zero, Term::One]);
    if !mv_only {
        leaves.push(Term::Iota);
    }
    sizes.push(leaves);
    for size in 2..=max_size {
        let next = combine(&sizes, size, mv_only);
        sizes.push(next);
    }
    sizes.into_iter().flatten().collect()
}

/// A random term with exactly `size` symbols.
pub fn random_term(rng: &mut impl Rng, size: usize, vars: &[&str], mv_only: bool) -> Term {
    if size == 1 {
        let n = vars.len() + if mv_only { 2 } else { 3 };
        // variables are drawn more often than constants
        let pick = rng.gen_range(0..n + vars.len());
        return match pick {
            p if p < 2 * vars.len() => Term::var(vars[p % vars.len()]),
            p => match p - 2 * vars.len() {
                0 => Term::Zero,
                1 => Term::One,
                _ => Term::Iota,
            },
        };
    }
    let unary = size == 2 || rng.gen_bool(0.35);
    if unary {
        let arg = random_term(rng, size - 1, vars, mv_only);
        let choice = if mv_only { 0 } else { rng.gen_range(0..3) };
        return match choice {
            0 => Term::neg(arg),
            1 => Term::delta(arg),
            _ => Term::nabla(arg),
        };
    }
    let left = rng.gen_range(1..size - 1);
    let a = random_term(rng, left, vars, mv_only);
    let b = random_term(rng, size - 1 - left, vars, mv_only);
    if rng.gen_bool(0.5) {
        Term::oplus(a, b)
    } else {
        Term::odot(a, b)
    }
}
