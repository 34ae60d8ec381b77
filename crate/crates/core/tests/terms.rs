mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{random_interval, random_term, random_unit, rng};
use imv_core::algebra::{Interval, UnitRational};
use imv_core::terms::{eval_imv, eval_mv, parse, EvalError, ParseError, Term, Valuation};
use rand::Rng;

const CORPUS: &str = include_str!("fixtures/terms.txt");

fn p(s: &str) -> Term {
    parse(s).unwrap()
}

/// A random term using every node kind, arrows included.
fn any_term(rng: &mut impl Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..6) {
            0 => Term::Zero,
            1 => Term::One,
            2 => Term::Iota,
            n => Term::var(["a", "b1", "Y_3"][n - 3]),
        };
    }
    let a = any_term(rng, depth - 1);
    match rng.gen_range(0..6) {
        0 => Term::neg(a),
        1 => Term::delta(a),
        2 => Term::nabla(a),
        3 => Term::oplus(a, any_term(rng, depth - 1)),
        4 => Term::odot(a, any_term(rng, depth - 1)),
        _ => Term::arrow(a, any_term(rng, depth - 1)),
    }
}

#[test]
fn corpus_prints_stably() {
    let lines: Vec<&str> = CORPUS.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(lines.len(), 200);
    for line in lines {
        let t = parse(line).unwrap_or_else(|e| panic!("{line:?}: {e}"));
        let printed = t.to_string();
        assert_eq!(parse(&printed).unwrap(), t, "{line:?}");
        assert_eq!(parse(&printed).unwrap().to_string(), printed);
    }
}

#[test]
fn printing_inverts_parsing_on_random_trees() {
    let mut r = rng(21);
    for _ in 0..2000 {
        let depth = r.gen_range(0..7);
        let t = any_term(&mut r, depth);
        assert_eq!(parse(&t.to_string()).unwrap(), t, "{t}");
    }
}

#[test]
fn minimal_parentheses() {
    assert_eq!(Term::neg(Term::neg(Term::var("X"))).to_string(), "~~X");
    assert_eq!(
        Term::oplus(Term::var("X"), Term::odot(Term::var("Y"), Term::var("Z"))).to_string(),
        "X + Y * Z"
    );
    assert_eq!(p("((X -> Y)) -> (Z)").to_string(), "(X -> Y) -> Z");
    assert_eq!(p("X -> (Y -> Z)").to_string(), "X -> Y -> Z");
    assert_eq!(p("(X + Y) + Z").to_string(), "X + Y + Z");
    assert_eq!(p("X + (Y + Z)").to_string(), "X + (Y + Z)");
}

#[test]
fn parse_errors() {
    let e = parse("X + + Y").unwrap_err();
    assert_eq!(e.offset(), 4);
    assert!(matches!(e, ParseError::Syntax { .. }));
    assert!(matches!(parse("D"), Err(ParseError::ReservedWord { .. })));
    assert!(matches!(
        parse("0.5"),
        Err(ParseError::InvalidCharacter { offset: 1, .. })
    ));
}

#[test]
fn worked_evaluations() {
    let x = |lo: (i64, i64), hi: (i64, i64)| -> Valuation<Interval> {
        [("X".to_string(), Interval::from_ratios(lo, hi).unwrap())].into()
    };
    assert_eq!(
        eval_imv(&p("i * N X"), &x((1, 4), (3, 4))).unwrap(),
        Interval::from_ratios((0, 1), (3, 4)).unwrap()
    );
    assert_eq!(
        eval_imv(&p("X + ~X"), &x((0, 1), (1, 1))).unwrap(),
        Interval::iota()
    );
    for a in 0..=4 {
        for b in a..=4 {
            assert_eq!(
                eval_imv(&p("D X -> X"), &x((a, 4), (b, 4))).unwrap(),
                Interval::one()
            );
        }
    }
    let s: Valuation<UnitRational> =
        [("X".to_string(), UnitRational::from_ratio(2, 5).unwrap())].into();
    assert_eq!(eval_mv(&p("~X + X"), &s).unwrap(), UnitRational::one());
    let s: Valuation<UnitRational> =
        [("X".to_string(), UnitRational::from_ratio(3, 4).unwrap())].into();
    assert_eq!(
        eval_mv(&p("X * X"), &s).unwrap(),
        UnitRational::from_ratio(1, 2).unwrap()
    );
    assert!(matches!(eval_mv(&p("D X"), &s), Err(EvalError::NotMv(_))));
    assert!(matches!(
        eval_imv(&p("Y"), &x((0, 1), (0, 1))),
        Err(EvalError::Unbound(_))
    ));
}

#[test]
fn degenerate_evaluation_factors_through_scalars() {
    let mut r = rng(22);
    let vars = ["X", "Y", "Z"];
    for _ in 0..500 {
        let size = r.gen_range(1..=20);
        let t = random_term(&mut r, size, &vars, true);
        let scalars: Valuation<UnitRational> = vars
            .iter()
            .map(|v| (v.to_string(), random_unit(&mut r, 15)))
            .collect();
        let degenerate: Valuation<Interval> = scalars
            .iter()
            .map(|(k, a)| (k.clone(), Interval::degenerate(a.clone())))
            .collect();
        assert_eq!(
            eval_imv(&t, &degenerate).unwrap(),
            Interval::degenerate(eval_mv(&t, &scalars).unwrap()),
            "{t}"
        );
    }
}

#[test]
fn desugaring_preserves_values() {
    let mut r = rng(23);
    for _ in 0..500 {
        let depth = r.gen_range(1..6);
        let t = any_term(&mut r, depth);
        let plain = t.desugar();
        assert!(!plain.to_string().contains("->"));
        let v: Valuation<Interval> = ["a", "b1", "Y_3"]
            .iter()
            .map(|k| (k.to_string(), random_interval(&mut r, 10)))
            .collect();
        assert_eq!(
            eval_imv(&plain, &v).unwrap(),
            eval_imv(&t, &v).unwrap(),
            "{t}"
        );
    }
}

#[test]
fn substitution() {
    let map: BTreeMap<String, Term> = [("X".to_string(), p("D X"))].into();
    assert_eq!(p("X + Y").substitute(&map), p("D X + Y"));
    let t = p("X * ~Y -> i");
    assert_eq!(t.substitute(&BTreeMap::new()), t);
    let swap: BTreeMap<String, Term> =
        [("X".to_string(), p("Y")), ("Y".to_string(), p("X"))].into();
    assert_eq!(p("X + ~Y").substitute(&swap), p("Y + ~X"));
    let zeta = Term::zeta(Term::var("u"), Term::var("v"));
    let expected: BTreeSet<String> = ["u".to_string(), "v".to_string()].into();
    assert_eq!(zeta.free_vars(), expected);
}
