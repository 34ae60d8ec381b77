mod common;

use imv_core::algebra::{
    AlgebraError, ChainImv, ChainIndex, ChainInterval, Interval, UnitRational,
};
use imv_core::terms::{eval_imv, eval_imv_in, parse, Term, Valuation};
use proptest::prelude::*;

const AXIOMS: [(&str, &str); 19] = [
    ("x + (y + z)", "(x + y) + z"),
    ("x + y", "y + x"),
    ("x + 0", "x"),
    ("x + ~0", "~0"),
    ("~~x", "x"),
    ("~(~D x + D y) + D y", "~(~D y + D x) + D x"),
    ("x * y", "~(~x + ~y)"),
    ("1", "~0"),
    ("N x", "~D ~x"),
    ("~i", "i"),
    ("D 0", "0"),
    ("D 1", "1"),
    ("D i", "0"),
    ("D D x", "D x"),
    ("D N x", "N x"),
    ("D(x + y)", "D x + D y"),
    ("D(x * y)", "D x * D y"),
    ("D x * ~N x", "0"),
    ("D x + (i * N x * ~D x)", "x"),
];

fn u(n: i64, d: i64) -> UnitRational {
    UnitRational::from_ratio(n, d).unwrap()
}

fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval {
    Interval::from_ratios(lo, hi).unwrap()
}

fn unit() -> impl Strategy<Value = UnitRational> {
    // small denominators hit the boundaries; huge ones overflow machine words
    let small = (1i64..=12).prop_flat_map(|d| (0..=d, Just(d)));
    let large = (1i64..=1_000_000_000_000_000).prop_flat_map(|d| (0..=d, Just(d)));
    prop_oneof![3 => small, 1 => large].prop_map(|(n, d)| u(n, d))
}

fn interval() -> impl Strategy<Value = Interval> {
    (unit(), unit()).prop_map(|(a, b)| {
        if a <= b {
            Interval::new(a, b).unwrap()
        } else {
            Interval::new(b, a).unwrap()
        }
    })
}

fn central() -> impl Strategy<Value = Interval> {
    unit().prop_map(Interval::degenerate)
}

fn xyz(x: &Interval, y: &Interval, z: &Interval) -> Valuation<Interval> {
    [("x", x), ("y", y), ("z", z)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn lattice_meet(a: &UnitRational, b: &UnitRational) -> UnitRational {
    a.clone().min(b.clone())
}

fn lattice_join(a: &UnitRational, b: &UnitRational) -> UnitRational {
    a.clone().max(b.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn axioms_hold(x in interval(), y in interval(), z in interval()) {
        let v = xyz(&x, &y, &z);
        for (lhs, rhs) in AXIOMS {
            let l = eval_imv(&parse(lhs).unwrap(), &v).unwrap();
            let r = eval_imv(&parse(rhs).unwrap(), &v).unwrap();
            prop_assert_eq!(l, r, "{} = {}", lhs, rhs);
        }
    }

    #[test]
    fn endpoints_determine_an_interval(x in interval(), y in interval()) {
        if x.delta() == y.delta() && x.nabla() == y.nabla() {
            prop_assert_eq!(&x, &y);
        }
        let rebuilt = Interval::new(x.delta().lo().clone(), x.nabla().hi().clone()).unwrap();
        prop_assert_eq!(rebuilt, x);
    }

    #[test]
    fn product_operations_are_zeta_combinations(x in interval(), y in interval()) {
        let (dx, dy, nx, ny) = (x.delta(), y.delta(), x.nabla(), y.nabla());
        prop_assert_eq!(
            x.product_meet(&y),
            Interval::zeta(&dx.bold_meet(&dy), &nx.bold_meet(&ny))
        );
        prop_assert_eq!(
            x.product_join(&y),
            Interval::zeta(&dx.bold_join(&dy), &nx.bold_join(&ny))
        );
        prop_assert_eq!(
            x.inclusion_join(&y),
            Interval::zeta(&dx.bold_meet(&dy), &nx.bold_join(&ny))
        );
    }

    #[test]
    fn bold_lattice_operations_on_the_center(a in central(), b in central()) {
        let (lo_a, lo_b) = (a.lo(), b.lo());
        prop_assert_eq!(a.bold_meet(&b), Interval::degenerate(lattice_meet(lo_a, lo_b)));
        prop_assert_eq!(a.bold_join(&b), Interval::degenerate(lattice_join(lo_a, lo_b)));
        prop_assert!(a.odot(&b).is_central());
        prop_assert!(a.oplus(&b).is_central());
    }

    #[test]
    fn zeta_rebuilds_from_endpoints(a in unit(), b in unit()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let expected = Interval::new(lo.clone(), hi.clone()).unwrap();
        prop_assert_eq!(
            Interval::zeta(&Interval::degenerate(lo), &Interval::degenerate(hi)),
            expected
        );
    }

    #[test]
    fn product_order(x in interval(), y in interval(), z in interval()) {
        let direct = x.lo() <= y.lo() && x.hi() <= y.hi();
        prop_assert_eq!(x.leq_product(&y), direct);
        prop_assert!(Interval::zero().leq_product(&x) && x.leq_product(&Interval::one()));
        prop_assert_eq!(x.product_meet(&x), x.clone());
        prop_assert_eq!(x.product_meet(&y), y.product_meet(&x));
        prop_assert_eq!(x.product_join(&x.product_meet(&y)), x.clone());
        prop_assert_eq!(
            x.product_meet(&y.product_join(&z)),
            x.product_meet(&y).product_join(&x.product_meet(&z))
        );
        prop_assert!(x.delta().leq_product(&x) && x.leq_product(&x.nabla()));
        if x.leq_product(&y) {
            prop_assert!(x.oplus(&z).leq_product(&y.oplus(&z)));
            prop_assert!(x.odot(&z).leq_product(&y.odot(&z)));
            prop_assert!(y.neg().leq_product(&x.neg()));
            prop_assert_eq!(x.product_meet(&y), x.clone());
        }
    }

    #[test]
    fn inclusion_order(x in interval(), y in interval(), z in interval()) {
        let direct = y.lo() <= x.lo() && x.hi() <= y.hi();
        prop_assert_eq!(x.leq_inclusion(&y), direct);
        prop_assert!(x.leq_inclusion(&Interval::iota()));
        prop_assert!(x.delta().leq_inclusion(&x) && x.nabla().leq_inclusion(&x));
        if x.leq_inclusion(&y) {
            prop_assert!(x.oplus(&z).leq_inclusion(&y.oplus(&z)));
            prop_assert!(x.odot(&z).leq_inclusion(&y.odot(&z)));
            prop_assert!(x.neg().leq_inclusion(&y.neg()));
        }
        // minimal exactly when nothing else sits inside
        let minimal = x.lo() == x.hi();
        prop_assert_eq!(x.is_central(), minimal);
        prop_assert!(x.delta().is_central());
        if x.is_central() && y.leq_inclusion(&x) {
            prop_assert_eq!(&y, &x);
        }
        prop_assert!(x.leq_inclusion(&x.inclusion_join(&y)));
        prop_assert!(y.leq_inclusion(&x.inclusion_join(&y)));
    }

    #[test]
    fn t_norm_conditions(x in interval(), y in interval(), z in interval()) {
        prop_assert_eq!(Interval::one().odot(&x), x.clone());
        prop_assert_eq!(
            Interval::iota().odot(&x),
            Interval::new(UnitRational::zero(), x.hi().clone()).unwrap()
        );
        prop_assert_eq!(
            x.odot(&y.product_join(&z)),
            x.odot(&y).product_join(&x.odot(&z))
        );
        prop_assert_eq!(
            x.odot(&y.product_meet(&z)),
            x.odot(&y).product_meet(&x.odot(&z))
        );
    }
}

#[test]
fn non_theorems_fail_at_iota() {
    let i = Interval::iota();
    let v = xyz(&i, &Interval::one(), &Interval::zero());
    let excluded_middle = eval_imv(&parse("x + ~x").unwrap(), &v).unwrap();
    assert_eq!(excluded_middle, Interval::iota());
    assert_ne!(excluded_middle, Interval::one());
    let lhs = eval_imv(&parse("~(~x + y) + y").unwrap(), &v).unwrap();
    let rhs = eval_imv(&parse("~(~y + x) + x").unwrap(), &v).unwrap();
    assert_eq!(lhs, Interval::one());
    assert_eq!(rhs, Interval::iota());
}

#[test]
fn worked_values() {
    assert_eq!(u(0, 1).neg(), u(1, 1));
    assert_eq!(u(1, 2).oplus(&u(3, 4)), u(1, 1));
    assert_eq!(u(1, 2).odot(&u(3, 4)), u(1, 4));
    assert_eq!(Interval::iota(), iv((0, 1), (1, 1)));
    assert_eq!(Interval::iota().neg(), Interval::iota());
    assert_eq!(iv((3, 10), (7, 10)).neg(), iv((3, 10), (7, 10)));
    assert_eq!(iv((1, 4), (1, 2)).neg(), iv((1, 2), (3, 4)));
    assert_eq!(
        iv((1, 5), (1, 2)).oplus(&iv((2, 5), (7, 10))),
        iv((3, 5), (1, 1))
    );
    assert_eq!(iv((1, 4), (3, 4)).delta(), iv((1, 4), (1, 4)));
    assert_eq!(iv((1, 4), (3, 4)).nabla(), iv((3, 4), (3, 4)));
    assert_eq!(Interval::iota().nabla(), Interval::one());
    assert_eq!(
        iv((1, 4), (1, 4)).bold_meet(&iv((1, 2), (1, 2))),
        iv((1, 4), (1, 4))
    );
    // regression value of the defining term at i, i
    assert_eq!(
        Interval::iota().bold_meet(&Interval::iota()),
        iv((0, 1), (1, 1))
    );
    assert_eq!(
        iv((1, 4), (1, 1)).product_meet(&iv((1, 2), (3, 4))),
        iv((1, 4), (3, 4))
    );
    assert_eq!(
        Interval::zeta(&iv((1, 4), (1, 4)), &iv((3, 4), (3, 4))),
        iv((1, 4), (3, 4))
    );
    assert_eq!(
        Interval::zeta(&Interval::zero(), &Interval::one()),
        Interval::iota()
    );
    assert_eq!(
        iv((0, 1), (1, 2)).inclusion_join(&iv((1, 4), (3, 4))),
        iv((0, 1), (3, 4))
    );
    assert!(iv((0, 1), (1, 2)).leq_product(&iv((1, 4), (3, 4))));
    assert!(iv((1, 4), (1, 2)).leq_inclusion(&Interval::iota()));
    assert!(!iv((0, 1), (1, 2)).leq_inclusion(&iv((1, 4), (3, 4))));
    assert!(!Interval::iota().is_central());
}

/// Every interval with endpoints on the grid of denominator `den`.
fn grid(den: i64) -> Vec<Interval> {
    let mut out = Vec::new();
    for a in 0..=den {
        for b in a..=den {
            out.push(iv((a, den), (b, den)));
        }
    }
    out
}

fn grid_points(x: &Interval, den: i64) -> Vec<UnitRational> {
    (0..=den)
        .map(|n| u(n, den))
        .filter(|p| x.lo() <= p && p <= x.hi())
        .collect()
}

/// The set `{f(a, b) : a ∈ x, b ∈ y}` on the grid, checked to be a full run
/// of grid points, returned as its hull.
fn pointwise_hull(
    x: &Interval,
    y: &Interval,
    den: i64,
    f: impl Fn(&UnitRational, &UnitRational) -> UnitRational,
) -> Interval {
    let mut image: Vec<UnitRational> = Vec::new();
    for a in grid_points(x, den) {
        for b in grid_points(y, den) {
            image.push(f(&a, &b));
        }
    }
    image.sort();
    image.dedup();
    let hull = Interval::new(image[0].clone(), image[image.len() - 1].clone()).unwrap();
    assert_eq!(image, grid_points(&hull, den), "image of {x}, {y} has gaps");
    hull
}

#[test]
fn endpoint_operations_match_pointwise_images() {
    let den = 12;
    let all = grid(den);
    for x in &all {
        let negs: Vec<UnitRational> = grid_points(x, den).iter().map(|a| a.neg()).collect();
        let hull = Interval::new(
            negs.iter().min().unwrap().clone(),
            negs.iter().max().unwrap().clone(),
        )
        .unwrap();
        assert_eq!(x.neg(), hull);
        for y in &all {
            assert_eq!(
                x.oplus(y),
                pointwise_hull(x, y, den, |a, b| a.oplus(b)),
                "{x} + {y}"
            );
            assert_eq!(
                x.odot(y),
                pointwise_hull(x, y, den, |a, b| a.odot(b)),
                "{x} * {y}"
            );
        }
    }
}

#[test]
fn chains() {
    let idx = |k, e| ChainIndex::new(k, e).unwrap();
    assert_eq!(idx(2, 1).neg(), idx(2, 1));
    assert_eq!(idx(4, 1).oplus(&idx(4, 2)).unwrap(), idx(4, 3));
    assert_eq!(idx(3, 2).odot(&idx(3, 2)).unwrap(), idx(3, 1));
    assert_eq!(
        idx(3, 2).odot(&idx(3, 2)).unwrap().to_unit(),
        u(2, 3).odot(&u(2, 3))
    );
    assert!(matches!(
        idx(3, 1).oplus(&idx(4, 1)),
        Err(AlgebraError::ChainMismatch { .. })
    ));
    assert!(ChainIndex::new(3, 4).is_err());
    for k in 1..=8 {
        for a in 0..=k {
            assert_eq!(idx(k, a).neg().to_unit(), idx(k, a).to_unit().neg());
            for b in 0..=k {
                let (x, y) = (idx(k, a), idx(k, b));
                assert_eq!(
                    x.oplus(&y).unwrap().to_unit(),
                    x.to_unit().oplus(&y.to_unit())
                );
                assert_eq!(
                    x.odot(&y).unwrap().to_unit(),
                    x.to_unit().odot(&y.to_unit())
                );
            }
        }
    }
}

#[test]
fn chain_intervals_embed_coherently() {
    let terms: Vec<Term> = AXIOMS
        .iter()
        .flat_map(|(l, r)| [parse(l).unwrap(), parse(r).unwrap()])
        .chain(["x + ~x", "~(~x + y) + y", "i * N z -> D(x * y)"].map(|s| parse(s).unwrap()))
        .collect();
    for k in 1..=6 {
        let chain = ChainImv::new(k).unwrap();
        let elements = chain.elements();
        assert_eq!(elements.len() as u32, (k + 1) * (k + 2) / 2);
        for x in &elements {
            for y in &elements {
                for z in &elements {
                    let lookup = |name: &str| -> Option<ChainInterval> {
                        match name {
                            "x" => Some(*x),
                            "y" => Some(*y),
                            "z" => Some(*z),
                            _ => None,
                        }
                    };
                    let v = xyz(&chain.embed(x), &chain.embed(y), &chain.embed(z));
                    for t in &terms {
                        let in_chain = eval_imv_in(&chain, t, &lookup).unwrap();
                        assert_eq!(
                            chain.embed(&in_chain),
                            eval_imv(t, &v).unwrap(),
                            "{t} in L_{k}"
                        );
                    }
                }
            }
        }
    }
}
