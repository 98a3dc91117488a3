use proptest::prelude::*;

use blossom::algebra::field::ratio;
use blossom::algebra::{poly_gcd, FieldElement, Poly};
use blossom::corpus::monomial_unit_maps;
use blossom::germ::{classify_preliminary, MapPair, Preliminary};
use blossom::oracle::{check_tree, OracleConfig};
use blossom::parse::parse_poly;
use blossom::query::{member, witness_map, CurveGerm, Witness};
use blossom::render::{from_json, to_json};
use blossom::tree::{build_tree, check_invariants, BuildOptions, Built};

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, 1i64..=4, 0u32..=4, 0u32..=4), 0..6).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (n, d, i, j)| {
            &acc + &Poly::xy(1, i, j).scale(&FieldElement::from(ratio(n, d)))
        })
    })
}

fn arc() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 3).prop_map(|c| {
        c.iter().enumerate().fold(Poly::zero(), |acc, (k, &c)| &acc + &Poly::xy(c, k as u32 + 1, 0))
    })
}

/// A corpus map that needs a tree, with its tree.
fn tree_map() -> impl Strategy<Value = (MapPair, Built)> {
    any::<u64>().prop_filter_map("no tree", |seed| {
        let m = monomial_unit_maps(seed, 1).pop()?;
        if classify_preliminary(&m) != Preliminary::NeedsTree {
            return None;
        }
        let b = build_tree(&m, &BuildOptions::default()).ok()?;
        Some((m, b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn print_parse_is_stable(p in poly()) {
        let once = parse_poly(&p.to_string()).unwrap();
        prop_assert_eq!(&once, &p);
        prop_assert_eq!(parse_poly(&once.to_string()).unwrap().to_string(), once.to_string());
    }

    #[test]
    fn gcd_finds_common_factors(a in poly(), b in poly(), c in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let (ac, bc) = (&a * &c, &b * &c);
        let g = poly_gcd(&ac, &bc).unwrap();
        prop_assert!(ac.exact_div(&g).is_some() && bc.exact_div(&g).is_some());
        prop_assert!(g.exact_div(&c).is_some(), "gcd({}, {}) = {}", ac, bc, g);
    }

    #[test]
    fn invariants_hold((m, b) in tree_map()) {
        let v = check_invariants(&m, &b);
        prop_assert!(v.is_empty(), "{}: {:?}", m, v);
    }

    #[test]
    fn json_round_trip((_m, b) in tree_map()) {
        let text = to_json(&b.tree).unwrap();
        let back = from_json(&text).unwrap();
        prop_assert_eq!(&back, &b.tree);
        prop_assert_eq!(to_json(&back).unwrap(), text);
    }

    #[test]
    fn pushed_arcs_are_members((m, b) in tree_map(), p in arc(), q in arc()) {
        prop_assume!(!b.root_pruned);
        let k = CurveGerm::push(&m, &p, &q).unwrap();
        prop_assert!(member(&k, &b.tree).unwrap().member, "{} on ({}, {})", m, p, q);
        prop_assert!(member(&CurveGerm::Degenerate, &b.tree).unwrap().member);
    }

    #[test]
    fn witnesses_rebuild_the_tree((_m, b) in tree_map()) {
        if let Witness::Map(g) = witness_map(&b.tree).unwrap() {
            let again = build_tree(&g, &BuildOptions::default()).unwrap();
            prop_assert!(again.tree.same_shape(&b.tree), "{}", g);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn oracle_is_deterministic((m, b) in tree_map(), seed in any::<u64>()) {
        let cfg = OracleConfig { seed, samples: 100, ..Default::default() };
        let a: Vec<f64> = check_tree(&m, &b.tree, &cfg).iter().map(|c| c.estimate.value).collect();
        let c: Vec<f64> = check_tree(&m, &b.tree, &cfg).iter().map(|c| c.estimate.value).collect();
        prop_assert_eq!(a, c);
    }
}

#[test]
fn chains_have_witnesses() {
    for n in 1..=5 {
        let m = MapPair::new(Poly::x(), Poly::xy(1, n, 1)).unwrap();
        let t = build_tree(&m, &BuildOptions::default()).unwrap().tree;
        let Witness::Map(g) = witness_map(&t).unwrap() else { panic!("n = {}", n) };
        assert!(build_tree(&g, &BuildOptions::default()).unwrap().tree.same_shape(&t));
    }
}
