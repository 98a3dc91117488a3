//! Blossom trees: iterated blow-ups of the target followed in the source
//! coordinates.

pub mod build;
pub mod node;
pub mod types;

pub use build::{build_tree, BuildOptions, Built, TraceChild, TraceNode, DEFAULT_MAX_DEPTH};
pub use node::{
    branch_order, chart_pair, classify_divisor, contracted_values, descend, direction_pair, divisor_kind, initial_node,
    order_check, AliveBranch, NodeState,
};
pub use types::{
    coord_cmp, coord_minpoly, coord_string, BlossomTree, ChartStep, DivisorKind, DivisorRecord, ExceptionalPoint,
    PointClass,
};

use crate::algebra::ratfunc::RationalFunction;
use crate::germ::MapPair;

/// Checks the structural properties every finished tree must have.
/// Returns one message per violation.
pub fn check_invariants(m: &MapPair, built: &Built) -> Vec<String> {
    let mut bad = Vec::new();
    let mut nodes = Vec::new();
    built.trace.walk(&mut nodes);
    let f0 = RationalFunction::from(m.f.clone());
    let g0 = RationalFunction::from(m.g.clone());
    for n in &nodes {
        let s = &n.state;
        let und: Vec<&ExceptionalPoint> = n.initial_points.iter().filter(|p| p.class == PointClass::Undetermined).collect();
        if und.len() > s.alive.len() {
            bad.push(format!("step {}: {} undetermined points but {} alive orbits", s.step, und.len(), s.alive.len()));
        }
        for (i, p) in und.iter().enumerate() {
            if p.alive.is_empty() {
                bad.push(format!("step {}: undetermined point without branches", s.step));
            }
            for q in &und[i + 1..] {
                if p.alive.iter().any(|o| q.alive.contains(o)) {
                    bad.push(format!("step {}: alive subsets overlap", s.step));
                }
            }
        }
        if n.kind == DivisorKind::Thin && n.initial_points.iter().filter(|p| p.class != PointClass::DeterminedEmpty).count() != 1 {
            bad.push(format!("step {}: thin divisor without exactly one non-empty point", s.step));
        }
        if s.chart_history.len() != s.step as usize {
            bad.push(format!("step {}: chart history has length {}", s.step, s.chart_history.len()));
        }
        if s.alive.iter().any(|a| a.order() < 1) {
            bad.push(format!("step {}: alive branch with order below one", s.step));
        }
        // replaying the charts from the root reproduces the pair
        let (mut f, mut g) = (f0.clone(), g0.clone());
        for c in &s.chart_history {
            match chart_pair(&f, &g, c) {
                Ok((a, b)) => {
                    f = a;
                    g = b;
                }
                Err(e) => bad.push(format!("step {}: chart replay failed: {}", s.step, e)),
            }
        }
        if f != s.f || g != s.g {
            bad.push(format!("step {}: chart replay gives ({}, {}) instead of ({}, {})", s.step, f, g, s.f, s.g));
        }
        for c in &n.children {
            if let Err(e) = order_check(s, &c.node.state) {
                bad.push(e.to_string());
            }
        }
        telescope(n, &mut bad);
        if s.step >= DEFAULT_MAX_DEPTH {
            bad.push(format!("depth {} reached", s.step));
        }
    }
    let tree = &built.tree;
    for r in tree.records() {
        let has_child = tree.children(r.id).next().is_some();
        if !has_child && !(r.kind == DivisorKind::Thin && r.terminal) && !built.root_pruned {
            bad.push(format!("leaf {} is not a terminal thin divisor", r.id));
        }
        if r.kind == DivisorKind::Thick && r.undetermined().next().is_none() && !(r.id == 0 && built.root_pruned) {
            bad.push(format!("thick divisor {} has no undetermined point", r.id));
        }
        if r.terminal && r.kind != DivisorKind::Thin {
            bad.push(format!("terminal divisor {} is thick", r.id));
        }
    }
    bad
}

/// Along a run of finite charts with centers `c_1, ..., c_s` starting at
/// `(f, g)`, the depth-`s` first component times `g^s` is
/// `f - c_1 g - ... - c_s g^s`.
fn telescope(start: &TraceNode, bad: &mut Vec<String>) {
    let (f, g) = (&start.state.f, &start.state.g);
    let mut stack: Vec<(&TraceNode, RationalFunction, u32)> = vec![(start, f.clone(), 0)];
    while let Some((n, expected, s)) = stack.pop() {
        if s > 0 {
            let lhs = n.state.f.mul(&g.pow(s));
            if lhs != expected || &n.state.g != g {
                bad.push(format!("telescoped identity fails {} steps below step {}", s, start.state.step));
            }
        }
        for c in &n.children {
            if let ChartStep::FiniteCenter(gamma) = ChartStep::from(&c.at) {
                let next = expected.sub(&g.pow(s + 1).scale(&gamma));
                stack.push((&c.node, next, s + 1));
            }
        }
    }
}

/// Human-readable per-step chart data.
pub fn format_trace(t: &TraceNode) -> String {
    let mut out = String::new();
    let mut nodes = Vec::new();
    t.walk(&mut nodes);
    for n in nodes {
        let s = &n.state;
        let chart: Vec<String> = s.chart_history.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("step {}: chart [{}]\n", s.step, chart.join(", ")));
        out.push_str(&format!("  F{} = ({}, {})\n", s.step, s.f, s.g));
        for a in &s.alive {
            out.push_str(&format!("  alive orbit {} on {}: (p, q) = ({}, {})\n", a.orbit(), a.branch.psi(), a.p, a.q));
        }
        let kind = match (&n.kind, &n.limit) {
            (DivisorKind::Thick, _) => "thick".to_string(),
            (DivisorKind::Thin, Some(l)) => format!("thin at {}", coord_string(l)),
            (DivisorKind::Thin, None) => "thin".to_string(),
        };
        out.push_str(&format!("  divisor E{}: {}\n", s.step + 1, kind));
        for (c, ids) in &n.contracted {
            out.push_str(&format!("  contracted to {}: orbits {:?}\n", coord_string(c), ids));
        }
        for p in &n.points {
            out.push_str(&format!("  point {} {}\n", coord_string(&p.coord), p.class.as_str()));
        }
        for c in n.children.iter().filter(|c| c.pruned) {
            out.push_str(&format!("  pruned thick child at {}\n", coord_string(&c.at)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, FieldElement, NumberField};
    use crate::algebra::poly::Poly;
    use crate::puiseux::Ratio;

    fn built(f: Poly, g: Poly) -> Built {
        let m = MapPair::new(f, g).unwrap();
        let b = build_tree(&m, &BuildOptions::default()).unwrap();
        assert!(check_invariants(&m, &b).is_empty(), "{:?}", check_invariants(&m, &b));
        b
    }

    fn zero() -> Ratio {
        Ratio::Finite(FieldElement::zero())
    }

    #[test]
    fn single_thin() {
        let b = built(Poly::xy(1, 1, 1), Poly::y());
        let t = &b.tree;
        assert_eq!(t.len(), 1);
        let r = t.root().unwrap();
        assert_eq!((r.kind, r.step, r.terminal), (DivisorKind::Thin, 1, true));
        assert_eq!(r.points[0].coord, zero());
        assert_eq!(r.points[0].class, PointClass::DeterminedFull);
        assert!(t.p_marker());
    }


    #[test]
    fn thin_thick_two_leaves() {
        let b = built(Poly::xy(1, 3, 3), Poly::xy(1, 2, 1));
        let t = &b.tree;
        let shape: Vec<(DivisorKind, u32, Option<usize>, bool)> =
            t.records().iter().map(|r| (r.kind, r.step, r.parent, r.terminal)).collect();
        use DivisorKind::*;
        assert_eq!(
            shape,
            vec![(Thin, 1, None, false), (Thick, 2, Some(0), false), (Thin, 3, Some(1), true), (Thin, 3, Some(1), true)]
        );
        assert_eq!(t.records()[0].points[0].class, PointClass::Undetermined);
        assert_eq!(t.records()[0].points[0].alive.len(), 2);
        let thick = &t.records()[1];
        let coords: Vec<Ratio> = thick.undetermined().map(|p| p.coord.clone()).collect();
        assert_eq!(coords, vec![zero(), Ratio::Infinity]);
        for r in &t.records()[2..] {
            assert_eq!(r.points[0].coord, Ratio::Infinity);
        }
        assert!(!t.p_marker());
        // (x y^2, x^2 y) after the first chart
        let n1 = &b.trace.children[0].node.state;
        assert_eq!(n1.f, RationalFunction::from(Poly::xy(1, 1, 2)));
        assert_eq!(n1.g, RationalFunction::from(Poly::xy(1, 2, 1)));
    }

    #[test]
    fn chain_of_thin() {
        for n in 1..5u32 {
            let b = built(Poly::x(), Poly::xy(1, n, 1));
            assert_eq!(b.tree.len(), n as usize);
            assert!(b.tree.records().iter().all(|r| r.kind == DivisorKind::Thin));
            assert!(b.tree.records().last().unwrap().terminal);
            for (i, r) in b.tree.records().iter().enumerate() {
                assert_eq!(r.step as usize, i + 1);
            }
        }
    }

    #[test]
    fn thick_with_children() {
        // f = x y (x - y), g = x y (x + y) blow up to a thick divisor
        let x = Poly::x();
        let y = Poly::y();
        let xy = &x * &y;
        let b = built(&xy * &(&x - &y), &xy * &(&x + &y));
        let r = b.tree.root().unwrap();
        assert_eq!(r.kind, DivisorKind::Thick);
    }

    #[test]
    fn sqrt2_orbit() {
        let x = Poly::x();
        let y = Poly::y();
        let psi = &y.pow(2) - &Poly::xy(2, 2, 0);
        let b = built(&y * &psi, &x * &psi);
        let t = &b.tree;
        let r = t.root().unwrap();
        assert_eq!(r.kind, DivisorKind::Thick);
        let und: Vec<&ExceptionalPoint> = r.undetermined().collect();
        // one representative per conjugate orbit
        assert_eq!(und.len(), 1);
        let k = NumberField::new(vec![rat(-2), rat(0), rat(1)]).unwrap();
        let a = k.generator();
        let mps: Vec<String> = und.iter().map(|p| p.minpoly().unwrap().to_string_var("z")).collect();
        assert!(mps.iter().all(|m| m == "z^2-2"), "{:?}", mps);
        assert!(und.iter().any(|p| p.coord == Ratio::Finite(a.clone())));
        for c in t.children(0) {
            assert_eq!(c.kind, DivisorKind::Thin);
            assert!(c.terminal);
            assert_eq!(c.points[0].coord, Ratio::Infinity);
        }
        assert_eq!(t.children(0).count(), 1);
    }

    #[test]
    fn trace_mentions_every_step() {
        let b = built(Poly::x(), Poly::xy(1, 3, 1));
        let s = format_trace(&b.trace);
        for k in 0..3 {
            assert!(s.contains(&format!("step {}:", k)));
        }
    }
}
