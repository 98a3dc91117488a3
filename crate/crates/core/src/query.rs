//! Questions answered from a finished tree: is a curve germ in the image,
//! and a map realizing a thin-chain tree.

use crate::algebra::field::FieldElement;
use crate::algebra::poly::{Poly, T, W, X, Y};
use crate::algebra::ratfunc::RationalFunction;
use crate::error::{Error, Result};
use crate::germ::MapPair;
use crate::puiseux::Ratio;
use crate::tree::{coord_minpoly, coord_string, BlossomTree, ChartStep, DivisorKind, DivisorRecord, PointClass};

/// A curve germ in the target, `t` stored as the variable `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveGerm {
    /// The constant arc.
    Degenerate,
    Param(Poly, Poly),
}

impl CurveGerm {
    pub fn new(p: Poly, q: Poly) -> Result<Self> {
        for c in [&p, &q] {
            if c.involves(Y) || c.involves(T) || c.involves(W) {
                return Err(Error::InvalidGerm(format!("{} is not a polynomial in t", c)));
            }
            if !c.constant_term().is_zero() {
                return Err(Error::InvalidGerm(format!("{} does not vanish at t = 0", c)));
            }
        }
        p.check_compatible(&q)?;
        Ok(if p.is_zero() && q.is_zero() { CurveGerm::Degenerate } else { CurveGerm::Param(p, q) })
    }

    /// `F o delta` for a source arc `delta`.
    pub fn push(m: &MapPair, p: &Poly, q: &Poly) -> Result<Self> {
        let (a, b) = m.compose_curve(p, q);
        Self::new(a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// One line per divisor visited.
    pub trace: Vec<String>,
}

/// Order at `t = 0` and the lowest coefficient.
fn lowest(r: &RationalFunction) -> (i64, FieldElement) {
    let low = |p: &Poly| {
        let u = p.to_univariate(X).expect("curve is univariate");
        let k = u.order().expect("nonzero");
        (k as i64, u.coeff(k))
    };
    let (kn, cn) = low(r.num());
    let (kd, cd) = low(r.den());
    (kn - kd, &cn / &cd)
}

/// Direction `[P : Q]` of the curve at `t = 0`.
fn direction(p: &RationalFunction, q: &RationalFunction) -> Ratio {
    if p.is_zero() {
        return Ratio::Finite(FieldElement::zero());
    }
    if q.is_zero() {
        return Ratio::Infinity;
    }
    let (kp, cp) = lowest(p);
    let (kq, cq) = lowest(q);
    match kp.cmp(&kq) {
        std::cmp::Ordering::Greater => Ratio::Finite(FieldElement::zero()),
        std::cmp::Ordering::Less => Ratio::Infinity,
        std::cmp::Ordering::Equal => Ratio::Finite(&cp / &cq),
    }
}

/// Conjugate coordinates describe the same orbit point of the tree.
fn conjugate(a: &Ratio, b: &Ratio) -> bool {
    match (coord_minpoly(a), coord_minpoly(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

fn find_point<'a>(r: &'a DivisorRecord, d: &Ratio, conj: bool) -> Option<(&'a Ratio, PointClass, bool)> {
    if let Some(p) = r.points.iter().find(|p| &p.coord == d) {
        return Some((&p.coord, p.class, conj));
    }
    r.points.iter().find(|p| conjugate(&p.coord, d)).map(|p| (&p.coord, p.class, true))
}

/// Follows the curve through the charts of the tree.
pub fn member(k: &CurveGerm, tree: &BlossomTree) -> Result<Membership> {
    let mut trace = Vec::new();
    let (p, q) = match k {
        CurveGerm::Degenerate => {
            trace.push("degenerate germ: attained by the constant arc".into());
            return Ok(Membership { member: true, trace });
        }
        CurveGerm::Param(p, q) => (p.clone(), q.clone()),
    };
    let Some(mut rec) = tree.root() else {
        return Err(Error::InvalidTree("empty tree".into()));
    };
    let (mut p, mut q) = (RationalFunction::from(p), RationalFunction::from(q));
    let mut conj = false;
    loop {
        let d = direction(&p, &q);
        let kind = if rec.kind == DivisorKind::Thick { "thick" } else { "thin" };
        let (class, at) = match find_point(rec, &d, conj) {
            Some((c, class, cj)) => {
                conj = cj;
                (class, Some(c.clone()))
            }
            None => (rec.class_of(&d), None),
        };
        trace.push(format!("E{} {}: direction {} is {}", rec.step, kind, coord_string(&d), class.as_str()));
        match class {
            PointClass::DeterminedEmpty => return Ok(Membership { member: false, trace }),
            PointClass::DeterminedFull => return Ok(Membership { member: true, trace }),
            PointClass::Undetermined => {
                let at = at.expect("undetermined points are listed");
                rec = tree
                    .child_at(rec.id, &at)
                    .ok_or_else(|| Error::InvalidTree(format!("no divisor grows from {} on E{}", coord_string(&at), rec.step)))?;
                let (np, nq) = match ChartStep::from(&d) {
                    ChartStep::FiniteCenter(c) => (p.sub(&q.scale(&c)).div(&q)?, q),
                    ChartStep::InfinityCenter => (q.div(&p)?, p),
                };
                p = np;
                q = nq;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Map(MapPair),
    Unsupported(String),
}

/// A polynomial map whose tree is the given thin chain.
pub fn witness_map(tree: &BlossomTree) -> Result<Witness> {
    if tree.is_empty() {
        return Err(Error::InvalidTree("empty tree".into()));
    }
    if tree.has_thick() {
        return Ok(Witness::Unsupported("the tree has a thick divisor; its contraction is not constructive".into()));
    }
    let last = tree.records().last().unwrap();
    if !last.terminal || tree.records().iter().any(|r| tree.children(r.id).count() > 1) {
        return Ok(Witness::Unsupported("the tree is not a chain ending in a terminal point".into()));
    }
    let mut steps = tree.chart_to(last.id, &last.points[0].coord);
    steps.reverse();
    let (mut a, mut b) = (Poly::x(), Poly::y());
    for s in &steps {
        let (na, nb) = match s {
            ChartStep::FiniteCenter(c) => (&b * &(&a + &Poly::constant(c.clone())), b.clone()),
            ChartStep::InfinityCenter => (b.clone(), &a * &b),
        };
        a = na;
        b = nb;
    }
    Ok(Witness::Map(MapPair::new(a, b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{build_tree, BuildOptions};

    fn tree(f: Poly, g: Poly) -> BlossomTree {
        build_tree(&MapPair::new(f, g).unwrap(), &BuildOptions::default()).unwrap().tree
    }

    fn t(k: u32) -> Poly {
        Poly::xy(1, k, 0)
    }

    #[test]
    fn first_example_membership() {
        let tr = tree(Poly::xy(1, 1, 1), Poly::y());
        assert!(member(&CurveGerm::new(t(2), t(1)).unwrap(), &tr).unwrap().member);
        assert!(!member(&CurveGerm::new(t(1), t(2)).unwrap(), &tr).unwrap().member);
        assert!(member(&CurveGerm::Degenerate, &tr).unwrap().member);
    }

    #[test]
    fn pushed_arcs_are_members() {
        let m = MapPair::new(Poly::xy(1, 3, 3), Poly::xy(1, 2, 1)).unwrap();
        let tr = build_tree(&m, &BuildOptions::default()).unwrap().tree;
        for (a, b) in [(1, 3), (2, 1), (1, 1), (3, 2)] {
            let k = CurveGerm::push(&m, &t(a), &t(b)).unwrap();
            assert!(member(&k, &tr).unwrap().member);
        }
    }

    #[test]
    fn witnesses() {
        let tr = tree(Poly::xy(1, 1, 1), Poly::y());
        assert_eq!(witness_map(&tr).unwrap(), Witness::Map(MapPair::new(Poly::xy(1, 1, 1), Poly::y()).unwrap()));
        let tr = tree(Poly::x(), Poly::xy(1, 2, 1));
        // (y, x y^2) is (x, x^2 y) with the source variables swapped
        assert_eq!(witness_map(&tr).unwrap(), Witness::Map(MapPair::new(Poly::y(), Poly::xy(1, 1, 2)).unwrap()));
        let tr = tree(Poly::xy(1, 3, 3), Poly::xy(1, 2, 1));
        assert!(matches!(witness_map(&tr).unwrap(), Witness::Unsupported(_)));
    }
}
