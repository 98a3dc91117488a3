//! One blow-up node: the pair of rational functions in the source
//! coordinates, the charts that led to it, and the branches still
//! contracted into it.

use std::sync::Arc;

use crate::algebra::factor::factor_local_detailed;
use crate::algebra::field::FieldElement;
use crate::algebra::gcd::gcd_unchecked;
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RationalFunction;
use crate::error::{Error, Result};
use crate::germ::MapPair;
use crate::ideal::{exceptional_fiber_dim, FiberDim};
use crate::puiseux::{Branch, Ratio};

use super::types::{coord_cmp, coord_string, ChartStep, DivisorKind, ExceptionalPoint, PointClass};

/// A branch of the fiber with the orders `p`, `q` of the two components
/// along it.
#[derive(Clone, Debug)]
pub struct AliveBranch {
    pub branch: Arc<Branch>,
    pub p: i64,
    pub q: i64,
}

impl AliveBranch {
    pub fn orbit(&self) -> usize {
        self.branch.orbit()
    }

    pub fn order(&self) -> i64 {
        self.p.min(self.q)
    }
}

#[derive(Clone, Debug)]
pub struct NodeState {
    pub step: u32,
    pub f: RationalFunction,
    pub g: RationalFunction,
    pub chart_history: Vec<ChartStep>,
    pub alive: Vec<AliveBranch>,
}

/// Order of a rational function along a branch.
pub fn branch_order(r: &RationalFunction, b: &Branch) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for p in [r.num(), r.den()] {
        if !FieldElement::compatible(p.field().as_ref(), b.field()) {
            return Err(Error::FieldMismatch);
        }
    }
    Ok(b.multiplicity_of(r.num())? as i64 - b.multiplicity_of(r.den())? as i64)
}

/// Step 0: the map itself with every branch of `gcd(f, g)` through the
/// origin.
pub fn initial_node(m: &MapPair) -> Result<NodeState> {
    let h = gcd_unchecked(&m.f, &m.g);
    if !h.vanishes_at_origin() {
        return Err(Error::InvalidGerm(format!("{} has an isolated fiber; no blow-up needed", m)));
    }
    let f = RationalFunction::from(m.f.clone());
    let g = RationalFunction::from(m.g.clone());
    let mut alive = Vec::new();
    for fac in factor_local_detailed(&h)?.factors {
        let p = crate::algebra::ratfunc::poly_multiplicity(&m.f, &fac.psi) as i64;
        let q = crate::algebra::ratfunc::poly_multiplicity(&m.g, &fac.psi) as i64;
        for b in fac.branches {
            alive.push(AliveBranch { branch: b, p, q });
        }
    }
    Ok(NodeState { step: 0, f, g, chart_history: Vec::new(), alive })
}

/// Reduced `f/g = a/b`.
pub fn direction_pair(node: &NodeState) -> Result<(Poly, Poly)> {
    node.f.ratio(&node.g)
}

/// Thick when the reduced direction pair vanishes at the origin, else thin
/// with its value there. Checked against the elimination backend.
pub fn divisor_kind(node: &NodeState) -> Result<(DivisorKind, Option<Ratio>, FiberDim)> {
    let (a, b) = direction_pair(node)?;
    let (a0, b0) = (a.constant_term(), b.constant_term());
    let (kind, limit) = if a0.is_zero() && b0.is_zero() {
        (DivisorKind::Thick, None)
    } else if b0.is_zero() {
        (DivisorKind::Thin, Some(Ratio::Infinity))
    } else {
        (DivisorKind::Thin, Some(Ratio::Finite(&a0 / &b0)))
    };
    let fiber = exceptional_fiber_dim(&a, &b)?;
    let agree = match (&fiber, &limit) {
        (FiberDim::One, None) => true,
        (FiberDim::Zero(pt), Some(l)) => pt == l,
        _ => false,
    };
    if !agree {
        return Err(Error::InternalDisagreement(format!(
            "direction [{} : {}] at step {}: origin test says {:?}, fiber backend says {:?}",
            a, b, node.step, kind, fiber
        )));
    }
    Ok((kind, limit, fiber))
}

/// Value of the lifted direction along one branch, if constant.
fn contracted_value(node: &NodeState, ab: &AliveBranch, dir: &(Poly, Poly)) -> Result<Option<Ratio>> {
    if ab.p > ab.q {
        return Ok(Some(Ratio::Finite(FieldElement::zero())));
    }
    if ab.p < ab.q {
        return Ok(Some(Ratio::Infinity));
    }
    // equal orders: the reduced pair does not vanish on the branch and the
    // value is a/b restricted to it
    let (a, b) = dir;
    let b_ = &ab.branch;
    let (Some(ka), Some(kb)) = (b_.order_of(a)?, b_.order_of(b)?) else {
        return Err(Error::InternalDisagreement(format!(
            "direction pair vanishes on a branch with equal orders at step {}",
            node.step
        )));
    };
    if ka != kb {
        return Ok(None);
    }
    let ca = b_.compose(a, ka + 1)?.coeff(ka);
    let cb = b_.compose(b, kb + 1)?.coeff(kb);
    let c = &ca / &cb;
    let diff = a - &b.scale(&c);
    Ok(if b_.certified_zero(&diff)? { Some(Ratio::Finite(c)) } else { None })
}

/// Contracted values with the orbits that reach them, sorted by value.
pub fn contracted_values(node: &NodeState) -> Result<Vec<(Ratio, Vec<usize>)>> {
    let dir = direction_pair(node)?;
    let mut out: Vec<(Ratio, Vec<usize>)> = Vec::new();
    for ab in &node.alive {
        if let Some(v) = contracted_value(node, ab, &dir)? {
            match out.iter_mut().find(|(w, _)| *w == v) {
                Some((_, ids)) => ids.push(ab.orbit()),
                None => out.push((v, vec![ab.orbit()])),
            }
        }
    }
    out.sort_by(|a, b| coord_cmp(&a.0, &b.0));
    Ok(out)
}

/// Special points of the divisor before recursion.
pub fn classify_divisor(
    kind: DivisorKind,
    limit: Option<&Ratio>,
    contracted: &[(Ratio, Vec<usize>)],
) -> Result<Vec<ExceptionalPoint>> {
    match kind {
        DivisorKind::Thick => Ok(contracted
            .iter()
            .map(|(c, ids)| ExceptionalPoint { coord: c.clone(), class: PointClass::Undetermined, alive: ids.clone() })
            .collect()),
        DivisorKind::Thin => {
            let limit = limit.expect("thin divisor has a limit point");
            if let Some((c, _)) = contracted.iter().find(|(c, _)| c != limit) {
                return Err(Error::InternalDisagreement(format!(
                    "branch contracted to {} on a thin divisor whose point is {}",
                    coord_string(c),
                    coord_string(limit)
                )));
            }
            Ok(vec![match contracted.first() {
                Some((_, ids)) => ExceptionalPoint { coord: limit.clone(), class: PointClass::Undetermined, alive: ids.clone() },
                None => ExceptionalPoint { coord: limit.clone(), class: PointClass::DeterminedFull, alive: Vec::new() },
            }])
        }
    }
}

/// Pair after recentering at `c`.
pub fn chart_pair(f: &RationalFunction, g: &RationalFunction, step: &ChartStep) -> Result<(RationalFunction, RationalFunction)> {
    Ok(match step {
        ChartStep::FiniteCenter(c) => {
            let num = f.sub(&g.scale(c));
            (num.div(g)?, g.clone())
        }
        ChartStep::InfinityCenter => (g.div(f)?, f.clone()),
    })
}

/// Blow up the undetermined point `pt` and keep the branches of its
/// alive-subset whose orders stay positive.
pub fn descend(node: &NodeState, pt: &ExceptionalPoint) -> Result<NodeState> {
    let step = ChartStep::from(&pt.coord);
    let (f, g) = chart_pair(&node.f, &node.g, &step)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::InternalDisagreement(format!(
            "chart {} at step {} makes a component vanish identically",
            step, node.step
        )));
    }
    let mut alive = Vec::new();
    for ab in node.alive.iter().filter(|ab| pt.alive.contains(&ab.orbit())) {
        let p = branch_order(&f, &ab.branch)?;
        let q = branch_order(&g, &ab.branch)?;
        if p.min(q) >= 1 {
            alive.push(AliveBranch { branch: ab.branch.clone(), p, q });
        }
    }
    let mut chart_history = node.chart_history.clone();
    chart_history.push(step);
    Ok(NodeState { step: node.step + 1, f, g, chart_history, alive })
}

/// Orders along a branch never increase from parent to child.
pub fn order_check(parent: &NodeState, child: &NodeState) -> Result<()> {
    for c in &child.alive {
        if let Some(p) = parent.alive.iter().find(|p| p.orbit() == c.orbit()) {
            if c.order() > p.order() {
                return Err(Error::OrderMonotonicityViolation(format!(
                    "orbit {} on {}: order {} at step {} but {} at step {}",
                    c.orbit(),
                    c.branch.psi(),
                    p.order(),
                    parent.step,
                    c.order(),
                    child.step
                )));
            }
        }
    }
    Ok(())
}
