//! Depth-first construction of the tree with pruning.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::germ::{classify_preliminary, MapPair, Preliminary};
use crate::ideal::FiberDim;
use crate::puiseux::Ratio;

use super::node::{classify_divisor, contracted_values, descend, divisor_kind, initial_node, order_check, NodeState};
use super::types::{BlossomTree, DivisorKind, DivisorRecord, ExceptionalPoint, PointClass};

pub const DEFAULT_MAX_DEPTH: u32 = 64;

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub max_depth: u32,
    /// Recurse into sibling points on the rayon pool.
    pub parallel: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_depth: DEFAULT_MAX_DEPTH, parallel: true }
    }
}

/// Everything computed at one node, pruned subtrees included.
#[derive(Clone, Debug)]
pub struct TraceNode {
    pub state: NodeState,
    pub kind: DivisorKind,
    pub limit: Option<Ratio>,
    pub fiber: FiberDim,
    pub contracted: Vec<(Ratio, Vec<usize>)>,
    /// Points after pruning.
    pub points: Vec<ExceptionalPoint>,
    /// Points before recursion.
    pub initial_points: Vec<ExceptionalPoint>,
    pub children: Vec<TraceChild>,
}

#[derive(Clone, Debug)]
pub struct TraceChild {
    pub at: Ratio,
    pub node: TraceNode,
    pub pruned: bool,
}

impl TraceNode {
    pub fn undetermined_count(&self) -> usize {
        self.points.iter().filter(|p| p.class == PointClass::Undetermined).count()
    }

    /// Pre-order walk over every node, pruned ones included.
    pub fn walk<'a>(&'a self, out: &mut Vec<&'a TraceNode>) {
        out.push(self);
        for c in &self.children {
            c.node.walk(out);
        }
    }
}

#[derive(Clone, Debug)]
pub struct Built {
    pub tree: BlossomTree,
    pub trace: TraceNode,
    /// The first divisor was thick and lost all its undetermined points:
    /// the image is open.
    pub root_pruned: bool,
}

pub fn build_tree(m: &MapPair, opts: &BuildOptions) -> Result<Built> {
    if classify_preliminary(m) != Preliminary::NeedsTree {
        return Err(Error::InvalidGerm(format!("{} does not need a blow-up tree", m)));
    }
    let root = initial_node(m)?;
    let trace = grow(root, opts)?;
    let root_pruned = trace.kind == DivisorKind::Thick && trace.undetermined_count() == 0;
    let mut records = Vec::new();
    flatten(&trace, None, None, &mut records);
    Ok(Built { tree: BlossomTree::from_records(records)?, trace, root_pruned })
}

fn grow(node: NodeState, opts: &BuildOptions) -> Result<TraceNode> {
    if node.step >= opts.max_depth {
        return Err(Error::DepthExceeded(opts.max_depth as usize));
    }
    let (kind, limit, fiber) = divisor_kind(&node)?;
    let contracted = contracted_values(&node)?;
    let initial_points = classify_divisor(kind, limit.as_ref(), &contracted)?;
    let targets: Vec<&ExceptionalPoint> = initial_points.iter().filter(|p| p.class == PointClass::Undetermined).collect();
    let run = |pt: &&ExceptionalPoint| -> Result<Option<TraceChild>> {
        let child = descend(&node, pt)?;
        if child.alive.is_empty() {
            return Ok(None);
        }
        order_check(&node, &child)?;
        let sub = grow(child, opts)?;
        let pruned = sub.kind == DivisorKind::Thick && sub.undetermined_count() == 0;
        Ok(Some(TraceChild { at: pt.coord.clone(), node: sub, pruned }))
    };
    let results: Vec<Result<Option<TraceChild>>> =
        if opts.parallel && targets.len() > 1 { targets.par_iter().map(run).collect() } else { targets.iter().map(run).collect() };
    let mut children = Vec::new();
    for r in results {
        if let Some(c) = r? {
            children.push(c);
        }
    }
    // a point whose blow-up is thick and fully attained, or that keeps no
    // branch, is itself full
    let mut points = Vec::new();
    for p in &initial_points {
        if p.class != PointClass::Undetermined {
            points.push(p.clone());
            continue;
        }
        let live_child = children.iter().any(|c| c.at == p.coord && !c.pruned);
        if live_child {
            points.push(p.clone());
        } else if kind == DivisorKind::Thin {
            points.push(ExceptionalPoint { coord: p.coord.clone(), class: PointClass::DeterminedFull, alive: Vec::new() });
        }
    }
    Ok(TraceNode { state: node, kind, limit, fiber, contracted, points, initial_points, children })
}

fn flatten(t: &TraceNode, parent: Option<usize>, attach: Option<Ratio>, out: &mut Vec<DivisorRecord>) {
    let id = out.len();
    let terminal = t.kind == DivisorKind::Thin && t.points.iter().all(|p| p.class == PointClass::DeterminedFull);
    out.push(DivisorRecord {
        id,
        kind: t.kind,
        step: t.state.step + 1,
        parent,
        attach,
        points: t.points.clone(),
        terminal,
    });
    for c in t.children.iter().filter(|c| !c.pruned) {
        flatten(&c.node, Some(id), Some(c.at.clone()), out);
    }
}
