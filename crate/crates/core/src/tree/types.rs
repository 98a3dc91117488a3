//! Records of a finished blossom tree.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::field::FieldElement;
use crate::algebra::upoly::UniPoly;
use crate::error::{Error, Result};
use crate::puiseux::Ratio;

/// Chart used to recenter at a point of an exceptional line, with
/// `lambda = f/g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartStep {
    /// `(f, g) -> ((f - c g)/g, g)`.
    FiniteCenter(FieldElement),
    /// `(f, g) -> (g/f, f)`.
    InfinityCenter,
}

impl From<&Ratio> for ChartStep {
    fn from(r: &Ratio) -> Self {
        match r {
            Ratio::Finite(c) => ChartStep::FiniteCenter(c.clone()),
            Ratio::Infinity => ChartStep::InfinityCenter,
        }
    }
}

impl fmt::Display for ChartStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartStep::FiniteCenter(c) => write!(f, "finite({})", c),
            ChartStep::InfinityCenter => write!(f, "infinity"),
        }
    }
}

/// Deterministic order on coordinates: finite values canonically, the
/// point at infinity last.
pub fn coord_cmp(a: &Ratio, b: &Ratio) -> Ordering {
    match (a, b) {
        (Ratio::Finite(x), Ratio::Finite(y)) => x.canonical_cmp(y),
        (Ratio::Finite(_), Ratio::Infinity) => Ordering::Less,
        (Ratio::Infinity, Ratio::Finite(_)) => Ordering::Greater,
        (Ratio::Infinity, Ratio::Infinity) => Ordering::Equal,
    }
}

/// `[c:1]` or `[1:0]`.
pub fn coord_string(r: &Ratio) -> String {
    match r {
        Ratio::Finite(c) => format!("[{}:1]", c),
        Ratio::Infinity => "[1:0]".into(),
    }
}

/// Minimal polynomial over `Q` of a non-rational coordinate.
pub fn coord_minpoly(r: &Ratio) -> Option<UniPoly> {
    match r {
        Ratio::Finite(c) if !c.is_rational() => {
            let cp = UniPoly::from_rationals(c.charpoly());
            // the characteristic polynomial is a power of the minimal one
            Some(cp.squarefree_part().monic())
        }
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorKind {
    Thick,
    Thin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointClass {
    DeterminedEmpty,
    DeterminedFull,
    Undetermined,
}

impl PointClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PointClass::DeterminedEmpty => "empty",
            PointClass::DeterminedFull => "full",
            PointClass::Undetermined => "undetermined",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "empty" => Some(PointClass::DeterminedEmpty),
            "full" => Some(PointClass::DeterminedFull),
            "undetermined" => Some(PointClass::Undetermined),
            _ => None,
        }
    }
}

/// A special point of an exceptional line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalPoint {
    pub coord: Ratio,
    pub class: PointClass,
    /// Orbit ids of the branches still contracted onto this point.
    pub alive: Vec<usize>,
}

impl ExceptionalPoint {
    pub fn minpoly(&self) -> Option<UniPoly> {
        coord_minpoly(&self.coord)
    }
}

/// One exceptional divisor. Thin records list their single non-empty
/// point; thick records list their undetermined points, every other point
/// being full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorRecord {
    pub id: usize,
    pub kind: DivisorKind,
    pub step: u32,
    pub parent: Option<usize>,
    /// Point of the parent divisor this one grew from.
    pub attach: Option<Ratio>,
    pub points: Vec<ExceptionalPoint>,
    pub terminal: bool,
}

impl DivisorRecord {
    pub fn undetermined(&self) -> impl Iterator<Item = &ExceptionalPoint> {
        self.points.iter().filter(|p| p.class == PointClass::Undetermined)
    }

    /// Class of an arbitrary point of the line.
    pub fn class_of(&self, c: &Ratio) -> PointClass {
        match self.points.iter().find(|p| &p.coord == c) {
            Some(p) => p.class,
            None => match self.kind {
                DivisorKind::Thin => PointClass::DeterminedEmpty,
                DivisorKind::Thick => PointClass::DeterminedFull,
            },
        }
    }
}

/// Records in depth-first order, the root first; children follow the
/// order of their attachment points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlossomTree {
    records: Vec<DivisorRecord>,
    /// Set for a chain of thin divisors: the tree then carries a terminal
    /// thick point.
    p_marker: bool,
}

impl BlossomTree {
    /// Checks ids, parents and attachment points.
    pub fn from_records(records: Vec<DivisorRecord>) -> Result<Self> {
        for (i, r) in records.iter().enumerate() {
            if r.id != i {
                return Err(Error::InvalidTree(format!("record {} has id {}", i, r.id)));
            }
            match (r.parent, &r.attach) {
                (None, None) if i == 0 => {}
                (Some(p), Some(a)) if p < i => {
                    let parent = &records[p];
                    if parent.class_of(a) != PointClass::Undetermined {
                        return Err(Error::InvalidTree(format!("record {} grows from a point that is not undetermined", i)));
                    }
                    if r.step != parent.step + 1 {
                        return Err(Error::InvalidTree(format!("record {} has step {} under step {}", i, r.step, parent.step)));
                    }
                }
                _ => return Err(Error::InvalidTree(format!("record {} has an invalid parent", i))),
            }
            if r.kind == DivisorKind::Thin && r.points.len() != 1 {
                return Err(Error::InvalidTree(format!("thin record {} must have one point", i)));
            }
        }
        let p_marker = !records.is_empty() && records.iter().all(|r| r.kind == DivisorKind::Thin);
        Ok(BlossomTree { records, p_marker })
    }

    pub fn records(&self) -> &[DivisorRecord] {
        &self.records
    }

    pub fn root(&self) -> Option<&DivisorRecord> {
        self.records.first()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn p_marker(&self) -> bool {
        self.p_marker
    }

    pub fn children(&self, id: usize) -> impl Iterator<Item = &DivisorRecord> {
        self.records.iter().filter(move |r| r.parent == Some(id))
    }

    pub fn child_at(&self, id: usize, c: &Ratio) -> Option<&DivisorRecord> {
        self.children(id).find(|r| r.attach.as_ref() == Some(c))
    }

    /// Depth of a record, the root being 0.
    pub fn depth(&self, id: usize) -> usize {
        let mut d = 0;
        let mut cur = id;
        while let Some(p) = self.records[cur].parent {
            d += 1;
            cur = p;
        }
        d
    }

    /// Chart steps from the root to the point `c` of record `id`.
    pub fn chart_to(&self, id: usize, c: &Ratio) -> Vec<ChartStep> {
        let mut path = vec![ChartStep::from(c)];
        let mut cur = id;
        while let (Some(p), Some(a)) = (self.records[cur].parent, &self.records[cur].attach) {
            path.push(ChartStep::from(a));
            cur = p;
        }
        path.reverse();
        path
    }

    /// Chart steps leading to the center whose blow-up created `id`.
    pub fn chart_of(&self, id: usize) -> Vec<ChartStep> {
        match (self.records[id].parent, &self.records[id].attach) {
            (Some(p), Some(a)) => self.chart_to(p, a),
            _ => Vec::new(),
        }
    }

    pub fn has_thick(&self) -> bool {
        self.records.iter().any(|r| r.kind == DivisorKind::Thick)
    }

    /// Equality ignoring orbit ids, which depend on how the fiber of a
    /// particular map was numbered.
    pub fn same_shape(&self, o: &Self) -> bool {
        self.records.len() == o.records.len()
            && self.p_marker == o.p_marker
            && self.records.iter().zip(&o.records).all(|(a, b)| {
                a.kind == b.kind
                    && a.step == b.step
                    && a.parent == b.parent
                    && a.attach == b.attach
                    && a.terminal == b.terminal
                    && a.points.len() == b.points.len()
                    && a.points.iter().zip(&b.points).all(|(p, q)| p.coord == q.coord && p.class == q.class)
            })
    }
}
