use serde::{Deserialize, Serialize};

use crate::algebra::field::NumberField;
use crate::algebra::poly::X;
use crate::error::{Error, Result};
use crate::parse::{parse_with, Context};
use crate::puiseux::Ratio;
use crate::tree::{coord_minpoly, BlossomTree, DivisorKind, DivisorRecord, ExceptionalPoint, PointClass};

pub const CONVENTION: &str = "lambda=f/g";
pub const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct JsonTree {
    nodes: Vec<JsonNode>,
    convention: String,
    version: u32,
    #[serde(default)]
    p_marker: bool,
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    id: usize,
    step: u32,
    kind: String,
    parent: Option<usize>,
    attach: Option<JsonCoord>,
    points: Vec<JsonPoint>,
    terminal: bool,
}

#[derive(Serialize, Deserialize)]
struct JsonCoord {
    value: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    minpoly: Option<String>,
    /// Minimal polynomial of the generator `a` the value is written in.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    field: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonPoint {
    value: String,
    class: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    minpoly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    field: Option<String>,
    #[serde(default)]
    alive: Vec<usize>,
}

fn coord(r: &Ratio) -> JsonCoord {
    match r {
        Ratio::Infinity => JsonCoord { value: "inf".into(), minpoly: None, field: None },
        Ratio::Finite(c) => JsonCoord {
            value: c.to_string(),
            minpoly: coord_minpoly(r).map(|m| m.to_string_var("z")),
            field: c.field().map(|k| k.minpoly_string("a")),
        },
    }
}

pub fn to_json(tree: &BlossomTree) -> Result<String> {
    super::nonempty(tree)?;
    let nodes = tree
        .records()
        .iter()
        .map(|r| JsonNode {
            id: r.id,
            step: r.step,
            kind: match r.kind {
                DivisorKind::Thick => "thick".into(),
                DivisorKind::Thin => "thin".into(),
            },
            parent: r.parent,
            attach: r.attach.as_ref().map(coord),
            points: r
                .points
                .iter()
                .map(|p| {
                    let c = coord(&p.coord);
                    JsonPoint { value: c.value, class: p.class.as_str().into(), minpoly: c.minpoly, field: c.field, alive: p.alive.clone() }
                })
                .collect(),
            terminal: r.terminal,
        })
        .collect();
    let doc = JsonTree { nodes, convention: CONVENTION.into(), version: VERSION, p_marker: tree.p_marker() };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidTree(e.to_string()))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidTree(msg.into())
}

fn read_coord(value: &str, field: Option<&str>) -> Result<Ratio> {
    if value == "inf" {
        return Ok(Ratio::Infinity);
    }
    let ctx = match field {
        None => Context { vars: Vec::new(), generator: None },
        Some(m) => {
            let minpoly = parse_with(m, &Context { vars: vec![("a".into(), X)], generator: None }, 0)?;
            let coeffs = minpoly
                .to_univariate(X)
                .and_then(|u| u.to_rationals())
                .ok_or_else(|| bad(format!("field polynomial '{}' is not rational in a", m)))?;
            Context { vars: Vec::new(), generator: None }.with_generator("a", NumberField::new(coeffs)?.generator())
        }
    };
    let p = parse_with(value, &ctx, 0)?;
    if !p.is_constant() {
        return Err(bad(format!("coordinate '{}' is not a constant", value)));
    }
    Ok(Ratio::Finite(p.constant_term()))
}

/// Inverse of [`to_json`].
pub fn from_json(text: &str) -> Result<BlossomTree> {
    let doc: JsonTree = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    if doc.convention != CONVENTION {
        return Err(bad(format!("unknown convention '{}'", doc.convention)));
    }
    if doc.version != VERSION {
        return Err(bad(format!("unknown version {}", doc.version)));
    }
    let mut records = Vec::new();
    for n in doc.nodes {
        let kind = match n.kind.as_str() {
            "thick" => DivisorKind::Thick,
            "thin" => DivisorKind::Thin,
            k => return Err(bad(format!("unknown kind '{}'", k))),
        };
        let attach = match &n.attach {
            Some(c) => Some(read_coord(&c.value, c.field.as_deref())?),
            None => None,
        };
        let mut points = Vec::new();
        for p in n.points {
            let class = PointClass::parse(&p.class).ok_or_else(|| bad(format!("unknown class '{}'", p.class)))?;
            points.push(ExceptionalPoint { coord: read_coord(&p.value, p.field.as_deref())?, class, alive: p.alive });
        }
        records.push(DivisorRecord { id: n.id, kind, step: n.step, parent: n.parent, attach, points, terminal: n.terminal });
    }
    let tree = BlossomTree::from_records(records)?;
    if tree.p_marker() != doc.p_marker {
        return Err(bad("p_marker does not match the records"));
    }
    Ok(tree)
}
