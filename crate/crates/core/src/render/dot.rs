use crate::error::Result;
use crate::tree::{coord_minpoly, coord_string, BlossomTree, DivisorKind};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Directed graph from each divisor to the ones grown from its points.
/// Thick divisors are filled; terminal ones get a double border.
pub fn to_dot(tree: &BlossomTree, orbit_polys: bool) -> Result<String> {
    super::nonempty(tree)?;
    let mut out = String::from("digraph blossom {\n  node [shape=circle];\n");
    for r in tree.records() {
        let mut attrs = vec![format!("label=\"{}\"", r.step)];
        match r.kind {
            DivisorKind::Thick => attrs.push("style=filled, fillcolor=black, fontcolor=white".into()),
            DivisorKind::Thin => attrs.push("style=solid".into()),
        }
        if r.terminal {
            attrs.push("peripheries=2".into());
        }
        out.push_str(&format!("  n{} [{}];\n", r.id, attrs.join(", ")));
    }
    for r in tree.records() {
        if let (Some(p), Some(a)) = (r.parent, &r.attach) {
            let mut label = coord_string(a);
            if orbit_polys {
                if let Some(m) = coord_minpoly(a) {
                    label.push_str(&format!(" root of {}", m.to_string_var("z")));
                }
            }
            out.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", p, r.id, escape(&label)));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
