use crate::error::Result;
use crate::tree::{BlossomTree, DivisorKind};

fn superscript(n: u32) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| SUP[c.to_digit(10).unwrap() as usize]).collect()
}

/// One divisor per line, indented two spaces per level.
pub fn to_ascii(tree: &BlossomTree, unicode: bool) -> Result<String> {
    super::nonempty(tree)?;
    let mut out = String::new();
    for r in tree.records() {
        out.push_str(&"  ".repeat(tree.depth(r.id)));
        match (r.kind, unicode) {
            (DivisorKind::Thick, false) => out.push_str(&format!("(*)^{}", r.step)),
            (DivisorKind::Thin, false) => out.push_str(&format!("(o)^{}", r.step)),
            (DivisorKind::Thick, true) => out.push_str(&format!("●{}", superscript(r.step))),
            (DivisorKind::Thin, true) => out.push_str(&format!("⊙{}", superscript(r.step))),
        }
        if r.terminal {
            out.push_str(" [T]");
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn superscripts() {
        assert_eq!(superscript(12), "¹²");
    }

    #[test]
    fn empty_is_rejected() {
        assert!(to_ascii(&BlossomTree::default(), false).is_err());
    }
}
