//! Text forms of a tree.

mod ascii;
mod dot;
mod json;

pub use ascii::to_ascii;
pub use dot::to_dot;
pub use json::{from_json, to_json};

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::BlossomTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Ascii,
    Dot,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{}' (ascii, dot, json)", s)),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RenderOptions {
    pub format: Format,
    /// Circle glyphs in ASCII output.
    pub unicode: bool,
    /// Minimal polynomials of orbit coordinates in DOT labels.
    pub orbit_polys: bool,
}

pub fn render(tree: &BlossomTree, opts: &RenderOptions) -> Result<String> {
    match opts.format {
        Format::Ascii => to_ascii(tree, opts.unicode),
        Format::Dot => to_dot(tree, opts.orbit_polys),
        Format::Json => to_json(tree),
    }
}

fn nonempty(tree: &BlossomTree) -> Result<()> {
    if tree.is_empty() {
        Err(Error::InvalidTree("empty tree".into()))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;
    use crate::germ::MapPair;
    use crate::tree::{build_tree, BuildOptions};

    fn tree(f: Poly, g: Poly) -> BlossomTree {
        build_tree(&MapPair::new(f, g).unwrap(), &BuildOptions::default()).unwrap().tree
    }

    fn sqrt2() -> BlossomTree {
        let psi = &Poly::y().pow(2) - &Poly::xy(2, 2, 0);
        tree(&Poly::y() * &psi, &Poly::x() * &psi)
    }

    #[test]
    fn ascii_examples() {
        assert_eq!(to_ascii(&tree(Poly::xy(1, 1, 1), Poly::y()), false).unwrap(), "(o)^1 [T]\n");
        assert_eq!(
            to_ascii(&tree(Poly::xy(1, 3, 3), Poly::xy(1, 2, 1)), false).unwrap(),
            "(o)^1\n  (*)^2\n    (o)^3 [T]\n    (o)^3 [T]\n"
        );
        assert_eq!(to_ascii(&tree(Poly::xy(1, 1, 1), Poly::y()), true).unwrap(), "⊙¹ [T]\n");
    }

    #[test]
    fn dot_examples() {
        let d = to_dot(&tree(Poly::xy(1, 1, 1), Poly::y()), true).unwrap();
        assert_eq!(d.matches(" [label=").count(), 1);
        assert!(!d.contains("->"));
        let d = to_dot(&tree(Poly::xy(1, 3, 3), Poly::xy(1, 2, 1)), true).unwrap();
        assert_eq!(d.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 4);
        assert_eq!(d.matches("->").count(), 3);
        assert_eq!(d.matches("filled").count(), 1);
        let d = to_dot(&sqrt2(), true).unwrap();
        assert!(d.contains("root of z^2-2"), "{}", d);
        assert!(to_dot(&BlossomTree::default(), true).is_err());
    }

    #[test]
    fn json_round_trip() {
        for t in [tree(Poly::xy(1, 1, 1), Poly::y()), tree(Poly::xy(1, 3, 3), Poly::xy(1, 2, 1)), sqrt2()] {
            let s = to_json(&t).unwrap();
            assert_eq!(from_json(&s).unwrap(), t);
        }
        let s = to_json(&sqrt2()).unwrap();
        assert!(s.contains("\"minpoly\": \"z^2-2\""));
        assert!(s.contains("\"convention\": \"lambda=f/g\""));
        assert!(to_json(&BlossomTree::default()).is_err());
    }

    #[test]
    fn json_key_order() {
        let s = to_json(&tree(Poly::xy(1, 3, 3), Poly::xy(1, 2, 1))).unwrap();
        let keys = ["\"id\"", "\"step\"", "\"kind\"", "\"parent\"", "\"attach\"", "\"points\"", "\"terminal\""];
        let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(s.find("\"nodes\"").unwrap() < s.find("\"convention\"").unwrap());
        assert!(s.find("\"convention\"").unwrap() < s.find("\"version\"").unwrap());
    }
}
