//! Writes a tree as JSON and reads it back.

use blossom::parse::parse_map;
use blossom::render::{from_json, to_json};
use blossom::tree::{build_tree, BuildOptions};

fn main() {
    let m = parse_map("y*(y^2-2*x^2), x*(y^2-2*x^2)").unwrap();
    let tree = build_tree(&m, &BuildOptions::default()).unwrap().tree;
    let text = to_json(&tree).unwrap();
    println!("{}", text);
    let back = from_json(&text).unwrap();
    assert_eq!(back, tree);
    println!("read back: {} divisors, identical", back.len());
}
