//! Forward sampling against the exact classification of one tree.

use blossom::oracle::{check_tree, OracleConfig};
use blossom::parse::parse_map;
use blossom::tree::{build_tree, coord_string, BuildOptions};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "x^3*y^3, x^2*y".into());
    let m = parse_map(&text).unwrap();
    let tree = build_tree(&m, &BuildOptions::default()).unwrap().tree;
    let cfg = OracleConfig::default();
    for c in check_tree(&m, &tree, &cfg) {
        println!(
            "E{} {:8} {:12} {:.3} over {} shells  {}",
            c.step,
            coord_string(&c.point),
            c.expected.as_str(),
            c.estimate.value,
            c.estimate.shells_used,
            if c.agrees { "ok" } else { "DISAGREE" }
        );
    }
}
