//! Per-step chart data of the blow-up of (x^3 y^3, x^2 y).

use blossom::parse::parse_map;
use blossom::tree::{build_tree, format_trace, BuildOptions};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "x^3*y^3, x^2*y".into());
    let built = build_tree(&parse_map(&text).unwrap(), &BuildOptions::default()).unwrap();
    print!("{}", format_trace(&built.trace));
}
