//! Which curve germs lie in the image of (xy, y).

use blossom::parse::{parse_curve, parse_map};
use blossom::query::member;
use blossom::tree::{build_tree, BuildOptions};

fn main() {
    let m = parse_map("x*y, y").unwrap();
    let tree = build_tree(&m, &BuildOptions::default()).unwrap().tree;
    for k in ["t^2, t", "t, t^2", "t, 0", "0, t", "t^3 + t^2, t", "0"] {
        let r = member(&parse_curve(k).unwrap(), &tree).unwrap();
        println!("({}): {}", k, r.member);
        for line in &r.trace {
            println!("    {}", line);
        }
    }
}
