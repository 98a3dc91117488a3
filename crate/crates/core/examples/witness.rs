//! Polynomial maps realizing the thin-chain trees of (x, x^n y).

use blossom::algebra::Poly;
use blossom::germ::MapPair;
use blossom::query::{witness_map, Witness};
use blossom::tree::{build_tree, BuildOptions};

fn main() {
    for n in 1..=5 {
        let m = MapPair::new(Poly::x(), Poly::xy(1, n, 1)).unwrap();
        let tree = build_tree(&m, &BuildOptions::default()).unwrap().tree;
        match witness_map(&tree).unwrap() {
            Witness::Map(g) => {
                let same = build_tree(&g, &BuildOptions::default()).unwrap().tree.same_shape(&tree);
                println!("{} -> G = {}  (same tree: {})", m, g, same);
            }
            Witness::Unsupported(why) => println!("{}: {}", m, why),
        }
    }
    let m = MapPair::new(Poly::xy(1, 3, 3), Poly::xy(1, 2, 1)).unwrap();
    let tree = build_tree(&m, &BuildOptions::default()).unwrap().tree;
    if let Witness::Unsupported(why) = witness_map(&tree).unwrap() {
        println!("{}: {}", m, why);
    }
}
