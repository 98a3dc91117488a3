//! Builds trees for the random corpus and reports invariant violations.

use std::time::Instant;

use blossom::corpus::{hand_cases, monomial_unit_maps};
use blossom::germ::{classify_preliminary, Preliminary};
use blossom::render::to_ascii;
use blossom::tree::{build_tree, check_invariants, BuildOptions};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let mut maps = hand_cases();
    maps.extend(monomial_unit_maps(7, n));
    let start = Instant::now();
    let (mut trees, mut bad) = (0, 0);
    for m in &maps {
        if classify_preliminary(m) != Preliminary::NeedsTree {
            continue;
        }
        let t0 = Instant::now();
        match build_tree(m, &BuildOptions::default()) {
            Ok(b) => {
                trees += 1;
                let v = check_invariants(m, &b);
                if !v.is_empty() {
                    bad += 1;
                    println!("{}: {:?}", m, v);
                }
                if t0.elapsed().as_millis() > 500 {
                    println!("slow ({} ms): {}\n{}", t0.elapsed().as_millis(), m, to_ascii(&b.tree, false).unwrap());
                }
            }
            Err(e) => {
                bad += 1;
                println!("{}: error {}", m, e);
            }
        }
    }
    println!("{} trees, {} with problems, {:.2?}", trees, bad, start.elapsed());
}
