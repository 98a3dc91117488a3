//! Runs the sampling oracle against every tree of the corpus.

use std::time::Instant;

use blossom::corpus::{hand_cases, monomial_unit_maps};
use blossom::germ::{classify_preliminary, Preliminary};
use blossom::oracle::{check_tree, OracleConfig};
use blossom::tree::{build_tree, coord_string, BuildOptions};

fn main() {
    let mut maps = hand_cases();
    maps.extend(monomial_unit_maps(7, 200));
    let cfg = OracleConfig::default();
    let start = Instant::now();
    let (mut total, mut ok) = (0, 0);
    for m in &maps {
        if classify_preliminary(m) != Preliminary::NeedsTree {
            continue;
        }
        let b = build_tree(m, &BuildOptions::default()).expect("corpus builds");
        for c in check_tree(m, &b.tree, &cfg) {
            total += 1;
            if c.agrees {
                ok += 1;
            } else {
                println!("{} E{} {} {}: {:.3}", m, c.step, coord_string(&c.point), c.expected.as_str(), c.estimate.value);
            }
        }
    }
    println!("{}/{} points agree, {:.2?}", ok, total, start.elapsed());
}
