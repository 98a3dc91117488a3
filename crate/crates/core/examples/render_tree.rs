//! The tree of (x^3 y^3, x^2 y) in every output format.

use blossom::germ::classify;
use blossom::germ::GermClass;
use blossom::parse::parse_map;
use blossom::render::{render, Format, RenderOptions};

fn main() {
    let m = parse_map("x^3*y^3, x^2*y").unwrap();
    let GermClass::NotWellDefined(tree) = classify(&m).unwrap() else { unreachable!() };
    for (format, unicode) in [(Format::Ascii, false), (Format::Ascii, true), (Format::Dot, false), (Format::Json, false)] {
        let opts = RenderOptions { format, unicode, orbit_polys: true };
        println!("{}", render(&tree, &opts).unwrap());
    }
}
