//! Parsing, normalization and error columns.

use blossom::parse::{parse_curve, parse_map, parse_poly};
use blossom::query::CurveGerm;

fn main() {
    for text in ["x^3*y^3", "(x+y)^2 - x^2 - 2*x*y", "-1/2*x + 3/4*y^2", "x**2", "x + z", "x^-1"] {
        match parse_poly(text) {
            Ok(p) => println!("{:24} -> {}", text, p),
            Err(e) => println!("{:24} -> {}", text, e),
        }
    }
    println!("{:?}", parse_map("x*y, y").map(|m| m.to_string()));
    println!("{:?}", parse_map("x + 1, y").map(|m| m.to_string()));
    if let Ok(CurveGerm::Param(p, q)) = parse_curve("t^2, t^3") {
        println!("curve ({}, {})", p.to_string_with(&["t"]), q.to_string_with(&["t"]));
    }
}
