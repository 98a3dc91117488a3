//! Classifies a few germs, or the one given on the command line.

use blossom::germ::classify;
use blossom::parse::parse_map;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let maps = if args.is_empty() {
        vec!["x, y".to_string(), "0, 0".into(), "(x+y)^2, (x+y)^3".into(), "x*y, y".into(), "x^3*y^3, x^2*y".into()]
    } else {
        args
    };
    for text in &maps {
        let m = parse_map(text).expect("a map germ");
        let class = classify(&m).expect("classifiable");
        println!("{:24} {}", text, class.name());
    }
}
