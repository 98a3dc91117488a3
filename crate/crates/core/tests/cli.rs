use blossom::cli::run_args;
use blossom::Error;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["blossom"];
    full.extend_from_slice(args);
    let code = run_args(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn analyze_examples() {
    let (code, out, _) = run(&["analyze", "--unicode", "x*y, y"]);
    assert_eq!(code, 0);
    assert!(out.contains("⊙¹"), "{}", out);
    let (code, out, _) = run(&["analyze", "x, y"]);
    assert_eq!((code, out.trim()), (0, "Open"));
    let (code, out, _) = run(&["analyze", "--trace", "x^3*y^3, x^2*y"]);
    assert_eq!(code, 0);
    assert!(out.contains("F1 = (x*y^2, x^2*y)"), "{}", out);
    let (_, out, _) = run(&["analyze", "(x+y)^2, (x+y)^3"]);
    assert!(out.starts_with("CurveImage: u^3 - v^2 = 0"), "{}", out);
    let (_, out, _) = run(&["analyze", "0, 0"]);
    assert_eq!(out.trim(), "Constant");
}

#[test]
fn leading_minus_is_a_map() {
    let (code, out, err) = run(&["analyze", "-x*y, y"]);
    assert_eq!(code, 0, "{}", err);
    assert!(out.starts_with("NotWellDefined"));
}

#[test]
fn formats() {
    let (_, out, _) = run(&["analyze", "--format", "dot", "x^3*y^3, x^2*y"]);
    assert!(out.starts_with("// NotWellDefined\ndigraph blossom {"), "{}", out);
    assert_eq!(out.matches("->").count(), 3);
    let (_, out, _) = run(&["analyze", "--format", "json", "x^3*y^3, x^2*y"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class"], "NotWellDefined");
    assert_eq!(v["tree"]["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(v["tree"]["convention"], "lambda=f/g");
    let (_, out, _) = run(&["analyze", "--format", "json", "x^2, x^3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equation"], "u^3 - v^2");
    let (code, _, _) = run(&["analyze", "--format", "svg", "x, y"]);
    assert_eq!(code, 2);
}

#[test]
fn member_and_witness() {
    let (code, out, _) = run(&["member", "x*y, y", "t^2, t"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("true\n"));
    let (_, out, _) = run(&["member", "x*y, y", "t, t^2"]);
    assert!(out.starts_with("false\n"));
    let (_, out, _) = run(&["member", "x*y, y", "0"]);
    assert!(out.starts_with("true"));
    let (_, out, _) = run(&["member", "x^2, x^3", "t^2, t^3"]);
    assert!(out.trim_end().ends_with("true"), "{}", out);
    let (_, out, _) = run(&["member", "x^2, x^3", "t, t^3"]);
    assert!(out.trim_end().ends_with("false"), "{}", out);
    let (_, out, _) = run(&["witness", "x, x^2*y"]);
    assert_eq!(out.trim(), "G = (b, a*b^2)");
    let (code, out, _) = run(&["witness", "x^3*y^3, x^2*y"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("unsupported"));
}

#[test]
fn oracle_and_trace() {
    let (code, out, _) = run(&["oracle", "--samples", "200", "x*y, y"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.ends_with("agreement: 3/3\n"), "{}", out);
    let (code, out, _) = run(&["trace", "x*y, y"]);
    assert_eq!(code, 0);
    assert!(out.contains("divisor E1: thin at [0:1]"), "{}", out);
    let (_, out, _) = run(&["trace", "x, y"]);
    assert!(out.contains("no blow-up needed"));
}

#[test]
fn deterministic() {
    let a = run(&["oracle", "--seed", "3", "x^3*y^3, x^2*y"]);
    let b = run(&["oracle", "--seed", "3", "x^3*y^3, x^2*y"]);
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["analyze", "x**2, y"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 3"), "{}", err);
    assert_eq!(run(&["analyze"]).0, 2);
    assert_eq!(run(&["--field", "a^2-4", "analyze", "x*y, y"]).0, 3);
    assert_eq!(run(&["--max-depth", "2", "analyze", "x, x^4*y"]).0, 4);
    assert_eq!(run(&["analyze", "x + 1, y"]).0, 1);
    assert_eq!(run(&["--samples", "0", "oracle", "x*y, y"]).0, 2);
    assert_eq!(Error::InternalDisagreement(String::new()).exit_code(), 5);
    assert_eq!(Error::OrderMonotonicityViolation(String::new()).exit_code(), 6);
}

#[test]
fn field_extension() {
    let (code, out, _) = run(&["--field", "a^2-2", "analyze", "x*y, a*y"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("NotWellDefined"));
    let (_, out, _) = run(&["analyze", "--format", "dot", "y*(y^2-2*x^2), x*(y^2-2*x^2)"]);
    assert!(out.contains("root of z^2-2"), "{}", out);
}
