//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Timing limits are wall-clock and pinned below; the oracle uses the
//! default configuration and seed.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use blossom::algebra::{FieldElement, Poly};
use blossom::cli::run_args;
use blossom::corpus::{hand_cases, monomial_unit_maps};
use blossom::germ::{classify, classify_preliminary, GermClass, MapPair, Preliminary};
use blossom::ideal::{exceptional_fiber_dim, FiberDim};
use blossom::oracle::{check_tree, OracleConfig};
use blossom::parse::{parse_curve, parse_map};
use blossom::puiseux::Ratio;
use blossom::query::{member, witness_map, CurveGerm, Witness};
use blossom::tree::{
    build_tree, check_invariants, direction_pair, BlossomTree, BuildOptions, DivisorKind, DivisorRecord, PointClass,
    TraceNode,
};

const EX1_LIMIT: Duration = Duration::from_secs(1);
const EX2_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_RATE: f64 = 0.99;
const CORPUS_SEED: u64 = 7;
const CORPUS_SIZE: usize = 200;
const ARCS: usize = 200;
const IMAGE_POINTS: usize = 100;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus() -> Vec<MapPair> {
    let mut maps = hand_cases();
    maps.extend(monomial_unit_maps(CORPUS_SEED, CORPUS_SIZE));
    maps
}

fn tree_maps() -> Vec<MapPair> {
    corpus().into_iter().filter(|m| classify_preliminary(m) == Preliminary::NeedsTree).collect()
}

fn zero() -> Ratio {
    Ratio::Finite(FieldElement::from(0))
}

fn point_set(r: &DivisorRecord, class: PointClass) -> Vec<Ratio> {
    r.points.iter().filter(|p| p.class == class).map(|p| p.coord.clone()).collect()
}

fn not_well_defined(text: &str) -> std::result::Result<BlossomTree, String> {
    match classify(&parse_map(text).map_err(|e| e.to_string())?).map_err(|e| e.to_string())? {
        GermClass::NotWellDefined(t) => Ok(t),
        other => Err(format!("class {}", other.name())),
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["blossom"];
    full.extend_from_slice(args);
    let code = run_args(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn first_example() -> Outcome {
    let start = Instant::now();
    let t = not_well_defined("x*y, y")?;
    let took = start.elapsed();
    let [r] = t.records() else { return Err(format!("{} divisors", t.len())) };
    if r.kind != DivisorKind::Thin || r.step != 1 || !r.terminal {
        return Err(format!("root {:?}", r));
    }
    if r.points.len() != 1 || r.points[0].coord != zero() || r.points[0].class != PointClass::DeterminedFull {
        return Err(format!("points {:?}", r.points));
    }
    let (code, out) = cli(&["analyze", "--unicode", "x*y, y"]);
    if code != 0 || !out.contains("⊙¹") {
        return Err(format!("cli exit {} output {:?}", code, out));
    }
    if took >= EX1_LIMIT {
        return Err(format!("took {:.2?}", took));
    }
    Ok(format!("one terminal thin divisor at [0:1], {:.2?}", took))
}

fn second_example() -> Outcome {
    let start = Instant::now();
    let m = parse_map("x^3*y^3, x^2*y").map_err(|e| e.to_string())?;
    let built = build_tree(&m, &BuildOptions::default()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let recs = built.tree.records();
    if recs.len() != 4 {
        return Err(format!("{} divisors", recs.len()));
    }
    let root = &recs[0];
    if root.kind != DivisorKind::Thin || root.step != 1 || point_set(root, PointClass::Undetermined) != vec![zero()] {
        return Err(format!("root {:?}", root));
    }
    let thick = &recs[1];
    let und = point_set(thick, PointClass::Undetermined);
    if thick.kind != DivisorKind::Thick
        || thick.step != 2
        || thick.parent != Some(root.id)
        || und.len() != 2
        || !und.contains(&zero())
        || !und.contains(&Ratio::Infinity)
    {
        return Err(format!("second divisor {:?}", thick));
    }
    for leaf in &recs[2..] {
        if leaf.kind != DivisorKind::Thin || leaf.step != 3 || !leaf.terminal || leaf.parent != Some(thick.id) {
            return Err(format!("leaf {:?}", leaf));
        }
    }
    let first = &built.trace.children[0].node.state;
    let want = (Poly::xy(1, 1, 2), Poly::xy(1, 2, 1));
    if (first.f.num().clone(), first.g.num().clone()) != want || !first.f.den().is_constant() || !first.g.den().is_constant()
    {
        return Err(format!("step 1 pair ({}, {})", first.f, first.g));
    }
    let (code, out) = cli(&["analyze", "--trace", "x^3*y^3, x^2*y"]);
    if code != 0 || !out.contains("F1 = (x*y^2, x^2*y)") {
        return Err(format!("cli exit {} trace {:?}", code, out));
    }
    if took >= EX2_LIMIT {
        return Err(format!("took {:.2?}", took));
    }
    Ok(format!("thin, thick with {{[0:1], [1:0]}}, two terminal thin; F1 = (xy^2, x^2y); {:.2?}", took))
}

fn thin_chains() -> Outcome {
    for n in 1..=5u32 {
        let m = MapPair::new(Poly::x(), Poly::xy(1, n, 1)).unwrap();
        let t = build_tree(&m, &BuildOptions::default()).map_err(|e| e.to_string())?.tree;
        let recs = t.records();
        if recs.len() != n as usize || recs.iter().any(|r| r.kind != DivisorKind::Thin) {
            return Err(format!("n = {}: {} divisors", n, recs.len()));
        }
        let last = recs.last().unwrap();
        if !last.terminal || last.points.iter().all(|p| p.class != PointClass::DeterminedFull) {
            return Err(format!("n = {}: last divisor {:?}", n, last));
        }
        if !t.p_marker() {
            return Err(format!("n = {}: chain is not marked", n));
        }
        match witness_map(&t).map_err(|e| e.to_string())? {
            Witness::Map(g) => {
                let again = build_tree(&g, &BuildOptions::default()).map_err(|e| e.to_string())?.tree;
                if !again.same_shape(&t) {
                    return Err(format!("n = {}: witness {} has another tree", n, g));
                }
            }
            Witness::Unsupported(why) => return Err(format!("n = {}: no witness ({})", n, why)),
        }
    }
    Ok("n = 1..5 give thin chains of length n; witnesses rebuild the same tree".into())
}

fn invariants() -> Outcome {
    let maps = tree_maps();
    let mut problems = Vec::new();
    for m in &maps {
        match build_tree(m, &BuildOptions::default()) {
            Ok(b) => problems.extend(check_invariants(m, &b).into_iter().map(|v| format!("{}: {}", m, v))),
            Err(e) => problems.push(format!("{}: {}", m, e)),
        }
    }
    if maps.len() < CORPUS_SIZE {
        return Err(format!("only {} trees", maps.len()));
    }
    match problems.first() {
        None => Ok(format!("{} trees, 0 violations", maps.len())),
        Some(p) => Err(format!("{} violations, first: {}", problems.len(), p)),
    }
}

fn backend_agreement() -> Outcome {
    let (mut nodes, mut bad) = (0, Vec::new());
    for m in tree_maps() {
        let b = match build_tree(&m, &BuildOptions::default()) {
            Ok(b) => b,
            Err(e) => {
                bad.push(format!("{}: {}", m, e));
                continue;
            }
        };
        let mut all: Vec<&TraceNode> = Vec::new();
        b.trace.walk(&mut all);
        for n in all {
            nodes += 1;
            let (a, c) = direction_pair(&n.state).map_err(|e| e.to_string())?;
            let fiber = exceptional_fiber_dim(&a, &c).map_err(|e| e.to_string())?;
            // the origin test, recomputed here
            let (a0, c0) = (a.constant_term(), c.constant_term());
            let ok = match &fiber {
                FiberDim::One => a0.is_zero() && c0.is_zero() && n.kind == DivisorKind::Thick,
                FiberDim::Zero(Ratio::Infinity) => c0.is_zero() && !a0.is_zero() && n.kind == DivisorKind::Thin,
                FiberDim::Zero(Ratio::Finite(v)) => !c0.is_zero() && &(&a0 / &c0) == v && n.kind == DivisorKind::Thin,
            };
            if !ok {
                bad.push(format!("{} at step {}", m, n.state.step));
            }
        }
    }
    match bad.first() {
        None => Ok(format!("{} nodes agree", nodes)),
        Some(b) => Err(format!("{} disagreements, first: {}", bad.len(), b)),
    }
}

fn random_arc(rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::zero();
    for k in 1..=3 {
        let c = rng.gen_range(-2..=2);
        p = &p + &Poly::xy(c, k, 0);
    }
    p
}

fn membership() -> Outcome {
    let m = parse_map("x*y, y").unwrap();
    let t = build_tree(&m, &BuildOptions::default()).unwrap().tree;
    let yes = member(&parse_curve("t^2, t").unwrap(), &t).map_err(|e| e.to_string())?.member;
    let no = member(&parse_curve("t, t^2").unwrap(), &t).map_err(|e| e.to_string())?.member;
    if !yes || no {
        return Err(format!("(t^2, t) -> {}, (t, t^2) -> {}", yes, no));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let maps: Vec<(MapPair, BlossomTree)> = tree_maps()
        .into_iter()
        .filter_map(|m| {
            let b = build_tree(&m, &BuildOptions::default()).ok()?;
            (!b.root_pruned).then_some((m, b.tree))
        })
        .collect();
    let mut failed = Vec::new();
    for i in 0..ARCS {
        let (m, t) = &maps[i % maps.len()];
        let (p, q) = loop {
            let (p, q) = (random_arc(&mut rng), random_arc(&mut rng));
            if !(p.is_zero() && q.is_zero()) {
                break (p, q);
            }
        };
        let k = CurveGerm::push(m, &p, &q).map_err(|e| e.to_string())?;
        match member(&k, t) {
            Ok(r) if r.member => {}
            other => failed.push(format!("{} on ({}, {}): {:?}", m, p, q, other.map(|r| r.member))),
        }
    }
    match failed.first() {
        None => Ok(format!("{}/{} pushed arcs are members; (t^2, t) in, (t, t^2) out", ARCS, ARCS)),
        Some(f) => Err(format!("{}/{} pushed arcs, first miss: {}", ARCS - failed.len(), ARCS, f)),
    }
}

fn curve_image() -> Outcome {
    let m = parse_map("(x+y)^2, (x+y)^3").unwrap();
    let eq = match classify(&m).map_err(|e| e.to_string())? {
        GermClass::CurveImage(e) => e,
        other => return Err(format!("class {}", other.name())),
    };
    // associate to v^2 - u^3, with u, v stored as x, y
    let cusp = &Poly::xy(1, 0, 2) - &Poly::xy(1, 3, 0);
    let lead = eq.coeff(&[0, 2, 0, 0]);
    if lead.is_zero() || eq.scale(&(&FieldElement::from(1) / &lead)) != cusp {
        return Err(format!("equation {}", eq));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..IMAGE_POINTS {
        let a = FieldElement::from(blossom::algebra::field::ratio(rng.gen_range(-50..=50), rng.gen_range(1..=20)));
        let b = FieldElement::from(blossom::algebra::field::ratio(rng.gen_range(-50..=50), rng.gen_range(1..=20)));
        let (u, v) = m.eval(&a, &b);
        let at = eq.substitute(&[Poly::constant(u.clone()), Poly::constant(v.clone()), Poly::zero(), Poly::zero()]);
        if !at.is_zero() {
            return Err(format!("C({}, {}) = {}", u, v, at));
        }
    }
    Ok(format!("equation {} = 0 vanishes on {} image points", eq.to_string_with(&["u", "v"]), IMAGE_POINTS))
}

fn oracle() -> Outcome {
    let cfg = OracleConfig::default();
    let start = Instant::now();
    let (mut total, mut ok) = (0usize, 0usize);
    for m in tree_maps() {
        let b = build_tree(&m, &BuildOptions::default()).map_err(|e| e.to_string())?;
        for c in check_tree(&m, &b.tree, &cfg) {
            total += 1;
            ok += c.agrees as usize;
        }
    }
    let took = start.elapsed();
    let rate = ok as f64 / total as f64;
    let line = format!("{}/{} points agree ({:.2}%), {:.2?}", ok, total, 100.0 * rate, took);
    if rate >= ORACLE_RATE && took < ORACLE_LIMIT {
        Ok(line)
    } else {
        Err(line)
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("first worked example", first_example),
        ("second worked example", second_example),
        ("thin chains and witnesses", thin_chains),
        ("invariants on the corpus", invariants),
        ("backend agreement", backend_agreement),
        ("membership", membership),
        ("curve image", curve_image),
        ("oracle agreement", oracle),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {} PASS {}: {}", i + 1, name, msg),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {}: {}", i + 1, name, msg);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
