//! Floating-point cross-check: push source points forward and see which
//! points of an exceptional line the image gets close to.
//!
//! Each radius shell runs a small evolution strategy in log-polar source
//! coordinates that minimizes the distance to the target point in the
//! chart chain. The charts are applied exactly to the map; only the
//! evaluation at sample points is floating point. A shell counts as a hit when some evaluated point lies
//! within `delta` of the target with every chain coordinate below `eta`.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::algebra::field::FieldElement;
use crate::algebra::poly::{Poly, X, Y};
use crate::germ::MapPair;
use crate::puiseux::Ratio;
use crate::algebra::ratfunc::RationalFunction;
use crate::tree::{chart_pair, coord_cmp, coord_string, BlossomTree, ChartStep, DivisorKind, PointClass};

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Evaluations per shell.
    pub samples: usize,
    pub shells: usize,
    pub r0: f64,
    pub rho: f64,
    pub delta: f64,
    /// Bound on every chart-chain coordinate in the first shell; it
    /// shrinks with the radius.
    pub eta: f64,
    pub seed: u64,
    pub full_threshold: f64,
    pub empty_threshold: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            samples: 500,
            shells: 12,
            r0: 0.1,
            rho: 0.5,
            delta: 0.01,
            eta: 0.5,
            seed: 0x5eed,
            full_threshold: 0.9,
            empty_threshold: 0.1,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.samples == 0 || self.shells == 0 {
            return Err("samples and shells must be positive".into());
        }
        if !(self.rho > 0.0 && self.rho < 1.0) || self.delta <= 0.0 || self.r0 <= 0.0 || self.eta <= 0.0 {
            return Err("need 0 < rho < 1 and positive r0, delta, eta".into());
        }
        Ok(())
    }
}

/// A deterministic complex root of each minimal polynomial.
fn embed_generator(minpoly: &[crate::algebra::field::Rational]) -> Complex64 {
    let c: Vec<f64> = minpoly.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
    let n = c.len() - 1;
    let lc = c[n];
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a / lc);
    // Durand-Kerner from the usual spiral start
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    roots.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    roots[0]
}

pub fn to_complex(c: &FieldElement) -> Complex64 {
    match c.field() {
        None => Complex64::new(c.as_rational().and_then(|r| r.to_f64()).unwrap_or(f64::NAN), 0.0),
        Some(k) => {
            let alpha = embed_generator(k.minpoly());
            let FieldElement::Ext(e) = c else { unreachable!() };
            e.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, r| acc * alpha + r.to_f64().unwrap_or(f64::NAN))
        }
    }
}

/// Terms `(i, j, c)` of a polynomial in `x, y`.
struct NumPoly(Vec<(i32, i32, Complex64)>);

impl NumPoly {
    fn new(p: &Poly) -> Self {
        NumPoly(p.terms().iter().map(|(m, c)| (m[X] as i32, m[Y] as i32, to_complex(c))).collect())
    }

    fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.0.iter().map(|&(i, j, c)| c * x.powi(i) * y.powi(j)).sum()
    }
}

/// `num / den`.
struct NumRat(NumPoly, NumPoly);

impl NumRat {
    fn new(r: &RationalFunction) -> Self {
        NumRat(NumPoly::new(r.num()), NumPoly::new(r.den()))
    }

    fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.0.eval(x, y) / self.1.eval(x, y)
    }
}

struct Problem {
    /// The pair at every level of the chart chain, the map itself first.
    levels: Vec<(NumRat, NumRat)>,
    target: Option<Complex64>,
    delta: f64,
    /// Source magnitudes go down to `radius^reach`.
    reach: f64,
}

impl Problem {
    /// Whether the point is a hit, and a search objective that keeps a
    /// slope on both sides of the target.
    fn score(&self, x: Complex64, y: Complex64, eta: f64) -> (bool, f64) {
        let mut worst = 0.0f64;
        // values this small have lost their digits, or flushed to zero
        let mut tiny = false;
        let (mut a, mut b) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for (f, g) in &self.levels {
            (a, b) = (f.eval(x, y), g.eval(x, y));
            worst = worst.max(a.norm().max(b.norm()));
            tiny |= a.norm().min(b.norm()) < TINY;
        }
        let (dist, slope) = match self.target {
            Some(c) => {
                let l = a / b;
                let off = if c.norm() > 0.0 { (l / c).ln().norm() } else { (l.norm() / self.delta).ln().max(0.0) };
                ((l - c).norm(), off)
            }
            None => {
                let r = (b / a).norm();
                (r, (r / self.delta).ln().max(0.0))
            }
        };
        if tiny || !(a.is_finite() && b.is_finite() && dist.is_finite() && worst.is_finite() && slope.is_finite()) {
            return (false, f64::INFINITY);
        }
        let hit = worst < eta && dist < self.delta;
        (hit, (worst / eta).ln().max(0.0) + slope)
    }
}

const TINY: f64 = 1e-280;

/// Log-polar source point: `(ln|x|, arg x, ln|y|, arg y)`.
type Genome = [f64; 4];

fn decode(g: &Genome) -> (Complex64, Complex64) {
    (Complex64::from_polar(g[0].exp(), g[1]), Complex64::from_polar(g[2].exp(), g[3]))
}

/// The outcome of one shell: `None` when every evaluation overflowed.
fn run_shell(p: &Problem, radius: f64, eta: f64, samples: usize, seed: u64) -> Option<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = radius.ln();
    // deep points sit on thin horns like x ~ y^k; stay clear of underflow
    let floor = 1e-150f64.ln();
    let bottom = (top * p.reach).max(floor).min(top - 1.0);
    let clamp = |g: &mut Genome| {
        for k in [0, 2] {
            g[k] = g[k].clamp(bottom, top);
        }
    };
    let tau = std::f64::consts::TAU;
    let explore = (samples / 5).max(1);
    let mut best: Option<(f64, Genome)> = None;
    let mut finite = false;
    let mut consider = |g: Genome, best: &mut Option<(f64, Genome)>| -> (bool, f64) {
        let (x, y) = decode(&g);
        let (hit, l) = p.score(x, y, eta);
        if l.is_finite() {
            finite = true;
        }
        if best.as_ref().is_none_or(|(b, _)| l < *b) {
            *best = Some((l, g));
        }
        (hit, l)
    };
    for _ in 0..explore {
        let g = [rng.gen_range(bottom..=top), rng.gen_range(0.0..tau), rng.gen_range(bottom..=top), rng.gen_range(0.0..tau)];
        if consider(g, &mut best).0 {
            return Some(true);
        }
    }
    // (1 + 1) strategy; the step size follows the one-fifth success rule
    // after every evaluation
    let (up, down) = ((1.0f64 / 3.0).exp(), (-1.0f64 / 12.0).exp());
    let mut sigma = 1.0;
    for _ in explore..samples {
        let (parent_loss, parent) = best.unwrap();
        let mut child = parent;
        for v in child.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            *v += sigma * z;
        }
        clamp(&mut child);
        let (hit, l) = consider(child, &mut best);
        if hit {
            return Some(true);
        }
        sigma = if l < parent_loss { sigma * up } else { sigma * down };
        sigma = sigma.clamp(1e-9, 4.0);
    }
    if finite {
        Some(false)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    /// Fraction of usable shells with a hit.
    pub value: f64,
    pub shells_used: usize,
    /// Shells where every evaluation overflowed.
    pub skipped: usize,
}

fn mix(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Estimated reachability of `point` on the line created by blowing up
/// the center reached through `chart`.
pub fn forward_reachability(m: &MapPair, chart: &[ChartStep], point: &Ratio, cfg: &OracleConfig) -> Estimate {
    let mut levels = Vec::with_capacity(chart.len() + 1);
    let (mut f, mut g) = (RationalFunction::from(m.f.clone()), RationalFunction::from(m.g.clone()));
    levels.push((NumRat::new(&f), NumRat::new(&g)));
    for s in chart {
        // exact recentering; doing it in floating point cancels every digit
        // on deep chains with nonzero centers
        match chart_pair(&f, &g, s) {
            Ok((nf, ng)) => {
                f = nf;
                g = ng;
            }
            Err(_) => return Estimate { value: 0.0, shells_used: 0, skipped: cfg.shells },
        }
        levels.push((NumRat::new(&f), NumRat::new(&g)));
    }
    let problem = Problem {
        levels,
        target: match point {
            Ratio::Finite(c) => Some(to_complex(c)),
            Ratio::Infinity => None,
        },
        delta: cfg.delta,
        reach: ((m.f.total_degree() + m.g.total_degree()) as f64 * (chart.len() + 1) as f64).max(4.0),
    };
    let salt = chart.len() as u64 * 1_000_003 + coord_string(point).bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64));
    let outcomes: Vec<Option<bool>> = (0..cfg.shells)
        .into_par_iter()
        .map(|k| {
            let shrink = cfg.rho.powi(k as i32);
            run_shell(&problem, cfg.r0 * shrink, cfg.eta * shrink, cfg.samples, mix(cfg.seed, salt.wrapping_add(k as u64)))
        })
        .collect();
    let used: Vec<bool> = outcomes.iter().flatten().copied().collect();
    let hits = used.iter().filter(|h| **h).count();
    Estimate {
        value: if used.is_empty() { 0.0 } else { hits as f64 / used.len() as f64 },
        shells_used: used.len(),
        skipped: outcomes.len() - used.len(),
    }
}

/// One sampled point of a tree with its symbolic class.
#[derive(Clone, Debug)]
pub struct PointCheck {
    pub record: usize,
    pub step: u32,
    pub point: Ratio,
    pub expected: PointClass,
    pub estimate: Estimate,
    pub agrees: bool,
}

fn candidates(vals: &[i64]) -> Vec<Ratio> {
    vals.iter().map(|&v| Ratio::Finite(FieldElement::from(v))).chain([Ratio::Infinity]).collect()
}

/// Determined points to sample on each divisor: the full special point of
/// a thin line and two empty ones, or two generic points of a thick line.
pub fn sample_points(tree: &BlossomTree) -> Vec<(usize, Ratio, PointClass)> {
    let mut out = Vec::new();
    for r in tree.records() {
        let listed = |c: &Ratio| r.points.iter().any(|p| coord_cmp(&p.coord, c).is_eq());
        match r.kind {
            DivisorKind::Thin => {
                for p in r.points.iter().filter(|p| p.class == PointClass::DeterminedFull) {
                    out.push((r.id, p.coord.clone(), p.class));
                }
                for c in candidates(&[1, -2, 0]).into_iter().filter(|c| !listed(c)).take(2) {
                    out.push((r.id, c, PointClass::DeterminedEmpty));
                }
            }
            DivisorKind::Thick => {
                for c in candidates(&[1, -2, 3, 0]).into_iter().filter(|c| !listed(c)).take(2) {
                    out.push((r.id, c, PointClass::DeterminedFull));
                }
            }
        }
    }
    out
}

/// Compares the oracle with every sampled determined point of the tree.
pub fn check_tree(m: &MapPair, tree: &BlossomTree, cfg: &OracleConfig) -> Vec<PointCheck> {
    sample_points(tree)
        .into_iter()
        .map(|(id, point, expected)| {
            let estimate = forward_reachability(m, &tree.chart_of(id), &point, cfg);
            let agrees = match expected {
                PointClass::DeterminedFull => estimate.value >= cfg.full_threshold,
                PointClass::DeterminedEmpty => estimate.value <= cfg.empty_threshold,
                PointClass::Undetermined => true,
            };
            PointCheck { record: id, step: tree.records()[id].step, point, expected, estimate, agrees }
        })
        .collect()
}
