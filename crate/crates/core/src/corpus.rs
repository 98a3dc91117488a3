//! Deterministic families of test germs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::poly::Poly;
use crate::germ::MapPair;

/// A unit `1 + ...` with small integer coefficients and degree at most `deg`.
fn random_unit(rng: &mut impl Rng, deg: u32) -> Poly {
    let mut u = Poly::int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
    for _ in 0..rng.gen_range(0..=3) {
        let d = rng.gen_range(1..=deg.max(1));
        let i = rng.gen_range(0..=d);
        if deg == 0 {
            break;
        }
        u = &u + &Poly::xy(rng.gen_range(-3..=3), i, d - i);
    }
    u
}

/// `(x^a y^b u, x^c y^d v)` with units `u, v`, total degree at most 6 and
/// a common monomial factor, so every member needs a tree or is degenerate
/// in a documented way.
pub fn monomial_unit_maps(seed: u64, n: usize) -> Vec<MapPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let (a, b, c, d) = (rng.gen_range(0..=4u32), rng.gen_range(0..=4u32), rng.gen_range(0..=4u32), rng.gen_range(0..=4u32));
        if a + b == 0 || c + d == 0 || a + b > 5 || c + d > 5 || (a.min(c) + b.min(d)) == 0 {
            continue;
        }
        let u = random_unit(&mut rng, 6 - (a + b).max(c + d));
        let v = random_unit(&mut rng, 6 - (a + b).max(c + d));
        let f = &Poly::xy(1, a, b) * &u;
        let g = &Poly::xy(1, c, d) * &v;
        if let Ok(m) = MapPair::new(f, g) {
            out.push(m);
        }
    }
    out
}

/// Worked and structural examples.
pub fn hand_cases() -> Vec<MapPair> {
    let x = Poly::x();
    let y = Poly::y();
    let mut out = vec![
        MapPair::new(Poly::xy(1, 1, 1), y.clone()),
        MapPair::new(Poly::xy(1, 3, 3), Poly::xy(1, 2, 1)),
    ];
    for n in 1..=5 {
        out.push(MapPair::new(x.clone(), Poly::xy(1, n, 1)));
    }
    let fibers = [
        &y.pow(2) - &Poly::xy(2, 2, 0),
        &y - &x.pow(2),
        &y.pow(2) - &x.pow(3),
        &x + &y,
        &(&x * &y) * &(&x - &y),
    ];
    for psi in &fibers {
        out.push(MapPair::new(&y * psi, &x * psi));
        out.push(MapPair::new(&x.pow(2) * psi, &y * psi));
    }
    out.into_iter().map(|m| m.expect("hand cases are germs")).collect()
}
