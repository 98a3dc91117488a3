//! Factorization of univariate polynomials over the rationals
//! (Cantor-Zassenhaus modulo a small prime, Hensel lifting, recombination).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Rational;
use super::upoly::UniPoly;

/// Monic irreducible factors over Q with multiplicities, sorted by degree
/// then coefficients. Panics on non-rational input.
pub fn factor_rational(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    assert!(p.is_rational(), "factor_rational needs rational coefficients");
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    for (sqf, mult) in yun(&p.monic()) {
        for f in factor_squarefree(&sqf) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.to_rationals().cmp(&b.0.to_rationals()))
    });
    out
}

pub fn is_irreducible(p: &UniPoly) -> bool {
    let f = factor_rational(p);
    f.len() == 1 && f[0].1 == 1 && f[0].0.degree() == p.degree()
}

/// Squarefree decomposition of a monic polynomial.
pub(crate) fn yun(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    let dp = p.derivative();
    let mut a = p.gcd(&dp);
    let mut b = p.exact_div(&a).unwrap();
    let mut c = dp.exact_div(&a).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).unwrap();
        c = d.exact_div(&a).unwrap();
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Monic squarefree rational polynomial to monic irreducible factors.
fn factor_squarefree(p: &UniPoly) -> Vec<UniPoly> {
    let n = p.degree().unwrap();
    if n <= 1 {
        return vec![p.clone()];
    }
    let (f, _) = to_primitive_integer(p);
    let lc = f.last().unwrap().clone();
    // Q(y) = lc^(n-1) f(y / lc) is monic with integer coefficients
    let q: Vec<BigInt> = (0..=n)
        .map(|i| if i == n { BigInt::one() } else { &f[i] * num_traits::pow(lc.clone(), n - 1 - i) })
        .collect();
    let factors = zassenhaus(&q);
    factors
        .into_iter()
        .map(|g| {
            // g(lc * y), then make monic over Q
            let mut s = BigInt::one();
            let coeffs: Vec<Rational> = g
                .iter()
                .map(|c| {
                    let v = c * &s;
                    s *= &lc;
                    Rational::from_integer(v)
                })
                .collect();
            UniPoly::from_rationals(coeffs).monic()
        })
        .collect()
}

/// Clears denominators and content; returns primitive integer coefficients
/// with positive leading coefficient and the scale applied.
fn to_primitive_integer(p: &UniPoly) -> (Vec<BigInt>, Rational) {
    let r = p.to_rationals().unwrap();
    let mut den = BigInt::one();
    for c in &r {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = r.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    let prim = ints.iter().map(|c| c / &g).collect();
    (prim, Rational::new(den, g))
}

// ---- integer polynomial helpers (ascending) ----

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn ztrim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.len() > 1 && a.last().unwrap().is_zero() {
        a.pop();
    }
    a
}

/// Exact division of integer polynomials by a monic divisor.
fn zdiv_monic(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
    }
    if r[..db].iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn modm(c: &BigInt, m: &BigInt) -> BigInt {
    c.mod_floor(m)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zmod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    ztrim(a.iter().map(|c| modm(c, m)).collect())
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect()
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    let mut r = zmod(a, m);
    if r.len() <= db {
        return (vec![BigInt::zero()], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = modm(&r[k + db], m);
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = modm(&(&r[k + i] - &c * bc), m);
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    (ztrim(q), zmod(&r, m))
}

// ---- polynomials modulo a word-size prime ----

type Fp = Vec<u64>;

fn ptrim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pinv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn pmul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ptrim(out)
}

fn psub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    ptrim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn pdivrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    let inv = pinv(*b.last().unwrap(), p);
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (i, &bc) in b.iter().enumerate() {
            r[k + i] = (r[k + i] + p - c * bc % p) % p;
        }
        q[k] = c;
    }
    r.truncate(db);
    (ptrim(q), ptrim(r))
}

fn pmonic(a: &Fp, p: u64) -> Fp {
    let inv = pinv(*a.last().unwrap(), p);
    a.iter().map(|c| c * inv % p).collect()
}

fn pgcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = pdivrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        pmonic(&a, p)
    }
}

fn pderiv(a: &Fp, p: u64) -> Fp {
    ptrim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

fn ppowmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let b = pdivrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        r = pdivrem(&pmul(&r, &r, p), m, p).1;
        if e.bit(i) {
            r = pdivrem(&pmul(&r, &b, p), m, p).1;
        }
    }
    r
}

/// Extended Euclid: `s a + t b = 1 (mod p)` for coprime `a`, `b`.
fn pxgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = pinv(r0[0], p);
    (
        s0.iter().map(|c| c * inv % p).collect(),
        t0.iter().map(|c| c * inv % p).collect(),
    )
}

/// Monic squarefree input; monic irreducible factors modulo `p`.
fn cantor_zassenhaus(f: &Fp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    let pb = BigUint::from(p);
    while f.len() > 2 * d {
        h = ppowmod(&h, &pb, &f, p);
        let g = pgcd(&psub(&h, &x, p), &f, p);
        if g.len() > 1 {
            equal_degree(&g, d, p, rng, &mut out);
            f = pdivrem(&f, &g, p).0;
            h = pdivrem(&h, &f, p).1;
        }
        d += 1;
    }
    if f.len() > 1 {
        out.push(pmonic(&f, p));
    }
    out
}

fn equal_degree(g: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.clone());
        return;
    }
    let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: Fp = ptrim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = psub(&ppowmod(&a, &e, g, p), &vec![1], p);
        let c = pgcd(&b, g, p);
        if c.len() > 1 && c.len() < g.len() {
            let rest = pdivrem(g, &c, p).0;
            equal_degree(&c, d, p, rng, out);
            equal_degree(&pmonic(&rest, p), d, p, rng, out);
            return;
        }
    }
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..2000).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn to_fp(a: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    ptrim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_fp(a: &Fp) -> Vec<BigInt> {
    if a.is_empty() {
        return vec![BigInt::zero()];
    }
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: `f = g h (mod m)`, `s g + t h = 1 (mod m)`,
/// `h` monic; returns the same data modulo `m^2`.
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_mod(&zmul(s, &e), h, &m2);
    let g1 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h1 = zmod(&zadd(h, &r), &m2);
    let b = zmod(&zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &[BigInt::one()]), &m2);
    let (c, d) = zdivrem_mod(&zmul(s, &b), &h1, &m2);
    let s1 = zmod(&zsub(s, &d), &m2);
    let t1 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lift the factorization `f = prod(factors) (mod p)` of a monic `f` to
/// modulus `modulus = p^(2^k)`.
fn multi_lift(f: &[BigInt], factors: &[Fp], p: u64, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![zmod(f, modulus)];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[Fp]| fs.iter().fold(vec![1u64], |acc, x| pmul(&acc, x, p));
    let gp = prod(&factors[..mid]);
    let hp = prod(&factors[mid..]);
    let (sp, tp) = pxgcd(&gp, &hp, p);
    let (mut g, mut h, mut s, mut t) = (from_fp(&gp), from_fp(&hp), from_fp(&sp), from_fp(&tp));
    let mut m = BigInt::from(p);
    while &m < modulus {
        let next = hensel_step(f, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
    }
    // g stays monic as f and h are monic
    let mut out = multi_lift(&g, &factors[..mid], p, modulus);
    out.extend(multi_lift(&h, &factors[mid..], p, modulus));
    out
}

fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm = f.iter().map(|c| c.abs()).max().unwrap();
    // 2^n * sqrt(n+1) * max|c| <= 2^n * (n+1) * max|c|
    (BigInt::one() << n) * BigInt::from(n + 1) * norm
}

/// Factor a monic squarefree integer polynomial over Z.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        let fp = to_fp(f, p);
        if fp.len() != f.len() {
            continue;
        }
        if pgcd(&fp, &pderiv(&fp, p), p).len() != 1 {
            continue;
        }
        let fs = cantor_zassenhaus(&fp, p, &mut rng);
        if fs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|b| fs.len() < b.1.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 4 {
            break;
        }
    }
    let (p, fs) = best.expect("some prime keeps the polynomial squarefree");
    let bound = mignotte_bound(f) * 2 + 1;
    let mut modulus = BigInt::from(p);
    while modulus < bound {
        modulus = &modulus * &modulus;
    }
    let mut lifted = multi_lift(f, &fs, p, &modulus);
    // recombination by trial division
    let mut rest = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), size) {
            let mut cand = vec![BigInt::one()];
            for &i in &subset {
                cand = zmod(&zmul(&cand, &lifted[i]), &modulus);
            }
            let cand: Vec<BigInt> = ztrim(cand.iter().map(|c| symmetric(c, &modulus)).collect());
            if let Some(q) = zdiv_monic(&rest, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        found.push(rest);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Rational roots of a rational polynomial (without multiplicity).
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    factor_rational(p)
        .into_iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, _)| -f.coeff(0).as_rational().unwrap().clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn product(fs: &[(UniPoly, u32)]) -> UniPoly {
        fs.iter().fold(up(&[1]), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    #[test]
    fn factors_products_of_known_pieces() {
        // (z^2+1)(z-3)^2(z^4-2)(2z+1)
        let p = up(&[1, 0, 1]).mul(&up(&[-3, 1]).pow(2)).mul(&up(&[-2, 0, 0, 0, 1])).mul(&up(&[1, 2]));
        let f = factor_rational(&p);
        assert_eq!(f.len(), 4);
        assert_eq!(product(&f), p.monic());
        assert!(f.iter().any(|(g, m)| *m == 2 && *g == up(&[-3, 1])));
        assert!(f.iter().any(|(g, _)| g.degree() == Some(4)));
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // z^4 - 10 z^2 + 1 is irreducible but splits modulo every prime
        assert!(is_irreducible(&up(&[1, 0, -10, 0, 1])));
        assert!(!is_irreducible(&up(&[-1, 0, 1])));
        assert!(is_irreducible(&up(&[-2, 0, 1])));
    }

    #[test]
    fn cyclotomic_split() {
        // z^6 - 1 = (z-1)(z+1)(z^2+z+1)(z^2-z+1)
        let f = factor_rational(&up(&[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(f.len(), 4);
        assert_eq!(rational_roots(&up(&[-1, 0, 0, 0, 0, 0, 1])).len(), 2);
    }
}
