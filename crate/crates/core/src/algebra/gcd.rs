//! Multivariate gcd by recursive primitive pseudo-remainder sequences.

use super::field::FieldElement;
use super::poly::{Poly, NVARS};
use crate::error::Result;

/// Highest-index variable occurring in either polynomial.
pub(crate) fn main_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..NVARS).rev().find(|&v| a.involves(v) || b.involves(v))
}

fn var_count(a: &Poly, b: &Poly) -> usize {
    (0..NVARS).filter(|&v| a.involves(v) || b.involves(v)).count()
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
pub(crate) fn prem(a: &Poly, b: &Poly, var: usize) -> Poly {
    let db = b.degree_in(var) as usize;
    let bc = b.coeffs_in(var);
    let lcb = bc[db].clone();
    let mut r = a.clone();
    let mut da = r.degree_in(var) as usize;
    if r.is_zero() || da < db {
        return r;
    }
    let mut steps = da - db + 1;
    while !r.is_zero() && da >= db {
        let rc = r.coeffs_in(var);
        let lead = &rc[da];
        let mut shift = [0u32; NVARS];
        shift[var] = (da - db) as u32;
        let sub = (lead * b).mul_mono(&shift, &FieldElement::one());
        r = &(&lcb * &r) - &sub;
        steps -= 1;
        if r.is_zero() {
            break;
        }
        da = r.degree_in(var) as usize;
    }
    if steps > 0 {
        r = &r * &lcb.pow(steps as u32);
    }
    r
}

/// Gcd of the coefficients with respect to `var`.
pub fn content_in(p: &Poly, var: usize) -> Poly {
    let mut g = Poly::zero();
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd_unchecked(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn primitive_part_in(p: &Poly, var: usize) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides")
}

/// Greatest common divisor, normalized so its grlex leading coefficient is
/// one. `gcd(0, b)` is the normalization of `b`; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.check_compatible(b)?;
    Ok(gcd_unchecked(a, b))
}

pub(crate) fn gcd_unchecked(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let var = main_var(a, b).unwrap();
    if var_count(a, b) == 1 {
        let ua = a.to_univariate(var).unwrap();
        let ub = b.to_univariate(var).unwrap();
        return Poly::from_univariate(var, &ua.gcd(&ub));
    }
    // split off the monomial gcd first; cheap and common
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mut mg = [0u32; NVARS];
    for i in 0..NVARS {
        mg[i] = ma[i].min(mb[i]);
    }
    if mg != [0; NVARS] {
        let g = gcd_unchecked(&a.div_mono(&mg), &b.div_mono(&mg));
        return g.mul_mono(&mg, &FieldElement::one()).monic();
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd_unchecked(&ca, &cb);
    let mut p0 = a.exact_div(&ca).unwrap();
    let mut p1 = b.exact_div(&cb).unwrap();
    if coprime_image(&p0, &p1, var) {
        return c.monic();
    }
    if p0.degree_in(var) < p1.degree_in(var) {
        std::mem::swap(&mut p0, &mut p1);
    }
    let g = loop {
        if p1.degree_in(var) == 0 {
            break if p1.is_zero() { p0 } else { Poly::one() };
        }
        let r = prem(&p0, &p1, var);
        if r.is_zero() {
            break p1;
        }
        if r.degree_in(var) == 0 {
            break Poly::one();
        }
        p0 = p1;
        p1 = primitive_part_in(&r, var);
    };
    let g = primitive_part_in(&g, var);
    (&c * &g).monic()
}

/// Whether one specialization of the other variables, keeping both leading
/// coefficients in `var` nonzero, has a constant gcd. A gcd of positive
/// degree in `var` would survive every such specialization.
fn coprime_image(a: &Poly, b: &Poly, var: usize) -> bool {
    if a.degree_in(var) == 0 || b.degree_in(var) == 0 {
        return false;
    }
    let (la, lb) = (a.coeffs_in(var).pop().unwrap(), b.coeffs_in(var).pop().unwrap());
    // small points can share a root by accident; any constant image decides
    let mut tries = 0;
    for r in 1..=12i64 {
        let mut point: Vec<Poly> = (0..NVARS).map(|v| Poly::int((r + 3 * v as i64) * if r % 2 == 0 { -1 } else { 1 })).collect();
        point[var] = Poly::var(var);
        if la.substitute(&point).is_zero() || lb.substitute(&point).is_zero() {
            continue;
        }
        let (ua, ub) = (a.substitute(&point).to_univariate(var).unwrap(), b.substitute(&point).to_univariate(var).unwrap());
        if ua.gcd(&ub).degree() == Some(0) {
            return true;
        }
        tries += 1;
        if tries == 3 {
            break;
        }
    }
    false
}

/// Gcd of a list; zero for an empty list.
pub fn gcd_many<'a>(ps: impl IntoIterator<Item = &'a Poly>) -> Poly {
    let mut g = Poly::zero();
    for p in ps {
        g = gcd_unchecked(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let x = Poly::x();
        let y = Poly::y();
        assert_eq!(poly_gcd(&Poly::xy(1, 3, 3), &Poly::xy(1, 2, 1)).unwrap(), Poly::xy(1, 2, 1));
        assert!(poly_gcd(&x, &y).unwrap().is_one());
        let d = &(&x * &x) - &(&y * &y);
        assert_eq!(poly_gcd(&d, &(&x - &y)).unwrap(), &x - &y);
        assert_eq!(poly_gcd(&Poly::zero(), &Poly::xy(3, 1, 0)).unwrap(), x);
    }

    #[test]
    fn nontrivial_bivariate() {
        let x = Poly::x();
        let y = Poly::y();
        let c = &(&y * &y) - &x.pow(3);
        let a = &c * &(&x + &Poly::int(1));
        let b = &c * &(&y - &(&x * &x));
        assert_eq!(poly_gcd(&a, &b).unwrap(), c.monic());
    }
}
