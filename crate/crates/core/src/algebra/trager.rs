//! Factorization over a simple extension `Q(a)` by the norm method.

use std::sync::Arc;

use super::factor_q::{factor_rational, yun};
use super::field::{FieldElement, NumberField};
use super::poly::{Poly, X, Y};
use super::resultant::resultant;
use super::upoly::UniPoly;

/// Monic irreducible factors with multiplicities over the coefficient field
/// of `p` (the rationals, or the single extension its coefficients use).
pub fn factor_over_field(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    factor_in(p, p.field().as_ref())
}

/// Factorization over `Q` (`None`) or over `k`, which must contain the
/// coefficients of `p`.
pub fn factor_in(p: &UniPoly, k: Option<&Arc<NumberField>>) -> Vec<(UniPoly, u32)> {
    let Some(k) = k else {
        return factor_rational(p);
    };
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    for (sqf, mult) in yun(&p.monic()) {
        for f in factor_squarefree(&sqf, k) {
            out.push((f, mult));
        }
    }
    out.sort_by_key(|a| a.0.degree());
    out
}

/// Roots in the coefficient field, with multiplicity, and the remaining
/// irreducible factors of degree above one.
pub fn roots_in_field(p: &UniPoly) -> (Vec<(FieldElement, u32)>, Vec<(UniPoly, u32)>) {
    roots_in(p, p.field().as_ref())
}

#[allow(clippy::type_complexity)]
pub fn roots_in(p: &UniPoly, k: Option<&Arc<NumberField>>) -> (Vec<(FieldElement, u32)>, Vec<(UniPoly, u32)>) {
    let mut roots = Vec::new();
    let mut rest = Vec::new();
    for (f, m) in factor_in(p, k) {
        if f.degree() == Some(1) {
            roots.push((-f.coeff(0), m));
        } else {
            rest.push((f, m));
        }
    }
    roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    (roots, rest)
}

/// Coefficient `c_i = sum_k c_ik a^k` becomes the term `c_ik z^i y^k`.
fn lift_to_bivariate(p: &UniPoly) -> Poly {
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        match c {
            FieldElement::Rat(r) => terms.push(([i as u32, 0, 0, 0], FieldElement::Rat(r.clone()))),
            FieldElement::Ext(e) => {
                for (j, cj) in e.coeffs().iter().enumerate() {
                    terms.push(([i as u32, j as u32, 0, 0], FieldElement::Rat(cj.clone())));
                }
            }
        }
    }
    Poly::from_terms(terms)
}

fn factor_squarefree(p: &UniPoly, k: &Arc<NumberField>) -> Vec<UniPoly> {
    if p.degree().unwrap_or(0) <= 1 {
        return vec![p.monic()];
    }
    let m = Poly::from_univariate(Y, &UniPoly::from_rationals(k.minpoly().to_vec()));
    let alpha = k.generator();
    let z = Poly::var(X);
    let yv = Poly::var(Y);
    for s in shifts() {
        let shift = FieldElement::from(s);
        // P(z - s a) over K, and its bivariate image P^(z - s y, y)
        let lin = UniPoly::new(vec![-(&shift * &alpha), FieldElement::one()]);
        let ps = p.compose(&lin);
        let b = lift_to_bivariate(p);
        let bs = b.substitute(&[&z - &(&Poly::int(s) * &yv), yv.clone()]);
        let norm = resultant(&m, &bs, Y).expect("minimal polynomial involves y");
        let norm = norm.to_univariate(X).expect("norm is univariate");
        if !norm.is_squarefree() {
            continue;
        }
        let back = UniPoly::new(vec![&shift * &alpha, FieldElement::one()]);
        let mut out = Vec::new();
        for (q, _) in factor_rational(&norm) {
            let g = ps.gcd(&q);
            if g.degree().unwrap_or(0) > 0 {
                out.push(g.compose(&back).monic());
            }
        }
        return out;
    }
    unreachable!("some shift gives a squarefree norm")
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).flat_map(|n: i64| if n == 0 { vec![0] } else { vec![n, -n] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;

    #[test]
    fn splits_over_sqrt2() {
        let k = NumberField::new(vec![rat(-2), rat(0), rat(1)]).unwrap();
        let a = k.generator();
        // z^2 - 2 over Q(sqrt 2)
        // (z - 3a)(z^2 - 2)
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let q = UniPoly::new(vec![-(&a * &FieldElement::from(3)), FieldElement::one()]).mul(&p);
        let (roots, rest) = roots_in_field(&q);
        assert!(rest.is_empty());
        assert_eq!(roots.len(), 3);
        for (r, _) in &roots {
            assert!(q.eval(r).is_zero());
        }
    }

    #[test]
    fn irreducible_stays_whole() {
        let k = NumberField::new(vec![rat(-2), rat(0), rat(1)]).unwrap();
        let a = k.generator();
        // (z^2 - 3)(z - a): z^2 - 3 stays irreducible over Q(sqrt 2)
        let q = UniPoly::from_ints(&[-3, 0, 1]).mul(&UniPoly::new(vec![-a.clone(), FieldElement::one()]));
        let (roots, rest) = roots_in_field(&q);
        assert_eq!(roots, vec![(a, 1)]);
        assert_eq!(rest.len(), 1);
        assert_eq!(rest[0].0, UniPoly::from_ints(&[-3, 0, 1]));
    }
}
