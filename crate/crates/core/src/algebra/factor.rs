//! Squarefree parts and factorization at the origin.
//!
//! Local factors are found from Newton-Puiseux branches: for every branch
//! the least-degree polynomial vanishing on it is recovered by exact linear
//! algebra and then confirmed by exact division.

use std::sync::Arc;

use super::field::{FieldElement, NumberField, Rational};
use super::gcd::gcd_unchecked;
use super::linalg::nullspace;
use super::poly::{Mono, Poly, X, Y};
use super::ratfunc::poly_multiplicity;
use crate::error::{Error, Result};
use crate::puiseux::branch::Branch;
use crate::puiseux::newton::{expand, Expansion};
use crate::puiseux::series::{compose_xy, Series};

/// Product of the distinct irreducible factors, `p / gcd(p, p_x, p_y)`,
/// normalized as by [`integer_normalize`].
pub fn squarefree_part(p: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Poly::one());
    }
    let g = gcd_unchecked(&gcd_unchecked(p, &p.derivative(X)), &p.derivative(Y));
    Ok(integer_normalize(&p.exact_div(&g).expect("gcd divides")))
}

/// One irreducible factor through the origin with its branches there.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub psi: Poly,
    pub multiplicity: u32,
    pub branches: Vec<Arc<Branch>>,
}

/// `p = residual * prod psi_i^m_i` with `residual(0,0) != 0`.
#[derive(Debug, Clone)]
pub struct LocalFactorization {
    pub factors: Vec<LocalFactor>,
    pub residual: Poly,
}

/// Irreducible factors of `p` vanishing at the origin, with multiplicity.
pub fn factor_local(p: &Poly) -> Result<Vec<(Poly, u32)>> {
    Ok(factor_local_detailed(p)?
        .factors
        .into_iter()
        .map(|f| (f.psi, f.multiplicity))
        .collect())
}

/// Like [`factor_local`], keeping the branches of each factor.
pub fn factor_local_detailed(p: &Poly) -> Result<LocalFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = p.field();
    let mut h = squarefree_part(p)?;
    let mut found: Vec<(Poly, Vec<Branch>)> = Vec::new();
    let x = Poly::x();
    let y = Poly::y();
    if let Some(q) = h.exact_div(&x) {
        h = q;
        found.push((x.clone(), vec![Branch::y_axis(x.clone(), 0)]));
    }
    if h.vanishes_at_origin() && !h.is_zero() {
        for ex in expand(&h, field.as_ref())? {
            let psi = if ex_is_x_axis(&ex) { y.clone() } else { reconstruct(&ex, &h, field.as_ref())? };
            match found.iter_mut().find(|(f, _)| *f == psi) {
                Some((_, bs)) => bs.push(Branch::from_expansion(ex, psi.clone(), 0)),
                None => found.push((psi.clone(), vec![Branch::from_expansion(ex, psi, 0)])),
            }
        }
    }
    found.sort_by(|a, b| factor_order(&a.0, &b.0));
    let mut factors = Vec::new();
    let mut residual = p.clone();
    let mut orbit = 0;
    for (psi, bs) in found {
        let m = poly_multiplicity(p, &psi);
        if m == 0 {
            return Err(Error::InternalDisagreement(format!("reconstructed factor {} does not divide {}", psi, p)));
        }
        residual = residual.exact_div(&psi.pow(m)).expect("factor divides");
        let branches = bs
            .into_iter()
            .map(|b| {
                let b = b.with_orbit(orbit);
                orbit += 1;
                Arc::new(b)
            })
            .collect();
        factors.push(LocalFactor { psi, multiplicity: m, branches });
    }
    if residual.vanishes_at_origin() {
        return Err(Error::UnsupportedFactorization { residual: residual.to_string() });
    }
    Ok(LocalFactorization { factors, residual })
}

/// Deterministic order on factors: degree, then printed form.
pub(crate) fn factor_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.to_string().cmp(&b.to_string()))
}

fn ex_is_x_axis(ex: &Expansion) -> bool {
    ex.steps.is_empty() && matches!(ex.base, crate::puiseux::newton::Base::Zero)
}

/// Least-degree polynomial over the input's field vanishing on the branch,
/// confirmed to divide `h`.
fn reconstruct(ex: &Expansion, h: &Poly, field: Option<&Arc<NumberField>>) -> Result<Poly> {
    let (c, e) = ex.x_monomial();
    let xs = Series::monomial(c, e as usize);
    let deg_h = h.total_degree() as usize;
    // split coefficients into rational coordinates only when the branch
    // lives in an extension the input does not
    let split = field.is_none() && ex.field.is_some();
    for d in 1..=deg_h {
        let tn = d * deg_h * e as usize + 1;
        let ys = ex.y_series(tn);
        let monos: Vec<Mono> = (1..=d as u32)
            .flat_map(|s| (0..=s).map(move |j| [s - j, j, 0, 0]))
            .collect();
        let cols: Vec<Series> = monos
            .iter()
            .map(|m| compose_xy(&Poly::monomial(*m, FieldElement::one()), &xs, &ys, tn))
            .collect();
        let mut rows = Vec::new();
        for k in 0..tn {
            let entries: Vec<FieldElement> = cols.iter().map(|s| s.coeff(k)).collect();
            if split {
                let deg = ex.field.as_ref().unwrap().degree();
                for comp in 0..deg {
                    rows.push(entries.iter().map(|c| FieldElement::Rat(component(c, comp))).collect());
                }
            } else {
                rows.push(entries);
            }
        }
        let ns = nullspace(&rows, monos.len());
        if let Some(v) = ns.first() {
            let psi = Poly::from_terms(monos.iter().cloned().zip(v.iter().cloned()).collect()).monic();
            // clear the content so rational factors print with integer coefficients
            let psi = integer_normalize(&psi);
            if psi.divides(h) {
                return Ok(psi);
            }
            return Err(Error::UnsupportedFactorization { residual: h.to_string() });
        }
    }
    Err(Error::UnsupportedFactorization { residual: h.to_string() })
}

fn component(c: &FieldElement, i: usize) -> Rational {
    match c {
        FieldElement::Rat(r) => {
            if i == 0 {
                r.clone()
            } else {
                Rational::from_integer(0.into())
            }
        }
        FieldElement::Ext(e) => e.coeffs()[i].clone(),
    }
}

/// For rational polynomials: the primitive integer associate with positive
/// leading coefficient. Others are returned monic.
pub(crate) fn integer_normalize(p: &Poly) -> Poly {
    if !p.is_rational() || p.is_zero() {
        return p.monic();
    }
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let mut den = num_bigint::BigInt::one();
    let mut num = num_bigint::BigInt::zero();
    for (_, c) in p.terms() {
        let r = c.as_rational().unwrap();
        den = den.lcm(r.denom());
        num = num.gcd(r.numer());
    }
    let mut s = Rational::new(den, num);
    if p.lc().as_rational().unwrap().is_negative() {
        s = -s;
    }
    p.scale(&FieldElement::Rat(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        let x = Poly::x();
        let y = Poly::y();
        assert_eq!(squarefree_part(&Poly::xy(1, 2, 1)).unwrap(), Poly::xy(1, 1, 1));
        let c = &y - &(&x * &x);
        assert_eq!(squarefree_part(&c.pow(3)).unwrap(), -&c);
        assert_eq!(squarefree_part(&x).unwrap(), x);
        assert_eq!(squarefree_part(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn local_factor_examples() {
        let x = Poly::x();
        let y = Poly::y();
        assert_eq!(factor_local(&Poly::xy(1, 2, 1)).unwrap(), vec![(x.clone(), 2), (y.clone(), 1)]);
        assert_eq!(factor_local(&y).unwrap(), vec![(y.clone(), 1)]);
        // normalized with positive grlex leading coefficient: x^3 - y^2
        let cusp = &Poly::xy(1, 3, 0) - &Poly::xy(1, 0, 2);
        assert_eq!(factor_local(&(-&cusp)).unwrap(), vec![(cusp, 1)]);
    }

    #[test]
    fn drops_factors_away_from_origin() {
        let x = Poly::x();
        let y = Poly::y();
        let p = &(&(&x + &Poly::int(1)) * &(&y - &(&x * &x))) * &(&y - &x.pow(3)).pow(2);
        let f = factor_local(&p).unwrap();
        assert_eq!(f, vec![(&(&x * &x) - &y, 1), (&x.pow(3) - &y, 2)]);
    }

    #[test]
    fn conjugate_branches_share_a_factor() {
        // y^2 - 2x^2 is irreducible over Q with two branches over Q(sqrt 2)
        let p = &Poly::xy(1, 0, 2) - &Poly::xy(2, 2, 0);
        let d = factor_local_detailed(&p).unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].branches.len(), 1);
        assert_eq!(d.factors[0].branches[0].orbit_size(), 2);
        // y^2 - x^2 splits
        let q = &Poly::xy(1, 0, 2) - &Poly::xy(1, 2, 0);
        assert_eq!(factor_local(&q).unwrap().len(), 2);
    }
}
