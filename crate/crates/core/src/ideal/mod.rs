//! Groebner bases, saturation and the fiber of a direction map over the
//! origin. Used as an independent check of the thick/thin decision.

pub mod groebner;

pub use groebner::{groebner_basis, groebner_basis_with_budget, IdealBasis, MonomialOrder, DEFAULT_BUDGET};

use crate::algebra::field::FieldElement;
use crate::algebra::poly::{Poly, T, W, X, Y};
use crate::error::{Error, Result};
use crate::puiseux::Ratio;

/// `(gens) : p^oo`, by adjoining `w` with `1 - w p` and eliminating `w`.
/// The generators must not involve `w`.
pub fn saturate(gens: &[Poly], p: &Poly) -> Result<IdealBasis> {
    let mut g: Vec<Poly> = gens.to_vec();
    g.push(&Poly::one() - &(&Poly::var(W) * p));
    let b = groebner_basis(&g, MonomialOrder::eliminating(&[W]))?;
    groebner_basis(&b.without(&[W]), MonomialOrder::Grlex)
}

/// Dimension of the fiber over the source origin of the closure of the
/// graph of `[a : b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberDim {
    /// A single point of the exceptional line.
    Zero(Ratio),
    /// The whole line.
    One,
}

/// What one affine chart of the line sees over the origin.
enum ChartFiber {
    Empty,
    Everything,
    Root(FieldElement),
}

/// `(p) : q^oo` for a principal ideal: `p` with every factor it shares
/// with `q` divided out.
pub fn saturate_principal(p: &Poly, q: &Poly) -> Result<Poly> {
    let mut p = p.clone();
    loop {
        let g = crate::algebra::poly_gcd(&p, q)?;
        if g.is_constant() {
            return Ok(p);
        }
        p = p.exact_div(&g).ok_or_else(|| Error::InternalDisagreement("gcd does not divide".into()))?;
    }
}

/// Graph ideal `(num - t den) : den^oo + (x, y)`, eliminated to `k[t]`.
fn chart_fiber(num: &Poly, den: &Poly) -> Result<ChartFiber> {
    let mut g = vec![saturate_principal(&(num - &(&Poly::var(T) * den)), den)?];
    g.push(Poly::var(X));
    g.push(Poly::var(Y));
    let b = groebner_basis(&g, MonomialOrder::eliminating(&[X, Y]))?;
    let elim = b.without(&[X, Y]);
    if elim.is_empty() {
        return Ok(ChartFiber::Everything);
    }
    if b.is_unit() {
        return Ok(ChartFiber::Empty);
    }
    // a nonzero ideal of k[t] has a single reduced generator
    let u = elim[0].to_univariate(T).ok_or_else(|| Error::InternalDisagreement("elimination left other variables".into()))?;
    let u = u.squarefree_part();
    if u.degree() != Some(1) {
        return Err(Error::InternalDisagreement(format!("fiber over the origin is not one point: {}", u)));
    }
    Ok(ChartFiber::Root(-&(&u.coeff(0) / &u.coeff(1))))
}

/// Decides thick (dimension 1) against thin (a single point) for a
/// coprime direction pair, from both orientations of the graph ideal.
/// Inconsistent orientations are an error.
pub fn exceptional_fiber_dim(a: &Poly, b: &Poly) -> Result<FiberDim> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    a.check_compatible(b)?;
    let fwd = chart_fiber(a, b)?;
    let back = chart_fiber(b, a)?;
    let disagree = |what: &str| Err(Error::InternalDisagreement(format!("fiber orientations disagree for [{} : {}]: {}", a, b, what)));
    match (fwd, back) {
        (ChartFiber::Everything, ChartFiber::Everything) => Ok(FiberDim::One),
        (ChartFiber::Everything, _) | (_, ChartFiber::Everything) => disagree("one chart sees a line"),
        (ChartFiber::Empty, ChartFiber::Empty) => disagree("both charts are empty"),
        (ChartFiber::Root(t), ChartFiber::Empty) => {
            if t.is_zero() {
                Ok(FiberDim::Zero(Ratio::Finite(t)))
            } else {
                disagree("point missing from the second chart")
            }
        }
        (ChartFiber::Empty, ChartFiber::Root(s)) => {
            if s.is_zero() {
                Ok(FiberDim::Zero(Ratio::Infinity))
            } else {
                disagree("point missing from the first chart")
            }
        }
        (ChartFiber::Root(t), ChartFiber::Root(s)) => {
            if (&t * &s).is_one() {
                Ok(FiberDim::Zero(Ratio::Finite(t)))
            } else {
                disagree("charts give different points")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn saturation_examples() {
        let one = Poly::one();
        let s = saturate(&[&v(X) * &(&v(T) - &one)], &v(X)).unwrap();
        assert_eq!(s.gens(), &[&v(T) - &one]);
        let g = &v(Y) - &(&v(T) * &v(X));
        let s = saturate(std::slice::from_ref(&g), &v(X)).unwrap();
        assert_eq!(s.gens(), &[g.monic()]);
        // x is a zero divisor modulo (x^2, xy) and x * x = x^2 lies in it
        let s = saturate(&[v(X).pow(2), &v(X) * &v(Y)], &v(X)).unwrap();
        assert!(s.is_unit());
    }

    #[test]
    fn principal_saturation_matches() {
        let one = Poly::one();
        let cases = [
            (&v(X) * &(&v(T) - &one), v(X)),
            (&v(Y) - &(&v(T) * &v(X)), v(X)),
            (&v(X).pow(3) * &(&v(Y) - &v(T)), &v(X) * &(&v(Y) + &one)),
            (&(&v(X) + &v(Y)).pow(2) * &(&v(X) - &(&v(T) * &v(Y))), &v(Y) * &(&v(X) + &v(Y))),
        ];
        for (p, q) in &cases {
            let fast = saturate_principal(p, q).unwrap();
            let slow = saturate(std::slice::from_ref(p), q).unwrap();
            assert_eq!(slow.gens(), &[fast.monic()], "{} : {}", p, q);
        }
    }

    #[test]
    fn fiber_examples() {
        assert_eq!(exceptional_fiber_dim(&v(Y), &v(X)).unwrap(), FiberDim::One);
        assert_eq!(exceptional_fiber_dim(&Poly::one(), &v(X).pow(3)).unwrap(), FiberDim::Zero(Ratio::Infinity));
        assert_eq!(
            exceptional_fiber_dim(&v(X), &Poly::one()).unwrap(),
            FiberDim::Zero(Ratio::Finite(FieldElement::zero()))
        );
        let two_plus_x = &Poly::int(2) + &v(X);
        assert_eq!(
            exceptional_fiber_dim(&two_plus_x, &(&Poly::one() - &v(Y))).unwrap(),
            FiberDim::Zero(Ratio::Finite(FieldElement::from(2)))
        );
    }
}
