//! Map germs `F = (f, g)` and the coarse classification of their images.

use std::fmt;

use crate::algebra::factor::{factor_local, integer_normalize, squarefree_part};
use crate::algebra::field::FieldElement;
use crate::algebra::gcd::{content_in, gcd_unchecked};
use crate::algebra::poly::{jacobian_det, Poly, T, W, X, Y};
use crate::algebra::resultant::resultant;
use crate::error::{Error, Result};
use crate::tree::{build_tree, BlossomTree, BuildOptions};

/// `F = (f, g)` with `f(0,0) = g(0,0) = 0`, polynomials in `x, y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapPair {
    pub f: Poly,
    pub g: Poly,
}

impl fmt::Display for MapPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.g)
    }
}

impl MapPair {
    pub fn new(f: Poly, g: Poly) -> Result<Self> {
        for p in [&f, &g] {
            if p.involves(T) || p.involves(W) {
                return Err(Error::InvalidGerm(format!("{} involves variables other than x, y", p)));
            }
            if !p.constant_term().is_zero() {
                return Err(Error::InvalidGerm(format!("{} does not vanish at the origin", p)));
            }
        }
        f.check_compatible(&g)?;
        Ok(MapPair { f, g })
    }

    pub fn is_constant(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    /// `F(a, b)`.
    pub fn eval(&self, a: &FieldElement, b: &FieldElement) -> (FieldElement, FieldElement) {
        let pt = [a.clone(), b.clone()];
        (self.f.eval(&pt), self.g.eval(&pt))
    }

    /// `F o delta` for a curve `delta(t) = (p(t), q(t))`, with `t` stored as `x`.
    pub fn compose_curve(&self, p: &Poly, q: &Poly) -> (Poly, Poly) {
        let subs = [p.clone(), q.clone()];
        (self.f.substitute(&subs), self.g.substitute(&subs))
    }
}

/// Verdict before any blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preliminary {
    Constant,
    CurveImage,
    Open,
    NeedsTree,
}

pub fn classify_preliminary(m: &MapPair) -> Preliminary {
    if m.is_constant() {
        return Preliminary::Constant;
    }
    if jacobian_det(&m.f, &m.g).is_zero() {
        return Preliminary::CurveImage;
    }
    // fiber over 0 is isolated iff the common factor is a unit at the origin
    if gcd_unchecked(&m.f, &m.g).vanishes_at_origin() {
        Preliminary::NeedsTree
    } else {
        Preliminary::Open
    }
}

/// Final verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum GermClass {
    Constant,
    Open,
    /// Reduced equation in the target coordinates, printed with `u, v`.
    CurveImage(Poly),
    NotWellDefined(BlossomTree),
}

impl GermClass {
    pub fn name(&self) -> &'static str {
        match self {
            GermClass::Constant => "Constant",
            GermClass::Open => "Open",
            GermClass::CurveImage(_) => "CurveImage",
            GermClass::NotWellDefined(_) => "NotWellDefined",
        }
    }
}

pub fn classify(m: &MapPair) -> Result<GermClass> {
    classify_with(m, &BuildOptions::default())
}

pub fn classify_with(m: &MapPair, opts: &BuildOptions) -> Result<GermClass> {
    Ok(match classify_preliminary(m) {
        Preliminary::Constant => GermClass::Constant,
        Preliminary::Open => GermClass::Open,
        Preliminary::CurveImage => GermClass::CurveImage(image_curve_equation(m)?),
        Preliminary::NeedsTree => {
            let built = build_tree(m, opts)?;
            if built.root_pruned {
                // a thick first divisor without undetermined points: every
                // direction is attained
                GermClass::Open
            } else {
                GermClass::NotWellDefined(built.tree)
            }
        }
    })
}

/// Rational sample points used to discard extraneous elimination factors.
fn sample_grid() -> Vec<(FieldElement, FieldElement)> {
    let vals = [-2i64, -1, 1, 2, 3];
    let mut out = Vec::new();
    for &a in &vals {
        for &b in &vals {
            out.push((FieldElement::from(a), FieldElement::from(b)));
        }
    }
    out
}

/// Reduced equation `C(u, v)` of the image curve when `Jac(f, g) = 0`.
/// `u` and `v` are stored as the variables `x` and `y`.
pub fn image_curve_equation(m: &MapPair) -> Result<Poly> {
    if m.is_constant() {
        return Err(Error::InvalidGerm("constant map has no image curve".into()));
    }
    if !jacobian_det(&m.f, &m.g).is_zero() {
        return Err(Error::InvalidGerm("Jacobian does not vanish identically".into()));
    }
    if m.f.is_zero() {
        return Ok(Poly::x());
    }
    if m.g.is_zero() {
        return Ok(Poly::y());
    }
    let (f, g) = if m.f.involves(X) || m.g.involves(X) {
        (m.f.clone(), m.g.clone())
    } else {
        (m.f.swap_vars(X, Y), m.g.swap_vars(X, Y))
    };
    // both components involve x now; a single one would force the other
    // to be constant, hence zero
    let r = resultant(&(&f - &Poly::var(T)), &(&g - &Poly::var(W)), X)?;
    // every specialization y = y0 vanishes on the image, so the image curve
    // divides the content with respect to y
    let c = content_in(&r, Y);
    let c = c.substitute(&[Poly::zero(), Poly::zero(), Poly::x(), Poly::y()]);
    if c.is_constant() {
        return Err(Error::InternalDisagreement(format!("elimination left no image equation for {}", m)));
    }
    let c = squarefree_part(&c)?;
    let images: Vec<[FieldElement; 2]> = sample_grid()
        .iter()
        .map(|(a, b)| {
            let (u, v) = m.eval(a, b);
            [u, v]
        })
        .collect();
    let mut eq = Poly::one();
    for (psi, _) in factor_local(&c)? {
        if images.iter().all(|p| psi.eval(p).is_zero()) {
            eq = &eq * &psi;
        }
    }
    if eq.is_constant() {
        return Err(Error::InternalDisagreement(format!("all elimination factors for {} are extraneous", m)));
    }
    Ok(integer_normalize(&eq))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(f: Poly, g: Poly) -> MapPair {
        MapPair::new(f, g).unwrap()
    }

    #[test]
    fn preliminary_examples() {
        let x = Poly::x();
        let y = Poly::y();
        let s = &x + &y;
        assert_eq!(classify_preliminary(&pair(Poly::zero(), Poly::zero())), Preliminary::Constant);
        assert_eq!(classify_preliminary(&pair(s.pow(2), s.pow(3))), Preliminary::CurveImage);
        assert_eq!(classify_preliminary(&pair(x.clone(), y.clone())), Preliminary::Open);
        assert_eq!(classify_preliminary(&pair(&x * &y, y.clone())), Preliminary::NeedsTree);
    }

    #[test]
    fn image_curves() {
        let x = Poly::x();
        let y = Poly::y();
        let s = &x + &y;
        // v^2 - u^3, normalized with positive leading coefficient
        let cusp = &Poly::xy(1, 3, 0) - &Poly::xy(1, 0, 2);
        assert_eq!(image_curve_equation(&pair(s.pow(2), s.pow(3))).unwrap(), cusp);
        assert_eq!(image_curve_equation(&pair(s.clone(), s.clone())).unwrap(), &x - &y);
        assert_eq!(image_curve_equation(&pair(x.pow(2), x.pow(4))).unwrap(), &x.pow(2) - &y);
        assert_eq!(image_curve_equation(&pair(y.pow(2), Poly::zero())).unwrap(), y);
    }

    #[test]
    fn rejects_non_germs() {
        assert!(MapPair::new(&Poly::x() + &Poly::int(1), Poly::y()).is_err());
    }
}
