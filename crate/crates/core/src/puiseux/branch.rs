//! Analytic branches through the origin with cached parametrizations.

use std::fmt;
use std::sync::{Arc, RwLock};

use super::newton::Expansion;
use super::series::{compose_xy, Series, EXACT};
use crate::algebra::field::{FieldElement, NumberField};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// Largest series precision a branch will ever be expanded to.
pub const PRECISION_CAP: usize = 1 << 12;

#[derive(Clone, Debug)]
enum Param {
    /// `(0, t)`.
    YAxis,
    /// `(c t^e, y(t))` from a Newton-Puiseux expansion; `(t, 0)` is the
    /// x-axis.
    Puiseux { c: FieldElement, e: u32, expansion: Expansion },
}

/// A branch (or one representative of a Galois orbit of conjugate
/// branches) of a curve through the origin, tagged with the irreducible
/// factor it lies on.
pub struct Branch {
    psi: Poly,
    orbit: usize,
    param: Param,
    y_cache: RwLock<Option<Series>>,
}

impl fmt::Debug for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Branch[{}] on {}: {}", self.orbit, self.psi, self.describe(8))
    }
}

impl Branch {
    pub(crate) fn y_axis(psi: Poly, orbit: usize) -> Self {
        Branch { psi, orbit, param: Param::YAxis, y_cache: RwLock::new(None) }
    }

    pub(crate) fn from_expansion(expansion: Expansion, psi: Poly, orbit: usize) -> Self {
        let (c, e) = expansion.x_monomial();
        Branch { psi, orbit, param: Param::Puiseux { c, e, expansion }, y_cache: RwLock::new(None) }
    }

    pub(crate) fn with_orbit(&self, orbit: usize) -> Self {
        Branch {
            psi: self.psi.clone(),
            orbit,
            param: self.param.clone(),
            y_cache: RwLock::new(self.y_cache.read().unwrap().clone()),
        }
    }

    /// Defining irreducible factor.
    pub fn psi(&self) -> &Poly {
        &self.psi
    }

    pub fn orbit(&self) -> usize {
        self.orbit
    }

    /// Ramification index `e`.
    pub fn ramification(&self) -> u32 {
        match &self.param {
            Param::YAxis => 1,
            Param::Puiseux { e, .. } => *e,
        }
    }

    /// Coefficient field of the parametrization.
    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match &self.param {
            Param::YAxis => None,
            Param::Puiseux { expansion, .. } => expansion.field.as_ref(),
        }
    }

    /// Number of conjugate branches this representative stands for.
    pub fn orbit_size(&self) -> usize {
        self.field().map(|k| k.degree()).unwrap_or(1)
    }

    /// Divisibility by `psi` decides vanishing on the branch when `psi`
    /// stays irreducible over the coefficients of `p`.
    fn exact_division_decides(&self, p: &Poly) -> bool {
        self.psi.is_rational() && (p.is_rational() || self.psi.total_degree() == 1)
    }

    pub fn x_series(&self) -> Series {
        match &self.param {
            Param::YAxis => Series::zero(EXACT),
            Param::Puiseux { c, e, .. } => Series::monomial(c.clone(), *e as usize),
        }
    }

    /// `y(t)` modulo `t^n` (or exactly when the expansion terminates).
    pub fn y_series(&self, n: usize) -> Series {
        let expansion = match &self.param {
            Param::YAxis => return Series::monomial(FieldElement::one(), 1),
            Param::Puiseux { expansion, .. } => expansion,
        };
        if let Some(s) = self.y_cache.read().unwrap().as_ref() {
            if s.prec() >= n {
                return if s.is_exact() { s.clone() } else { s.truncate(n) };
            }
        }
        // refresh in doubling steps so repeated requests amortize
        let mut target = self.y_cache.read().unwrap().as_ref().map(|s| s.prec()).unwrap_or(8).max(8);
        while target < n {
            target *= 2;
        }
        let s = expansion.y_series(target);
        *self.y_cache.write().unwrap() = Some(s.clone());
        if s.is_exact() {
            s
        } else {
            s.truncate(n)
        }
    }

    /// Intersection-multiplicity bound: a polynomial of degree `d` that
    /// vanishes on the branch to order at least `d * deg(psi) * e + 1`
    /// vanishes identically on it.
    pub fn threshold(&self, p: &Poly) -> usize {
        p.total_degree() as usize * self.psi.total_degree() as usize * self.ramification() as usize + 1
    }

    /// `p(x(t), y(t))` modulo `t^n`.
    pub fn compose(&self, p: &Poly, n: usize) -> Result<Series> {
        if n > PRECISION_CAP {
            return Err(Error::PrecisionExhausted { needed: n, cap: PRECISION_CAP });
        }
        Ok(compose_xy(p, &self.x_series(), &self.y_series(n), n))
    }

    /// Whether `p` vanishes identically on the branch.
    pub fn certified_zero(&self, p: &Poly) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        if p.is_constant() {
            return Ok(false);
        }
        if self.exact_division_decides(p) {
            return Ok(self.psi.divides(p));
        }
        Ok(self.order_of(p)?.is_none())
    }

    /// `ord_t p(x(t), y(t))`, `None` when `p` vanishes on the branch.
    pub fn order_of(&self, p: &Poly) -> Result<Option<usize>> {
        let limit = self.threshold(p);
        let mut n = 16usize.min(limit);
        loop {
            let s = self.compose(p, n)?;
            if let Some(k) = s.order() {
                return Ok(Some(k));
            }
            if n >= limit || s.is_exact() {
                return Ok(None);
            }
            n = (2 * n).min(limit);
        }
    }

    /// Order along the branch component of `p`: the least `k` with some
    /// `k`-th partial derivative not vanishing on the branch.
    pub fn multiplicity_of(&self, p: &Poly) -> Result<u32> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.exact_division_decides(p) {
            return Ok(crate::algebra::ratfunc::poly_multiplicity(p, &self.psi));
        }
        let mut layer = vec![p.clone()];
        let mut k = 0;
        loop {
            let mut all_zero = true;
            for d in &layer {
                if !self.certified_zero(d)? {
                    all_zero = false;
                    break;
                }
            }
            if !all_zero {
                return Ok(k);
            }
            let mut next: Vec<Poly> = Vec::new();
            for d in &layer {
                for v in [0, 1] {
                    let dv = d.derivative(v);
                    if !dv.is_zero() && !next.contains(&dv) {
                        next.push(dv);
                    }
                }
            }
            layer = next;
            k += 1;
        }
    }

    /// Printable parametrization with `terms` coefficients of `y`.
    pub fn describe(&self, terms: usize) -> String {
        let x = self.x_series();
        let y = self.y_series(terms.max(1));
        format!("({}, {})", x, y)
    }
}

/// Projective constant `[a:b]` with `b s1 = a s2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ratio {
    /// `[c : 1]`.
    Finite(FieldElement),
    /// `[1 : 0]`.
    Infinity,
}

/// Whether the pair of series is proportional to a constant (to the known
/// precision). Both zero is an error.
pub fn proportional(s1: &Series, s2: &Series) -> Result<Option<Ratio>> {
    match (s1.leading(), s2.leading()) {
        (None, None) => Err(Error::DegenerateComparison),
        (Some(_), None) => Ok(Some(Ratio::Infinity)),
        (None, Some(_)) => Ok(Some(Ratio::Finite(FieldElement::zero()))),
        (Some((k1, c1)), Some((k2, c2))) => {
            if k1 != k2 {
                return Ok(None);
            }
            let c = &c1 / &c2;
            let diff = s1.sub(&s2.scale(&c));
            Ok(if diff.is_zero() { Some(Ratio::Finite(c)) } else { None })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], prec: usize) -> Series {
        Series::new(c.iter().map(|&n| FieldElement::from(n)).collect(), prec)
    }

    #[test]
    fn proportional_examples() {
        assert_eq!(proportional(&s(&[0, 1], 10), &s(&[1], 10)).unwrap(), None);
        assert_eq!(
            proportional(&s(&[], 10), &s(&[1], 10)).unwrap(),
            Some(Ratio::Finite(FieldElement::zero()))
        );
        assert_eq!(
            proportional(&s(&[0, 0, 2], 10), &s(&[0, 0, 1], 10)).unwrap(),
            Some(Ratio::Finite(FieldElement::from(2)))
        );
        assert_eq!(proportional(&s(&[], 10), &s(&[], 10)), Err(Error::DegenerateComparison));
    }
}
