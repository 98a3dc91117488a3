//! Truncated power series in one parameter.

use std::fmt;

use crate::algebra::field::FieldElement;
use crate::algebra::poly::{Poly, X, Y};

/// Precision marker for series known exactly.
pub const EXACT: usize = usize::MAX;

/// `sum c_k t^k`, known modulo `t^prec`. Coefficients at or above `prec`
/// are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<FieldElement>,
    prec: usize,
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = match c.as_rational() {
                Some(_) => c.to_string(),
                None => format!("({})", c),
            };
            parts.push(match k {
                0 => cs,
                1 if c.is_one() => "t".to_string(),
                1 => format!("{}*t", cs),
                _ if c.is_one() => format!("t^{}", k),
                _ => format!("{}*t^{}", cs, k),
            });
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if self.prec == EXACT {
            write!(f, "{}", body)
        } else {
            write!(f, "{} + O(t^{})", body, self.prec)
        }
    }
}

impl Series {
    pub fn new(mut coeffs: Vec<FieldElement>, prec: usize) -> Self {
        if coeffs.len() > prec {
            coeffs.truncate(prec);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Series { coeffs, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Series { coeffs: Vec::new(), prec }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c], EXACT)
    }

    /// `c t^k`, exact.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let mut v = vec![FieldElement::zero(); k];
        v.push(c);
        Self::new(v, EXACT)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(FieldElement::zero)
    }

    /// Index of the first nonzero coefficient; `None` if the series is zero
    /// to its precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Zero to the known precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, FieldElement)> {
        self.order().map(|k| (k, self.coeffs[k].clone()))
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::new(self.coeffs.clone(), self.prec.min(prec))
    }

    /// Forget that the series is only approximate.
    pub fn as_exact(&self) -> Self {
        Series { coeffs: self.coeffs.clone(), prec: EXACT }
    }

    /// Valuation used for precision bookkeeping: the order, or the
    /// precision for a series that is zero so far.
    fn val(&self) -> usize {
        self.order().unwrap_or(self.prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect(), prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect(), prec)
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect(), prec: self.prec }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.prec)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![FieldElement::zero(); if self.coeffs.is_empty() { 0 } else { k }];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, self.prec.saturating_add(k))
    }

    /// Product, computed no further than `cap`.
    pub fn mul_capped(&self, o: &Self, cap: usize) -> Self {
        let prec = self
            .prec
            .saturating_add(o.val())
            .min(o.prec.saturating_add(self.val()))
            .min(cap);
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero(prec);
        }
        let len = (self.coeffs.len() + o.coeffs.len() - 1).min(prec);
        let mut out = vec![FieldElement::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(out, prec)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_capped(o, EXACT)
    }

    /// Multiplicative inverse modulo `t^n`; needs a nonzero constant term.
    pub fn inverse(&self, n: usize) -> Self {
        let c0 = self.coeff(0).inv().expect("series inverse needs a unit");
        let n = n.min(self.prec);
        let mut out = vec![FieldElement::zero(); n];
        if n == 0 {
            return Self::zero(0);
        }
        out[0] = c0.clone();
        for k in 1..n {
            let mut s = FieldElement::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s = &s + &(&self.coeffs[j] * &out[k - j]);
            }
            out[k] = -(&s * &c0);
        }
        Self::new(out, n)
    }

    pub fn pow_capped(&self, n: u32, cap: usize) -> Self {
        let mut acc = Series::constant(FieldElement::one()).truncate(cap);
        for _ in 0..n {
            acc = acc.mul_capped(self, cap);
        }
        acc
    }

    /// Apply a map to every coefficient.
    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(f).collect(), self.prec)
    }
}

/// `p(x(t), y(t))`, computed no further than `cap`.
pub fn compose_xy(p: &Poly, x: &Series, y: &Series, cap: usize) -> Series {
    let cy = p.coeffs_in(Y);
    if cy.is_empty() {
        return Series::zero(EXACT).truncate(cap);
    }
    // powers of x, shared across the y-coefficients
    let dx = p.degree_in(X) as usize;
    let mut xp = vec![Series::constant(FieldElement::one()).truncate(cap)];
    for i in 1..=dx {
        let next = xp[i - 1].mul_capped(x, cap);
        xp.push(next);
    }
    let eval_x = |c: &Poly| -> Series {
        let mut acc = Series::zero(EXACT).truncate(cap);
        for (m, a) in c.terms() {
            acc = acc.add(&xp[m[X] as usize].scale(a));
        }
        acc
    };
    let mut acc = Series::zero(EXACT).truncate(cap);
    for c in cy.iter().rev() {
        acc = acc.mul_capped(y, cap).add(&eval_x(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], prec: usize) -> Series {
        Series::new(c.iter().map(|&n| FieldElement::from(n)).collect(), prec)
    }

    #[test]
    fn product_precision() {
        let a = s(&[0, 1, 1], 5); // t + t^2 + O(t^5)
        let b = s(&[0, 0, 1], EXACT); // t^2
        let p = a.mul(&b);
        assert_eq!(p.prec(), 7);
        assert_eq!(p.order(), Some(3));
    }

    #[test]
    fn inverse() {
        let a = s(&[1, 1], EXACT);
        let inv = a.inverse(6);
        assert_eq!(inv, s(&[1, -1, 1, -1, 1, -1], 6));
        assert_eq!(a.mul(&inv).truncate(6), s(&[1], 6));
    }

    #[test]
    fn composition_cusp() {
        let x = s(&[0, 0, 1], EXACT);
        let y = s(&[0, 0, 0, 1], EXACT);
        let p = &Poly::xy(1, 0, 2) - &Poly::xy(1, 3, 0);
        assert!(compose_xy(&p, &x, &y, 40).is_zero());
        let q = &Poly::x() + &Poly::y();
        assert_eq!(compose_xy(&q, &x, &y, 40).order(), Some(2));
    }
}
