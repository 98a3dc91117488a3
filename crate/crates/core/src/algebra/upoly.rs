//! Dense univariate polynomials over [`FieldElement`].

use std::fmt;
use std::sync::Arc;

use super::field::{join_poly, FieldElement, NumberField, Rational};

/// Ascending coefficients, no trailing zeros. The zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("z"))
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_rationals(c: Vec<Rational>) -> Self {
        Self::new(c.into_iter().map(FieldElement::Rat).collect())
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| FieldElement::from(n)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn var() -> Self {
        Self::new(vec![FieldElement::zero(), FieldElement::one()])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(FieldElement::zero)
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.coeffs.iter().find_map(|c| c.field().cloned())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_rational().cloned()).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(FieldElement::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![FieldElement::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: c }
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.lc().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![FieldElement::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, b) in d.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * b);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(&inv)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &FieldElement::from(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(o(z))`.
    pub fn compose(&self, o: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(o).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).unwrap().monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if let Some(r) = self.to_rationals() {
            return join_poly(&r, var);
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            let cs = format!("({})", c);
            parts.push(if mono.is_empty() { cs } else { format!("{}*{}", cs, mono) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        // (z-1)(z+2) and (z-1)(z-3)
        let a = UniPoly::from_ints(&[-2, 1, 1]);
        let b = UniPoly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[-1, 1]));
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn squarefree() {
        let p = UniPoly::from_ints(&[-1, 1]).pow(3).mul(&UniPoly::from_ints(&[2, 1]));
        assert_eq!(p.squarefree_part(), UniPoly::from_ints(&[-2, 1, 1]));
    }
}
