//! Reduced rational functions and divisor multiplicities.

use std::fmt;

use super::field::FieldElement;
use super::gcd::gcd_unchecked;
use super::poly::Poly;
use crate::error::{Error, Result};

/// `num / den` with the common factor cancelled and the denominator's
/// leading coefficient equal to one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        num.check_compatible(&den)?;
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one() };
        }
        let g = gcd_unchecked(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = d.lc();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RationalFunction { num: n, den: d }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::reduce(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::reduce(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::reduce(&self.num * &o.num, &self.den * &o.den)
    }

    /// Quotient; fails on a zero divisor.
    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::reduce(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        RationalFunction { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// Reduced numerator and denominator of `self / o`.
    pub fn ratio(&self, o: &Self) -> Result<(Poly, Poly)> {
        let r = self.div(o)?;
        Ok((r.num, r.den))
    }
}

/// Multiplicity of `p` in a polynomial by repeated exact division.
pub fn poly_multiplicity(a: &Poly, psi: &Poly) -> u32 {
    if a.is_zero() {
        return u32::MAX;
    }
    let mut k = 0;
    let mut cur = a.clone();
    while let Some(q) = cur.exact_div(psi) {
        cur = q;
        k += 1;
    }
    k
}

/// Order of `r` along the divisor `psi`: multiplicity in the numerator
/// minus multiplicity in the denominator.
pub fn divisor_multiplicity(r: &RationalFunction, psi: &Poly) -> Result<i64> {
    if psi.is_constant() {
        return Err(Error::InvalidDivisor);
    }
    if r.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(poly_multiplicity(&r.num, psi) as i64 - poly_multiplicity(&r.den, psi) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let x = Poly::x();
        let y = Poly::y();
        assert_eq!(divisor_multiplicity(&Poly::xy(1, 3, 3).into(), &x).unwrap(), 3);
        let r = RationalFunction::new(Poly::xy(1, 2, 1), Poly::xy(1, 1, 2)).unwrap();
        assert_eq!(divisor_multiplicity(&r, &y).unwrap(), -1);
        assert_eq!(divisor_multiplicity(&Poly::one().into(), &y).unwrap(), 0);
        assert_eq!(divisor_multiplicity(&x.clone().into(), &Poly::int(2)), Err(Error::InvalidDivisor));
    }

    #[test]
    fn reduction_cancels() {
        let x = Poly::x();
        let y = Poly::y();
        let r = RationalFunction::new(&x * &y, Poly::xy(2, 2, 1)).unwrap();
        assert_eq!(r.num(), &Poly::constant(FieldElement::from(crate::algebra::field::ratio(1, 2))));
        assert_eq!(r.den(), &x);
    }
}
