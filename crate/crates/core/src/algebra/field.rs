//! Exact coefficients: rationals and elements of a single simple extension
//! `Q(a) = Q[z]/(m(z))`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A simple algebraic extension of the rationals given by a monic
/// irreducible minimal polynomial of degree at least two.
///
/// Two fields compare equal when their minimal polynomials agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    /// Ascending coefficients, monic, `len() == degree + 1`.
    minpoly: Vec<Rational>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[a]/({})", self.minpoly_string("a"))
    }
}

impl NumberField {
    /// Builds `Q[z]/(m)`. The polynomial is made monic; it must be
    /// irreducible over the rationals and of degree at least two.
    pub fn new(minpoly: Vec<Rational>) -> Result<Arc<NumberField>> {
        let m = monic(trim(minpoly));
        if m.len() < 3 {
            return Err(Error::UnsupportedCoefficientField {
                minpoly: join_poly(&m, "z"),
            });
        }
        let candidate = crate::algebra::upoly::UniPoly::from_rationals(m.clone());
        if !crate::algebra::factor_q::is_irreducible(&candidate) {
            return Err(Error::UnsupportedCoefficientField {
                minpoly: join_poly(&m, "z"),
            });
        }
        Ok(Arc::new(NumberField { minpoly: m }))
    }

    /// Caller guarantees `minpoly` is monic and irreducible.
    pub(crate) fn new_unchecked(minpoly: Vec<Rational>) -> Arc<NumberField> {
        let m = monic(trim(minpoly));
        debug_assert!(m.len() >= 3);
        Arc::new(NumberField { minpoly: m })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn minpoly_string(&self, var: &str) -> String {
        join_poly(&self.minpoly, var)
    }

    pub fn generator(self: &Arc<Self>) -> FieldElement {
        let mut c = vec![Rational::zero(); self.degree()];
        c[1] = Rational::one();
        FieldElement::Ext(Ext {
            coeffs: c,
            field: self.clone(),
        })
    }

    /// The element `sum c_i a^i`, normalized.
    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> FieldElement {
        let reduced = rem(trim(coeffs), &self.minpoly);
        FieldElement::from_ext_coeffs(reduced, self)
    }

    fn reduce(&self, p: Vec<Rational>) -> Vec<Rational> {
        let mut r = rem(trim(p), &self.minpoly);
        r.resize(self.degree(), Rational::zero());
        r
    }
}

/// Non-rational element of a number field.
#[derive(Clone)]
pub struct Ext {
    /// Ascending coefficients in the generator, length = field degree.
    coeffs: Vec<Rational>,
    field: Arc<NumberField>,
}

impl Ext {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }
}

/// A coefficient: either rational or a non-rational element of a number
/// field. Extension elements with rational value are always normalized to
/// [`FieldElement::Rat`].
#[derive(Clone)]
pub enum FieldElement {
    Rat(Rational),
    Ext(Ext),
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => a == b,
            (FieldElement::Ext(a), FieldElement::Ext(b)) => {
                a.field == b.field && a.coeffs == b.coeffs
            }
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            FieldElement::Rat(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            FieldElement::Ext(e) => {
                1u8.hash(state);
                e.coeffs.hash(state);
            }
        }
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::Rat(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::Rat(rat(n))
    }
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rat(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rat(r) => Some(r),
            FieldElement::Ext(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldElement::Rat(_))
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            FieldElement::Rat(_) => None,
            FieldElement::Ext(e) => Some(&e.field),
        }
    }

    fn from_ext_coeffs(mut c: Vec<Rational>, field: &Arc<NumberField>) -> Self {
        c.resize(field.degree(), Rational::zero());
        if c[1..].iter().all(|x| x.is_zero()) {
            FieldElement::Rat(c.swap_remove(0))
        } else {
            FieldElement::Ext(Ext {
                coeffs: c,
                field: field.clone(),
            })
        }
    }

    /// Coefficient vector in the given field.
    fn lift(&self, field: &Arc<NumberField>) -> Vec<Rational> {
        match self {
            FieldElement::Rat(r) => {
                let mut v = vec![Rational::zero(); field.degree()];
                v[0] = r.clone();
                v
            }
            FieldElement::Ext(e) => {
                assert!(e.field == *field, "coefficient field mismatch");
                e.coeffs.clone()
            }
        }
    }

    /// Field shared by two operands, or `None` when both are rational.
    /// Panics on incompatible fields; callers check compatibility first.
    fn common_field<'a>(a: &'a Self, b: &'a Self) -> Option<&'a Arc<NumberField>> {
        match (a.field(), b.field()) {
            (None, None) => None,
            (Some(f), None) | (None, Some(f)) => Some(f),
            (Some(f), Some(g)) => {
                assert!(f == g, "coefficient field mismatch");
                Some(f)
            }
        }
    }

    pub fn compatible(a: Option<&Arc<NumberField>>, b: Option<&Arc<NumberField>>) -> bool {
        match (a, b) {
            (Some(f), Some(g)) => f == g,
            _ => true,
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        match self {
            FieldElement::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(FieldElement::Rat(r.recip()))
                }
            }
            FieldElement::Ext(e) => {
                let (g, s) = ext_gcd_inverse(&e.coeffs, &e.field.minpoly);
                if g.len() != 1 {
                    return None;
                }
                let inv_g = g[0].recip();
                let s: Vec<Rational> = s.into_iter().map(|c| c * &inv_g).collect();
                Some(FieldElement::from_ext_coeffs(e.field.reduce(s), &e.field))
            }
        }
    }

    pub fn pow(&self, mut n: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert (panics on zero).
    pub fn powi(&self, n: i64) -> FieldElement {
        if n >= 0 {
            self.pow(n as u64)
        } else {
            self.inv().expect("inverse of zero").pow(n.unsigned_abs())
        }
    }

    /// Deterministic total order used for canonical output ordering.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => a.cmp(b),
            (FieldElement::Rat(_), FieldElement::Ext(_)) => Ordering::Less,
            (FieldElement::Ext(_), FieldElement::Rat(_)) => Ordering::Greater,
            (FieldElement::Ext(a), FieldElement::Ext(b)) => a
                .field
                .minpoly
                .len()
                .cmp(&b.field.minpoly.len())
                .then_with(|| a.field.minpoly.cmp(&b.field.minpoly))
                .then_with(|| a.coeffs.cmp(&b.coeffs)),
        }
    }

    /// Render with the generator called `var`.
    pub fn display_with(&self, var: &str) -> String {
        match self {
            FieldElement::Rat(r) => rational_string(r),
            FieldElement::Ext(e) => join_poly(&e.coeffs, var),
        }
    }

    /// Characteristic polynomial over Q of multiplication by `self`,
    /// as ascending coefficients.
    pub(crate) fn charpoly(&self) -> Vec<Rational> {
        match self {
            FieldElement::Rat(r) => vec![-r.clone(), Rational::one()],
            FieldElement::Ext(e) => {
                let d = e.field.degree();
                // matrix of multiplication by e in the power basis
                let mut m = vec![vec![Rational::zero(); d]; d];
                for j in 0..d {
                    let mut basis = vec![Rational::zero(); d];
                    basis[j] = Rational::one();
                    let prod = e.field.reduce(mul(&e.coeffs, &basis));
                    for i in 0..d {
                        m[i][j] = prod[i].clone();
                    }
                }
                charpoly_of_matrix(&m)
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("a"))
    }
}

pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                $body(self, rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                $body(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                $body(&self, rhs)
            }
        }
    };
}

fn fe_add(a: &FieldElement, b: &FieldElement) -> FieldElement {
    match (a, b) {
        (FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x + y),
        _ => {
            let f = FieldElement::common_field(a, b).unwrap().clone();
            let (x, y) = (a.lift(&f), b.lift(&f));
            let s = x.into_iter().zip(y).map(|(p, q)| p + q).collect();
            FieldElement::from_ext_coeffs(s, &f)
        }
    }
}

fn fe_sub(a: &FieldElement, b: &FieldElement) -> FieldElement {
    match (a, b) {
        (FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x - y),
        _ => fe_add(a, &-b),
    }
}

fn fe_mul(a: &FieldElement, b: &FieldElement) -> FieldElement {
    match (a, b) {
        (FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x * y),
        (FieldElement::Rat(x), FieldElement::Ext(e)) | (FieldElement::Ext(e), FieldElement::Rat(x)) => {
            if x.is_zero() {
                return FieldElement::zero();
            }
            FieldElement::Ext(Ext {
                coeffs: e.coeffs.iter().map(|c| c * x).collect(),
                field: e.field.clone(),
            })
        }
        (FieldElement::Ext(x), FieldElement::Ext(y)) => {
            assert!(x.field == y.field, "coefficient field mismatch");
            let p = x.field.reduce(mul(&x.coeffs, &y.coeffs));
            FieldElement::from_ext_coeffs(p, &x.field)
        }
    }
}

fn fe_div(a: &FieldElement, b: &FieldElement) -> FieldElement {
    match (a, b) {
        (_, FieldElement::Rat(y)) => {
            assert!(!y.is_zero(), "division by zero");
            fe_mul(a, &FieldElement::Rat(y.recip()))
        }
        _ => fe_mul(a, &b.inv().expect("division by zero")),
    }
}

binop!(Add, add, fe_add);
binop!(Sub, sub, fe_sub);
binop!(Mul, mul, fe_mul);
binop!(Div, div, fe_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rat(r) => FieldElement::Rat(-r),
            FieldElement::Ext(e) => FieldElement::Ext(Ext {
                coeffs: e.coeffs.iter().map(|c| -c).collect(),
                field: e.field.clone(),
            }),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

// --- dense rational polynomial helpers (ascending coefficients) ---

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn monic(p: Vec<Rational>) -> Vec<Rational> {
    match p.last() {
        Some(lc) if !lc.is_one() => {
            let inv = lc.recip();
            p.into_iter().map(|c| c * &inv).collect()
        }
        _ => p,
    }
}

fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lc_inv = b.last().expect("division by zero polynomial").recip();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lc_inv;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn rem(a: Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    divrem(&a, b).1
}

fn sub_poly(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

/// Returns `(g, s)` with `s*a == g (mod m)`, `g = gcd(a, m)` (not normalized).
fn ext_gcd_inverse(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub_poly(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

/// Characteristic polynomial `det(zI - M)` by the Faddeev-LeVerrier recursion.
fn charpoly_of_matrix(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n]; // M_0 = 0
    for k in 1..=n {
        // M_k = M * M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for l in 0..n {
                    s += &m[i][l] * &mk[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        // c_{n-k} = -tr(M M_k)/k
        let mut tr = Rational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &m[i][l] * &next[l][i];
            }
        }
        coeffs[n - k] = -tr / rat(k as i64);
        mk = next;
    }
    coeffs
}

pub(crate) fn join_poly(coeffs: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{}^{}", var, i),
        };
        if mono.is_empty() {
            out.push_str(&rational_string(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", rational_string(&abs), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Arc<NumberField> {
        NumberField::new(vec![rat(-2), rat(0), rat(1)]).unwrap()
    }

    #[test]
    fn rational_arithmetic_is_reduced() {
        let a = FieldElement::Rat(ratio(2, 4));
        assert_eq!(a, FieldElement::Rat(ratio(1, 2)));
        let b = &a + &FieldElement::Rat(ratio(1, 2));
        assert!(b.is_one());
    }

    #[test]
    fn extension_arithmetic() {
        let k = sqrt2();
        let a = k.generator();
        let two = &a * &a;
        assert_eq!(two, FieldElement::from(2));
        assert!(two.is_rational());
        let inv = a.inv().unwrap();
        assert!((&inv * &a).is_one());
        let b = &a + &FieldElement::one();
        let c = &b / &b;
        assert!(c.is_one());
        assert_eq!(format!("{}", b), "a+1");
    }

    #[test]
    fn reducible_minpoly_rejected() {
        assert!(NumberField::new(vec![rat(-1), rat(0), rat(1)]).is_err());
        assert!(NumberField::new(vec![rat(-1), rat(1)]).is_err());
    }

    #[test]
    fn charpoly_of_shifted_generator() {
        let k = sqrt2();
        let b = &k.generator() + &FieldElement::one();
        // (z-1)^2 - 2 = z^2 - 2z - 1
        assert_eq!(b.charpoly(), vec![rat(-1), rat(-2), rat(1)]);
    }
}
