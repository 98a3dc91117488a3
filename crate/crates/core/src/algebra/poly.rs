//! Sparse multivariate polynomials in up to four variables `x, y, t, w`.
//!
//! Terms are kept in descending graded-lexicographic order with
//! `x > y > t > w`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;

use super::field::{rational_string, FieldElement, NumberField, Rational};
use super::upoly::UniPoly;
use crate::error::{Error, Result};

pub const NVARS: usize = 4;
pub const X: usize = 0;
pub const Y: usize = 1;
pub const T: usize = 2;
pub const W: usize = 3;

pub type Mono = [u32; NVARS];

pub const DEFAULT_NAMES: [&str; NVARS] = ["x", "y", "t", "w"];

pub fn mono_degree(m: &Mono) -> u32 {
    m.iter().sum()
}

/// Graded lexicographic comparison.
pub fn grlex(a: &Mono, b: &Mono) -> Ordering {
    mono_degree(a).cmp(&mono_degree(b)).then_with(|| a.cmp(b))
}

pub fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut m = *a;
    for i in 0..NVARS {
        m[i] += b[i];
    }
    m
}

pub fn mono_div(a: &Mono, b: &Mono) -> Mono {
    let mut m = *a;
    for i in 0..NVARS {
        m[i] -= b[i];
    }
    m
}

pub fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    let mut m = *a;
    for i in 0..NVARS {
        m[i] = m[i].max(b[i]);
    }
    m
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, FieldElement)>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&DEFAULT_NAMES))
    }
}

impl Poly {
    /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(terms: Vec<(Mono, FieldElement)>) -> Self {
        let mut map: HashMap<Mono, FieldElement> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<Mono, FieldElement>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        Poly { terms }
    }

    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::one())
    }

    pub fn constant(c: FieldElement) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![([0; NVARS], c)],
            }
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(FieldElement::from(n))
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0; NVARS];
        m[i] = 1;
        Poly {
            terms: vec![(m, FieldElement::one())],
        }
    }

    pub fn x() -> Self {
        Self::var(X)
    }

    pub fn y() -> Self {
        Self::var(Y)
    }

    pub fn monomial(m: Mono, c: FieldElement) -> Self {
        Self::from_terms(vec![(m, c)])
    }

    /// `c * x^i * y^j`.
    pub fn xy(c: i64, i: u32, j: u32) -> Self {
        Self::monomial([i, j, 0, 0], FieldElement::from(c))
    }

    pub fn terms(&self) -> &[(Mono, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == [0; NVARS])
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> FieldElement {
        match self.terms.last() {
            Some((m, c)) if *m == [0; NVARS] => c.clone(),
            _ => FieldElement::zero(),
        }
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| mono_degree(m)).unwrap_or(0)
    }

    /// Lowest total degree of a term (order at the origin); 0 for zero.
    pub fn order(&self) -> u32 {
        self.terms.iter().map(|(m, _)| mono_degree(m)).min().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m[var] > 0)
    }

    /// Leading term under grlex.
    pub fn lt(&self) -> Option<&(Mono, FieldElement)> {
        self.terms.first()
    }

    pub fn lc(&self) -> FieldElement {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(FieldElement::zero)
    }

    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.terms.iter().find_map(|(_, c)| c.field().cloned())
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_rational())
    }

    pub fn check_compatible(&self, o: &Self) -> Result<()> {
        if FieldElement::compatible(self.field().as_ref(), o.field().as_ref()) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn coeff(&self, m: &Mono) -> FieldElement {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|t| t.1.clone())
            .unwrap_or_else(FieldElement::zero)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, a)| (mono_mul(n, m), a * c)).collect(),
        }
    }

    /// Associate with leading coefficient one.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().inv().unwrap())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[var] > 0)
            .map(|(m, c)| {
                let mut n = *m;
                n[var] -= 1;
                (n, c * &FieldElement::from(m[var] as i64))
            })
            .collect();
        Self::from_terms(terms)
    }

    /// Substitute a constant for one variable.
    pub fn eval_var(&self, var: usize, v: &FieldElement) -> Self {
        let mut cache: Vec<FieldElement> = vec![FieldElement::one()];
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m[var] as usize;
                while cache.len() <= e {
                    let next = cache.last().unwrap() * v;
                    cache.push(next);
                }
                let mut n = *m;
                n[var] = 0;
                (n, c * &cache[e])
            })
            .collect();
        Self::from_terms(terms)
    }

    /// Evaluate at a point, one value per variable (missing ones are zero).
    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        let mut acc = FieldElement::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let p = point.get(i).cloned().unwrap_or_else(FieldElement::zero);
                    v = &v * &p.pow(e as u64);
                }
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Replace every variable `i` by `subs[i]` (variables beyond
    /// `subs.len()` are kept).
    pub fn substitute(&self, subs: &[Poly]) -> Self {
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|p| vec![Poly::one(), p.clone()]).collect();
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut rest = [0u32; NVARS];
            for (i, &e) in m.iter().enumerate() {
                if i < subs.len() {
                    let pw = &mut powers[i];
                    while pw.len() <= e as usize {
                        let next = pw.last().unwrap() * &subs[i];
                        pw.push(next);
                    }
                    term = &term * &pw[e as usize];
                } else {
                    rest[i] = e;
                }
            }
            if rest != [0; NVARS] {
                term = term.mul_mono(&rest, &FieldElement::one());
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Swap two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut n = *m;
                n.swap(a, b);
                (n, c.clone())
            })
            .collect();
        Self::from_terms(terms)
    }

    /// Coefficients as polynomials in the remaining variables, indexed by
    /// the power of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Mono, FieldElement)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let mut n = *m;
            let e = n[var] as usize;
            n[var] = 0;
            buckets[e].push((n, c.clone()));
        }
        if self.is_zero() {
            return Vec::new();
        }
        buckets.into_iter().map(Self::from_terms).collect()
    }

    pub fn from_coeffs_in(var: usize, coeffs: &[Poly]) -> Self {
        let mut terms = Vec::new();
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut n = *m;
                n[var] += e as u32;
                terms.push((n, c.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// As a univariate polynomial, when only `var` occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let mut c = vec![FieldElement::zero(); self.degree_in(var) as usize + 1];
        for (m, a) in &self.terms {
            if m.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            c[m[var] as usize] = a.clone();
        }
        Some(UniPoly::new(c))
    }

    pub fn from_univariate(var: usize, u: &UniPoly) -> Self {
        let terms = u
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut m = [0; NVARS];
                m[var] = i as u32;
                (m, c.clone())
            })
            .collect();
        Self::from_terms(terms)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut m = match self.terms.first() {
            Some(t) => t.0,
            None => return [0; NVARS],
        };
        for (n, _) in &self.terms[1..] {
            for i in 0..NVARS {
                m[i] = m[i].min(n[i]);
            }
        }
        m
    }

    pub fn div_mono(&self, m: &Mono) -> Self {
        Poly {
            terms: self.terms.iter().map(|(n, c)| (mono_div(n, m), c.clone())).collect(),
        }
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    /// Panics when `d` is zero.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (ldm, ldc) = d.lt().expect("division by zero polynomial").clone();
        let inv = ldc.inv().unwrap();
        if d.terms.len() == 1 {
            if !self.terms.iter().all(|(m, _)| mono_divides(&ldm, m)) {
                return None;
            }
            return Some(Poly {
                terms: self.terms.iter().map(|(m, c)| (mono_div(m, &ldm), c * &inv)).collect(),
            });
        }
        let mut r: HashMap<Mono, FieldElement> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        loop {
            let lead = r.iter().max_by(|a, b| grlex(a.0, b.0)).map(|(m, c)| (*m, c.clone()));
            let Some((m, c)) = lead else { break };
            if !mono_divides(&ldm, &m) {
                return None;
            }
            let qm = mono_div(&m, &ldm);
            let qc = &c * &inv;
            for (dm, dc) in &d.terms {
                let key = mono_mul(dm, &qm);
                let delta = &qc * dc;
                let remove = match r.get_mut(&key) {
                    Some(e) => {
                        *e = &*e - &delta;
                        e.is_zero()
                    }
                    None => {
                        r.insert(key, -delta);
                        false
                    }
                };
                if remove {
                    r.remove(&key);
                }
            }
            q.push((qm, qc));
        }
        Some(Self::from_terms(q))
    }

    pub fn divides(&self, p: &Poly) -> bool {
        p.exact_div(self).is_some()
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    /// Render with custom variable names.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (neg, body) = match c.as_rational() {
                Some(r) => (r.is_negative(), rational_string(&r.abs())),
                None => (false, format!("({})", c)),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = body == "1";
            if mono.is_empty() {
                out.push_str(&body);
            } else if unit {
                out.push_str(&mono);
            } else {
                out.push_str(&body);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn merge(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = match (a.terms.get(i), b.terms.get(j)) {
            (Some(x), Some(y)) => grlex(&x.0, &y.0),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m, c) = &b.terms[j];
                out.push((*m, if negate_b { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a.terms[i].1 - &b.terms[j].1
                } else {
                    &a.terms[i].1 + &b.terms[j].1
                };
                if !c.is_zero() {
                    out.push((a.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Poly { terms: out }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &'a Poly) -> Poly {
        merge(self, o, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &'a Poly) -> Poly {
        merge(self, o, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &'a Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_mono(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_mono(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: HashMap<Mono, FieldElement> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &o.terms {
                let k = mono_mul(m, n);
                let v = a * b;
                match map.get_mut(&k) {
                    Some(e) => *e = &*e + &v,
                    None => {
                        map.insert(k, v);
                    }
                }
            }
        }
        Poly::from_map(map)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, o: Poly) -> Poly { (&self).$method(&o) }
        }
        impl<'a> $trait<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, o: &'a Poly) -> Poly { (&self).$method(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Rational> for Poly {
    fn from(r: Rational) -> Poly {
        Poly::constant(FieldElement::Rat(r))
    }
}

/// `df/dx dg/dy - df/dy dg/dx`.
pub fn jacobian_det(f: &Poly, g: &Poly) -> Poly {
    &(&f.derivative(X) * &g.derivative(Y)) - &(&f.derivative(Y) * &g.derivative(X))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = Poly::x();
        let y = Poly::y();
        let s = &x + &y;
        let sq = s.pow(2);
        assert_eq!(sq.to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(&sq - &(&x * &x), &(&Poly::int(2) * &(&x * &y)) + &(&y * &y));
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn exact_division() {
        let x = Poly::x();
        let y = Poly::y();
        let a = &(&x - &y) * &(&x + &y);
        assert_eq!(a.exact_div(&(&x - &y)), Some(&x + &y));
        assert_eq!(a.exact_div(&(&x - &Poly::int(1))), None);
        assert_eq!(Poly::xy(1, 3, 3).exact_div(&Poly::xy(1, 2, 1)), Some(Poly::xy(1, 1, 2)));
    }

    #[test]
    fn jacobian_examples() {
        let x = Poly::x();
        let y = Poly::y();
        assert!(jacobian_det(&x, &y).is_one());
        assert_eq!(jacobian_det(&(&x * &y), &y), y);
        let s = &x + &y;
        assert!(jacobian_det(&s.pow(2), &s.pow(3)).is_zero());
    }

    #[test]
    fn substitution() {
        let x = Poly::x();
        let y = Poly::y();
        let p = &(&x * &x) + &y;
        let q = p.substitute(&[y.clone(), x.clone()]);
        assert_eq!(q, &(&y * &y) + &x);
        assert_eq!(p.eval(&[FieldElement::from(2), FieldElement::from(3)]), FieldElement::from(7));
    }
}
