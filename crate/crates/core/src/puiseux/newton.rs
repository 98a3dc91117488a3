//! Rational Newton-Puiseux expansion of the branches of `h(x, y) = 0`
//! through the origin that are not contained in `x = 0`.

use std::sync::Arc;

use num_integer::Integer;

use super::series::{compose_xy, Series, EXACT};
use crate::algebra::field::{FieldElement, NumberField};
use crate::algebra::poly::{Poly, X, Y};
use crate::algebra::trager::roots_in;
use crate::algebra::upoly::UniPoly;
use crate::error::{Error, Result};

/// One Newton polygon change of variables
/// `x = xi^v x1^q`, `y = x1^m (xi^u + y1)`.
#[derive(Clone, Debug)]
pub struct Step {
    pub xi: FieldElement,
    pub q: u32,
    pub m: u32,
    pub u: u32,
    pub v: u32,
}

/// How the innermost coordinate `y_k` depends on `x_k = t`.
#[derive(Clone, Debug)]
pub enum Base {
    /// `y_k = 0` exactly.
    Zero,
    /// `y_k` is the unique series root with `y_k(0) = 0` of a polynomial
    /// regular in `y` at the origin.
    Regular(Poly),
}

/// A rational Puiseux expansion: the chain of changes of variables and
/// the base equation. Conjugates over `Q` are represented once.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub steps: Vec<Step>,
    pub base: Base,
    pub field: Option<Arc<NumberField>>,
}

impl Expansion {
    /// `(c, e)` with `x(t) = c t^e`.
    pub fn x_monomial(&self) -> (FieldElement, u32) {
        let (mut c, mut e) = (FieldElement::one(), 1u32);
        for s in self.steps.iter().rev() {
            c = &s.xi.pow(s.v as u64) * &c.pow(s.q as u64);
            e *= s.q;
        }
        (c, e)
    }

    /// `y(t)` modulo `t^n`.
    pub fn y_series(&self, n: usize) -> Series {
        let mut y = match &self.base {
            Base::Zero => Series::zero(EXACT),
            Base::Regular(h) => regular_root(h, n),
        };
        let (mut c, mut e) = (FieldElement::one(), 1u32);
        for s in self.steps.iter().rev() {
            // y = (c t^e)^m (xi^u + y1)
            let inner = y.add(&Series::constant(s.xi.pow(s.u as u64)));
            y = inner.scale(&c.pow(s.m as u64)).shift((e * s.m) as usize);
            c = &s.xi.pow(s.v as u64) * &c.pow(s.q as u64);
            e *= s.q;
        }
        if y.is_exact() {
            y
        } else {
            y.truncate(n)
        }
    }
}

/// Series root `y(t)`, `y(0) = 0`, of `h(t, y) = 0` modulo `t^n` by Newton
/// iteration. Requires `h(0,0) = 0` and `h_y(0,0) != 0`.
fn regular_root(h: &Poly, n: usize) -> Series {
    let hy = h.derivative(Y);
    let t = Series::monomial(FieldElement::one(), 1);
    let mut y = Series::zero(1);
    let mut k = 1;
    while k < n {
        let k2 = (2 * k).min(n);
        let ye = y.as_exact();
        let num = compose_xy(h, &t, &ye, k2);
        let den = compose_xy(&hy, &t, &ye, k2);
        let corr = num.mul_capped(&den.inverse(k2), k2);
        y = ye.sub(&corr).truncate(k2);
        k = k2;
    }
    y.truncate(n)
}

fn ord_y_at_x0(h: &Poly) -> Option<u32> {
    h.terms().iter().filter(|(m, _)| m[X] == 0).map(|(m, _)| m[Y]).min()
}

/// Expansions of all branches of `h` through the origin other than `x = 0`.
/// `h` must be squarefree, not divisible by `x`, with coefficients in
/// `field` (or rational).
pub fn expand(h: &Poly, field: Option<&Arc<NumberField>>) -> Result<Vec<Expansion>> {
    let mut out = Vec::new();
    expand_into(h, field, Vec::new(), &mut out)?;
    Ok(out)
}

fn expand_into(
    h: &Poly,
    field: Option<&Arc<NumberField>>,
    steps: Vec<Step>,
    out: &mut Vec<Expansion>,
) -> Result<()> {
    let mut h = h.clone();
    if h.terms().iter().all(|(m, _)| m[Y] > 0) {
        out.push(Expansion { steps: steps.clone(), base: Base::Zero, field: field.cloned() });
        h = h.exact_div(&Poly::y()).expect("y divides");
    }
    if !h.vanishes_at_origin() {
        return Ok(());
    }
    let r = ord_y_at_x0(&h).expect("x does not divide h");
    if r == 1 {
        out.push(Expansion { steps, base: Base::Regular(h), field: field.cloned() });
        return Ok(());
    }
    for edge in lower_edges(&h, r) {
        let (q, m, l) = (edge.q, edge.m, edge.l);
        let phi = edge_polynomial(&h, &edge);
        let (roots, rest) = roots_in(&phi, field);
        let mut choices: Vec<(FieldElement, Option<Arc<NumberField>>)> =
            roots.into_iter().map(|(xi, _)| (xi, field.cloned())).collect();
        for (f, _) in rest {
            match field {
                None => {
                    let coeffs = f.to_rationals().expect("rational edge polynomial");
                    let k = NumberField::new_unchecked(coeffs);
                    choices.push((k.generator(), Some(k)));
                }
                Some(k) => {
                    return Err(Error::UnsupportedCoefficientField {
                        minpoly: format!("{} over Q(a), a root of {}", f.to_string_var("z"), k.minpoly_string("a")),
                    });
                }
            }
        }
        for (xi, k) in choices {
            let u = if m == 1 { 1 } else { inverse_mod(q, m) };
            let v = (u * q - 1) / m;
            let sx = Poly::monomial([q, 0, 0, 0], xi.pow(v as u64));
            let xm = Poly::monomial([m, 0, 0, 0], FieldElement::one());
            let sy = &xm * &(&Poly::constant(xi.pow(u as u64)) + &Poly::y());
            let h1 = h.substitute(&[sx, sy]);
            let h1 = h1.div_mono(&[l, 0, 0, 0]);
            let mut st = steps.clone();
            st.push(Step { xi, q, m, u, v });
            expand_into(&h1, k.as_ref(), st, out)?;
        }
    }
    Ok(())
}

struct Edge {
    q: u32,
    m: u32,
    l: u32,
    /// y-exponent of the lower endpoint.
    j_low: u32,
    j_high: u32,
}

/// Edges of the Newton polygon from `(0, r)` down to the x-axis; the
/// edge `q i + m j = l` corresponds to `y ~ x^(m/q)`.
fn lower_edges(h: &Poly, r: u32) -> Vec<Edge> {
    let pts: Vec<(u32, u32)> = h.terms().iter().map(|(m, _)| (m[X], m[Y])).collect();
    let mut edges = Vec::new();
    let (mut ic, mut jc) = (0u32, r);
    while jc > 0 {
        // next vertex minimizes (i - ic) / (jc - j); ties go to the lowest j
        let mut best: Option<(u32, u32)> = None;
        for &(i, j) in &pts {
            if j >= jc || i < ic {
                continue;
            }
            best = match best {
                None => Some((i, j)),
                Some((bi, bj)) => {
                    let lhs = (i - ic) as u64 * (jc - bj) as u64;
                    let rhs = (bi - ic) as u64 * (jc - j) as u64;
                    if lhs < rhs || (lhs == rhs && j < bj) {
                        Some((i, j))
                    } else {
                        Some((bi, bj))
                    }
                }
            };
        }
        let (bi, bj) = best.expect("h(x, 0) is nonzero");
        let di = bi - ic;
        let dj = jc - bj;
        let g = di.gcd(&dj);
        let (m, q) = (di / g, dj / g);
        edges.push(Edge { q, m, l: q * ic + m * jc, j_low: bj, j_high: jc });
        ic = bi;
        jc = bj;
    }
    edges
}

fn edge_polynomial(h: &Poly, e: &Edge) -> UniPoly {
    let deg = ((e.j_high - e.j_low) / e.q) as usize;
    let mut c = vec![FieldElement::zero(); deg + 1];
    for (mono, a) in h.terms() {
        let (i, j) = (mono[X], mono[Y]);
        if e.q * i + e.m * j == e.l {
            c[((j - e.j_low) / e.q) as usize] = a.clone();
        }
    }
    UniPoly::new(c)
}

fn inverse_mod(a: u32, m: u32) -> u32 {
    let (a, m) = (a as i64, m as i64);
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_vanishes(h: &Poly, ex: &Expansion, n: usize) {
        let (c, e) = ex.x_monomial();
        let x = Series::monomial(c, e as usize);
        let y = ex.y_series(n);
        let v = compose_xy(h, &x, &y, n);
        assert!(v.is_zero(), "residual {} for {:?}", v, ex);
    }

    #[test]
    fn cusp() {
        let h = &Poly::xy(1, 0, 2) - &Poly::xy(1, 3, 0);
        let ex = expand(&h, None).unwrap();
        assert_eq!(ex.len(), 1);
        assert_eq!(ex[0].x_monomial().1, 2);
        let y = ex[0].y_series(20);
        assert_eq!(y.order(), Some(3));
        check_vanishes(&h, &ex[0], 20);
    }

    #[test]
    fn graph_and_node() {
        let h = &Poly::y() - &Poly::xy(1, 2, 0);
        let ex = expand(&h, None).unwrap();
        assert_eq!(ex.len(), 1);
        check_vanishes(&h, &ex[0], 10);
        // y^2 - x^2 - x^3: two rational branches
        let node = &(&Poly::xy(1, 0, 2) - &Poly::xy(1, 2, 0)) - &Poly::xy(1, 3, 0);
        let ex = expand(&node, None).unwrap();
        assert_eq!(ex.len(), 2);
        for b in &ex {
            check_vanishes(&node, b, 15);
        }
    }

    #[test]
    fn irrational_tangent() {
        let h = &Poly::xy(1, 0, 2) - &Poly::xy(2, 2, 0);
        let ex = expand(&h, None).unwrap();
        assert_eq!(ex.len(), 1);
        assert!(ex[0].field.is_some());
        check_vanishes(&h, &ex[0], 10);
    }

    #[test]
    fn higher_singularity() {
        // (y^2 - x^3)^2 - 4x^5y - x^7, the curve of (t^4, t^6 + t^7)
        let c = &Poly::xy(1, 0, 2) - &Poly::xy(1, 3, 0);
        let h = &(&c.pow(2) - &Poly::xy(4, 5, 1)) - &Poly::xy(1, 7, 0);
        let ex = expand(&h, None).unwrap();
        assert_eq!(ex.len(), 1);
        assert_eq!(ex[0].x_monomial().1, 4);
        check_vanishes(&h, &ex[0], 60);
    }
}
