//! Buchberger's algorithm over `Q` or `Q(a)` in the four variables
//! `x, y, t, w`.

use std::cmp::Ordering;

use crate::algebra::field::FieldElement;
use crate::algebra::poly::{grlex, mono_degree, mono_div, mono_divides, mono_lcm, mono_mul, Mono, Poly, NVARS};
use crate::error::{Error, Result};

/// Default limit on the number of S-polynomial reductions.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded lexicographic with `x > y > t > w`.
    Grlex,
    /// Block order: total degree in the variables of the mask first, then
    /// grlex. Every monomial involving a masked variable is larger than
    /// every monomial free of them.
    Elimination([bool; NVARS]),
}

impl MonomialOrder {
    pub fn eliminating(vars: &[usize]) -> Self {
        let mut mask = [false; NVARS];
        for &v in vars {
            mask[v] = true;
        }
        MonomialOrder::Elimination(mask)
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            MonomialOrder::Grlex => grlex(a, b),
            MonomialOrder::Elimination(mask) => {
                let da: u32 = (0..NVARS).filter(|&i| mask[i]).map(|i| a[i]).sum();
                let db: u32 = (0..NVARS).filter(|&i| mask[i]).map(|i| b[i]).sum();
                da.cmp(&db).then_with(|| grlex(a, b))
            }
        }
    }
}

/// Terms sorted descending for a fixed order.
#[derive(Clone, Debug)]
struct OPoly {
    terms: Vec<(Mono, FieldElement)>,
}

impl OPoly {
    fn from_poly(p: &Poly, ord: MonomialOrder) -> Self {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        OPoly { terms }
    }

    fn to_poly(&self) -> Poly {
        Poly::from_terms(self.terms.clone())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn monic(mut self) -> Self {
        if let Some(inv) = self.terms.first().and_then(|t| t.1.inv()) {
            for t in self.terms.iter_mut() {
                t.1 = &t.1 * &inv;
            }
        }
        self
    }

    /// `self - c m other`, merging two sorted term lists.
    fn sub_scaled(&self, c: &FieldElement, m: &Mono, other: &OPoly, ord: MonomialOrder) -> OPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| (mono_mul(&other.terms[k].0, m), &other.terms[k].1 * c);
        while i < self.terms.len() || j < other.terms.len() {
            if j == other.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let (sm, sc) = shifted(j);
            if i == self.terms.len() {
                out.push((sm, -sc));
                j += 1;
                continue;
            }
            match ord.cmp(&self.terms[i].0, &sm) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((sm, -sc));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &self.terms[i].1 - &sc;
                    if !v.is_zero() {
                        out.push((sm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        OPoly { terms: out }
    }
}

/// Full reduction of `p` by `basis`.
fn reduce(p: &OPoly, basis: &[OPoly], ord: MonomialOrder) -> OPoly {
    let mut rem: Vec<(Mono, FieldElement)> = Vec::new();
    let mut cur = p.clone();
    'outer: while !cur.is_zero() {
        let (lm, lc) = cur.terms[0].clone();
        for g in basis {
            if mono_divides(g.lm(), &lm) {
                let m = mono_div(&lm, g.lm());
                let c = &lc / &g.terms[0].1;
                cur = cur.sub_scaled(&c, &m, g, ord);
                continue 'outer;
            }
        }
        rem.push((lm, lc));
        cur.terms.remove(0);
    }
    OPoly { terms: rem }
}

fn s_poly(a: &OPoly, b: &OPoly, ord: MonomialOrder) -> OPoly {
    let l = mono_lcm(a.lm(), b.lm());
    let ma = mono_div(&l, a.lm());
    let mb = mono_div(&l, b.lm());
    let zero = OPoly { terms: Vec::new() };
    let sa = zero.sub_scaled(&(-&a.terms[0].1.inv().unwrap()), &ma, a, ord);
    sa.sub_scaled(&b.terms[0].1.inv().unwrap(), &mb, b, ord)
}

fn coprime(a: &Mono, b: &Mono) -> bool {
    (0..NVARS).all(|i| a[i] == 0 || b[i] == 0)
}

/// A reduced Groebner basis, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    gens: Vec<Poly>,
    order: MonomialOrder,
}

impl IdealBasis {
    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The unit ideal.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Normal form of `p`.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let basis: Vec<OPoly> = self.gens.iter().map(|g| OPoly::from_poly(g, self.order)).collect();
        reduce(&OPoly::from_poly(p, self.order), &basis, self.order).to_poly()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Generators free of `vars`. Generates the elimination ideal when the
    /// order eliminates `vars`.
    pub fn without(&self, vars: &[usize]) -> Vec<Poly> {
        self.gens.iter().filter(|g| vars.iter().all(|&v| !g.involves(v))).cloned().collect()
    }
}

pub fn groebner_basis(gens: &[Poly], order: MonomialOrder) -> Result<IdealBasis> {
    groebner_basis_with_budget(gens, order, DEFAULT_BUDGET)
}

pub fn groebner_basis_with_budget(gens: &[Poly], order: MonomialOrder, budget: usize) -> Result<IdealBasis> {
    let nonzero: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    for g in &nonzero {
        g.check_compatible(nonzero[0])?;
    }
    let mut basis: Vec<OPoly> = nonzero.iter().map(|g| OPoly::from_poly(g, order).monic()).collect();
    // pairs (i, j), i < j
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut reductions = 0usize;
    while let Some((i, j)) = pairs.pop() {
        done.insert((i, j));
        let (li, lj) = (*basis[i].lm(), *basis[j].lm());
        if coprime(&li, &lj) {
            continue;
        }
        let l = mono_lcm(&li, &lj);
        // chain criterion
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && mono_divides(basis[k].lm(), &l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        reductions += 1;
        if reductions > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let r = reduce(&s_poly(&basis[i], &basis[j], order), &basis, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pairs.push((k, n));
        }
        // small pairs first keeps intermediate growth down
        pairs.sort_by(|a, b| {
            let da = mono_degree(&mono_lcm(basis[a.0].lm(), basis[a.1].lm()));
            let db = mono_degree(&mono_lcm(basis[b.0].lm(), basis[b.1].lm()));
            db.cmp(&da)
        });
    }
    Ok(IdealBasis { gens: interreduce(basis, order), order })
}

fn interreduce(basis: Vec<OPoly>, order: MonomialOrder) -> Vec<Poly> {
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut min: Vec<OPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            l != k && mono_divides(h.lm(), g.lm()) && (h.lm() != g.lm() || l < k)
        });
        if !redundant {
            min.push(g.clone());
        }
    }
    let mut out: Vec<OPoly> = Vec::with_capacity(min.len());
    for k in 0..min.len() {
        let others: Vec<OPoly> = min.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, h)| h.clone()).collect();
        let head = OPoly { terms: vec![min[k].terms[0].clone()] };
        let tail = OPoly { terms: min[k].terms[1..].to_vec() };
        let mut r = reduce(&tail, &others, order);
        r.terms.insert(0, head.terms[0].clone());
        out.push(r.monic());
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out.into_iter().map(|p| p.to_poly()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{T, X, Y};

    fn v(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn coordinate_ideal() {
        let b = groebner_basis(&[v(X), v(Y)], MonomialOrder::Grlex).unwrap();
        assert_eq!(b.gens(), &[v(Y), v(X)]);
    }

    #[test]
    fn elimination_examples() {
        let ord = MonomialOrder::eliminating(&[X, Y]);
        let b = groebner_basis(&[&v(Y) - &(&v(T) * &v(X)), v(X)], ord).unwrap();
        assert!(b.contains(&v(X)) && b.contains(&v(Y)));
        assert!(b.without(&[X, Y]).is_empty());
        let b = groebner_basis(&[&v(X).pow(3) - &v(T), v(X)], ord).unwrap();
        assert!(b.without(&[X, Y]).contains(&v(T)));
    }

    #[test]
    fn twisted_cubic() {
        // x^2 - y, x^3 - t: grlex basis has the classical three quadrics
        let g = [&v(X).pow(2) - &v(Y), &v(X).pow(3) - &v(T)];
        let b = groebner_basis(&g, MonomialOrder::Grlex).unwrap();
        for p in &g {
            assert!(b.contains(p));
        }
        assert!(b.contains(&(&v(Y).pow(3) - &v(T).pow(2))));
        assert!(!b.contains(&v(X)));
    }

    #[test]
    fn budget_is_enforced() {
        let g = [&v(X).pow(3) - &v(Y), &v(Y).pow(3) - &v(T), &(&v(X) * &v(T)) - &Poly::int(1)];
        assert_eq!(groebner_basis_with_budget(&g, MonomialOrder::Grlex, 1), Err(Error::BudgetExceeded(1)));
    }
}
