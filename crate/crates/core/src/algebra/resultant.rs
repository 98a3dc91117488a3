//! Resultants by the subresultant algorithm.

use super::poly::{Poly, NVARS};
use super::gcd::prem;
use crate::error::{Error, Result};

fn lc_in(p: &Poly, var: usize) -> Poly {
    let d = p.degree_in(var) as usize;
    p.coeffs_in(var).swap_remove(d)
}

/// Resultant of `p` and `q` eliminating `var`, with the sign of the
/// Sylvester determinant.
pub fn resultant(p: &Poly, q: &Poly, var: usize) -> Result<Poly> {
    if var >= NVARS || (!p.involves(var) && !q.involves(var)) {
        return Err(Error::InvalidElimination(var));
    }
    p.check_compatible(q)?;
    if p.is_zero() || q.is_zero() {
        return Ok(Poly::zero());
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign = false;
    if a.degree_in(var) < b.degree_in(var) {
        if a.degree_in(var) % 2 == 1 && b.degree_in(var) % 2 == 1 {
            sign = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree_in(var) == 0 {
        let r = b.pow(a.degree_in(var));
        return Ok(if sign { -r } else { r });
    }
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let da = a.degree_in(var);
        let db = b.degree_in(var);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = prem(&a, &b, var);
        a = b;
        let denom = &g * &h.pow(delta);
        b = r.exact_div(&denom).expect("subresultant division is exact");
        g = lc_in(&a, var);
        if delta > 0 {
            h = g.pow(delta).exact_div(&h.pow(delta - 1)).expect("exact");
        }
        if b.is_zero() {
            return Ok(Poly::zero());
        }
        if b.degree_in(var) == 0 {
            let da = a.degree_in(var);
            let num = b.pow(da);
            let res = if da == 0 {
                num
            } else {
                num.exact_div(&h.pow(da - 1)).expect("exact")
            };
            return Ok(if sign { -res } else { res });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{T, W, X};

    #[test]
    fn cusp_elimination() {
        let u = Poly::var(X);
        let v = Poly::var(W);
        let t = Poly::var(T);
        let a = &u - &t.pow(2);
        let b = &v - &t.pow(3);
        let r = resultant(&a, &b, T).unwrap();
        let expected = &v.pow(2) - &u.pow(3);
        assert!(r == expected || r == -expected.clone(), "{}", r);
    }

    #[test]
    fn trivial_cases() {
        let x = Poly::x();
        let one = Poly::int(1);
        // Sylvester determinant of x-1, x+1
        assert_eq!(resultant(&(&x - &one), &(&x + &one), X).unwrap(), Poly::int(2));
        assert!(resultant(&x, &x, X).unwrap().is_zero());
        assert_eq!(resultant(&Poly::y(), &Poly::y(), X), Err(Error::InvalidElimination(X)));
    }

    #[test]
    fn matches_sylvester_on_quadratics() {
        // Res(x^2 + b x + c, x - r) = r^2 + b r + c up to sign (-1)^(2*1) = 1
        let x = Poly::x();
        let y = Poly::y();
        let a = &(&(&x * &x) + &(&y * &x)) + &Poly::int(3);
        let b = &x - &y;
        let r = resultant(&a, &b, X).unwrap();
        // A(y) = 2y^2 + 3 ; Res(A,B) = (-1)^{2} lc(B)^2 A(y) = 2y^2+3
        assert_eq!(r, &Poly::xy(2, 0, 2) + &Poly::int(3));
    }
}
