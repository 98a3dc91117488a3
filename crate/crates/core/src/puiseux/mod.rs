//! Puiseux parametrizations of plane curve branches at the origin.

pub mod branch;
pub mod newton;
pub mod series;

use std::sync::Arc;

pub use branch::{proportional, Branch, Ratio};
pub use series::Series;

use crate::algebra::factor::factor_local_detailed;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// Default starting precision for a curve of total degree `d`.
pub fn default_precision(d: u32) -> usize {
    (4 * d * d).max(8) as usize
}

/// One branch (or conjugate orbit) per analytic branch of `h = 0` through
/// the origin, each tagged with its irreducible factor. Series are
/// expanded to at least `n` terms.
pub fn newton_puiseux(h: &Poly, n: usize) -> Result<Vec<Arc<Branch>>> {
    if h.is_constant() {
        return Err(Error::ZeroPolynomial);
    }
    let fac = factor_local_detailed(h)?;
    let out: Vec<Arc<Branch>> = fac.factors.into_iter().flat_map(|f| f.branches).collect();
    for b in &out {
        b.y_series(n);
    }
    Ok(out)
}

/// `p` restricted to the branch, modulo `t^n`.
pub fn compose(p: &Poly, b: &Branch, n: usize) -> Result<Series> {
    b.compose(p, n)
}

/// Whether `p` vanishes identically on the branch.
pub fn certified_zero(p: &Poly, b: &Branch) -> Result<bool> {
    b.certified_zero(p)
}
