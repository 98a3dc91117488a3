//! Exact coefficient fields and polynomial kernels.

pub mod factor;
pub mod factor_q;
pub mod field;
pub mod gcd;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod resultant;
pub mod trager;
pub mod upoly;

pub use factor::{factor_local, squarefree_part};
pub use field::{FieldElement, NumberField, Rational};
pub use gcd::poly_gcd;
pub use poly::{jacobian_det, Poly};
pub use ratfunc::{divisor_multiplicity, RationalFunction};
pub use resultant::resultant;
pub use upoly::UniPoly;
