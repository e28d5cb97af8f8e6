//! Exact arithmetic for Q(i) and for rational functions in the
//! equivariant parameters `t1`, `t2`.

mod gaussian;
mod poly2;
mod ratfunc;

pub use gaussian::GaussianRational;
pub use poly2::Poly2;
pub use ratfunc::RatFunc;

#[allow(unused_imports)]
pub(crate) use poly2::{qp_div_exact, qp_divrem, qp_gcd, qp_is_zero, qp_mul, qp_scale, qp_sub, qp_trim, QPoly};
