//! Exact coefficient field Q(q, p, s) with `q`, `p` invertible.

mod gcd;
mod laurent;
mod scalar;

pub use gcd::{gcd, lcm};
pub use laurent::{deglex_cmp, Exps, LaurentPoly, VAR_NAMES};
pub use scalar::{Assignment, ParamScalar};

/// `1 + s^2`, the normalisation appearing in every sphere projector.
pub fn one_plus_s2() -> ParamScalar {
    ParamScalar::one() + ParamScalar::s().mul(&ParamScalar::s())
}
