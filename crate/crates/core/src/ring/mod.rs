//! Exact arithmetic over Q[pi]: scalars, multivariate polynomials, substitutions and the
//! polynomial text syntax.

mod poly;
mod scalar;
mod subst;
pub mod text;

pub use poly::{rat, Exponents, MonomialOrder, Poly, Ring, PI};
pub(crate) use poly::{divides, lcm, quotient};
pub use scalar::{Scalar, Valuation};
pub use subst::Substitution;
pub use text::{parse_poly, parse_poly_list, parse_poly_with_inverses};
