//! Exact scalar and polynomial arithmetic.

mod dense;
mod error;
mod field;
mod gcd;
mod poly;
mod roots;

pub use dense::UniPoly;
pub use error::{AlgebraError, AlgebraResult, SplitEvent};
pub use field::{fmt_rational, rat, ratio, rational_sign, Class, Elem, ElemDisplay, ExtField, Level, Rational};
pub use gcd::{
    content_in, dense_resultant, is_unit_constant, lc_in, poly_gcd, poly_gcd_many, prem, resultant, squarefree_part,
    squarefree_part_all,
};
pub use poly::{vars, Monomial, SparsePoly, Vars};
pub use roots::{rational_roots, univariate_root_orbits, RootOrbit};

/// Extends `field` by a root of the univariate `modulus` (in variable
/// `var`), named `name`.
pub fn ext_adjoin(field: &ExtField, name: &str, modulus: &SparsePoly, var: usize) -> AlgebraResult<ExtField> {
    field.adjoin(name, &modulus.to_univariate(var)?)
}

/// Inverse of `x`, or a split of the tower level at which `x` is a zero
/// divisor.
pub fn ext_invert(field: &ExtField, x: &Elem) -> AlgebraResult<Elem> {
    field.inv(x)
}
