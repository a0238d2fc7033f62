//! Exact scalars, monomials in degrevlex order, and sparse polynomials.

pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use field::{field_ops, Field, FieldOp, FieldScalar, PrimeField};
pub use monomial::{monomial_cmp, Monomial};
pub use parse::parse_polynomial;
pub use poly::{poly_mul, Polynomial};
