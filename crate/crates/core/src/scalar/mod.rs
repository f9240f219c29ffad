//! Exact scalars: rationals, cyclotomic numbers, and polynomials in kappa.

pub mod cyclotomic;
mod kappa;
mod literal;
pub(crate) mod qpoly;
mod sign;

pub use cyclotomic::{cyc_reduce, cyclotomic_polynomial, totient, Cyclotomic, CyclotomicField};
pub use kappa::Scalar;
pub use literal::{parse_cyclotomic, parse_rational, parse_scalar};
pub use sign::{real_cmp, real_part, scalar_real_sign};

pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for p/q.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
