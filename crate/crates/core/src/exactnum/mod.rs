//! Exact scalars: rationals and elements of cyclotomic fields, with certified
//! real enclosures for ordering decisions.

mod cyclo;
mod interval;
pub mod linalg;
mod parse;
pub mod poly;
mod trig;

pub use cyclo::{cyclotomic_polynomial, euler_phi, lcm, prime_factors, Cyclo};
pub use interval::{
    cmp_real, embed, enclose, precision_cap, sign_real, Embedding, Interval, DEFAULT_PRECISION_CAP,
    PRECISION_ENV,
};
pub use parse::{cos_pi, parse_cyclo, parse_rational, sin_pi, sqrt_int};

/// Conformal dimensions and other plain rationals.
pub type Rational = num_rational::BigRational;
