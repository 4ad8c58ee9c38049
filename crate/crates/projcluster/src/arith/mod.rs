//! Exact rationals, Laurent polynomials and reduced rational functions.

mod gcd;
mod laurent;
mod monomial;
mod positivity;
mod ratfunc;
mod text;
mod var;

pub use gcd::{div_exact, gcd};
pub use laurent::Laurent;
pub use monomial::Monomial;
pub use positivity::{certify_positive, is_positive_laurent, random_positive_point, Positivity};
pub use ratfunc::RatFunc;
pub use var::Var;

use num_traits::ToPrimitive;

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parse `"3"`, `"-3/7"`.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    s.trim().parse::<Rat>().map_err(|e| crate::Error::Parse(format!("{s}: {e}")))
}
