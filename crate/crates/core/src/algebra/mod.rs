//! Exact arithmetic over Q(zeta_N)(sqrt q) and Laurent expressions in `t = q^{-s}`.

pub mod cyclotomic;
pub mod fraction;
pub mod laurent;

pub use cyclotomic::{parse_rational, q_pow, rat, ratio, rational_string, CycNumber, Rational};
pub use fraction::ExpFraction;
pub use laurent::{DerivativeValue, ExpPoly, HalfInteger};
