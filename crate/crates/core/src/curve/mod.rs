//! Curves over finite fields, their etale double covers, and L-functions.

pub mod model;
pub mod spec;
pub mod zeta;

pub use model::{CurveModel, Point, PrimeField};
pub use spec::CurveSpec;
pub use zeta::{
    counts_from_numerator, l_function, satisfies_functional_equation, script_l, zeta_numerator, CountTable,
    CoverData, CurveSource, LSeries, LValue, QuadraticTwist,
};
