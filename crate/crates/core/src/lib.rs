pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod curve;
pub mod picard;
pub mod bundles;
pub mod eisenstein;
pub mod degrees;
pub mod report;
pub mod workspace;
