pub mod error;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{FieldSpec, Rational, Scalar};
pub mod algebra;
pub mod check;
pub mod catalog;
pub mod hopf;
pub mod tensor;
pub mod action;
pub mod double;
pub mod reduction;
pub mod rtt;
pub mod format;
pub mod report;
pub mod suites;
