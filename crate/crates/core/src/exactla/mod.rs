//! Exact linear algebra over Q and prime fields.

pub mod field;
pub mod groebner;
pub mod mat;
pub mod pencil;
pub mod poly;
pub mod sparse;

pub use field::{FieldError, FieldSpec, Scalar};
pub use mat::Mat;
