//! Representations of Beilinson algebras, Auslander-Reiten translates and
//! Jordan-type properties, computed with exact arithmetic.

pub mod algebra;
pub mod artrans;
pub mod construct;
mod error;
pub mod exactla;
pub mod jordan;
pub mod rep;

pub use algebra::AlgebraData;
pub use error::{Error, Result};
