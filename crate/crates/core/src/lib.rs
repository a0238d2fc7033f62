//! Minimal graded free resolutions over standard graded algebras and the ideals of minors
//! of their differentials.

pub mod arith;
pub mod deformation;
pub mod error;
pub mod fiber;
pub mod linalg;
pub mod minors;
pub mod resolution;
pub mod scenario;
pub mod stretched;
pub mod ring;

pub use error::{Error, Result};
