
pub mod algebra;
pub mod checks;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod functors;
pub mod gdim;
pub mod hom;
pub mod linalg;
pub mod resolution;
pub mod tensor;

pub use error::{Error, Result};
