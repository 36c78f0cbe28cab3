pub mod error;
pub mod fe1d;
pub mod fe2d;
pub mod geometry;
pub mod linalg;

pub use error::{Error, Result};
