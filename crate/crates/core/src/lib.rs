pub mod decompose;
pub mod error;
pub mod json;
pub mod lie;
pub mod matrix;
pub mod poly;
pub mod projectors;
pub mod report;
pub mod roots;
pub mod sampling;
pub mod scalar;
pub mod spectral;

pub use error::{JordanError, Result};
