pub mod code;
pub mod error;
pub mod field;
pub mod lcd;
pub mod masking;
pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod reference_cases;

pub use error::{Error, Result};
