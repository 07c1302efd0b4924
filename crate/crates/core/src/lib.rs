pub mod biquandle;
pub mod bracket;
pub mod diagram;
pub mod error;
pub mod fuzz;
pub mod graphs;
pub mod ideals;
pub mod poly;

pub use error::{Error, Result};
