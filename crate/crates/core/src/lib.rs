pub mod category;
pub mod choice;
pub mod cli;
pub mod complex;
pub mod derived;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod rational;
pub mod resolution;

pub use error::{Error, Result};
