pub mod arith;
pub mod classify;
pub mod cli;
pub mod construct;
pub mod error;
pub mod sieve;
pub mod survey;

pub use error::{Error, Result};
