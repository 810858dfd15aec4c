pub mod bcp;
pub mod cli;
pub mod encoding;
pub mod error;
pub mod numtheory;
pub mod paillier;
pub mod scheme;
pub mod selftest;
pub mod signature;
pub mod variants;

pub use error::{Error, Result};
