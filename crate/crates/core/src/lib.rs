pub mod cli;
pub mod config;
pub mod error;
pub mod experiment;
pub mod io;
pub mod nets;
pub mod linwave;
pub mod semilinear;
pub mod seminorms;
pub mod suite;
pub mod verify;

pub use error::{Error, Result};
