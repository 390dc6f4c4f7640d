//! Command-line front end and std-only drivers for `bellkit-core`: JSON-lines
//! records, input parsing and rayon-parallel enumeration, classification and
//! verification.

pub mod cli;
pub mod error;
pub mod input;
pub mod output;
pub mod parallel;

pub use cli::run;
pub use error::{CliError, Result};
