#![no_std]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod hadamard;
pub mod inequality;
pub mod lhv;
pub mod polynomial;

pub use error::{Error, Result};
