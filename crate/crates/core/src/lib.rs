#![no_std]
extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod error;
pub mod factor_sl2;
pub mod factor_sln;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod spectrum_split;
pub mod unipotent;

pub use error::{Error, Result};
