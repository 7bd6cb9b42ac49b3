//! File formats, floating-point spectra, parallel drivers and the command
//! line for `sunada-core`.

pub mod acceptance;
pub mod bench;
pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;
pub mod random;
pub mod spectrum;

pub use error::{Error, Result};
