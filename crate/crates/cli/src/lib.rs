//! Command-line front end for `walshcode-core`: JSON function descriptors,
//! hex formats, codeword and enumerator emitters, and parallel enumeration.

pub mod commands;
pub mod descriptor;
pub mod emit;
pub mod error;
pub mod hex;
pub mod parallel;
pub mod report;

pub use commands::run;
pub use descriptor::FunctionDescriptor;
pub use error::{CliError, Result};
