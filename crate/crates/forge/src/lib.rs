//! File formats, verification suite and command-line plumbing around
//! `defect-forge-core`.

pub mod cache;
pub mod checks;
pub mod error;
pub mod export;
pub mod gen;
pub mod json;

pub use error::{ForgeError, Result};
