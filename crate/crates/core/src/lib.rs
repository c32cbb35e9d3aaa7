//! Integer complexity and its defect, computed and checked at scale.
//!
//! - [`complexity`]: the `||n||` table, a brute-force oracle and Selfridge's
//!   `E(k)`.
//! - [`defect`]: exact defect keys and thresholds, leaders, stability and
//!   the sorted defect sets.
//! - [`ldp`]: low-defect polynomials, their evaluation at powers of 3 and
//!   3-representation search.
//! - [`cover`]: the finite covering sets of low-defect pairs and their
//!   verification against a table.
//! - [`ordinal`]: natural sum and product below ω^ω.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod complexity;
pub mod cover;
pub mod defect;
mod error;
mod exact;
pub mod ldp;
pub mod ordinal;

pub use complexity::{oracle_complexity, selfridge_e, BuildMode, ComplexityTable};
pub use cover::{build_s_k_alpha, build_s_r, verify_cover, CoverReport, CoverSet, Provenance};
pub use defect::{compare_defects, defect_key, DefectKey, DefectThreshold, StabilityStatus, Verdict};
pub use error::{Error, ErrorKind, Result};
pub use ldp::{Form, LdpExpr, LowDefectPair, MultilinearPoly};
pub use ordinal::OrdinalCnf;
