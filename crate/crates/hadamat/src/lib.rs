//! Exact verification of complex Hadamard matrices, mutually unbiased bases
//! and Hadamard equivalence over cyclotomic fields.
//!
//! Every matrix entry is an element of some `Q(ζ_M)` represented exactly, so
//! each verdict the crate returns is a proof rather than a floating-point
//! estimate. Floating-point values appear only as cross-checks and in reports.
//!
//! The main entry points:
//!
//! * [`CycloNum`]: arithmetic in `Q(ζ_M)`, `M <= 360`.
//! * [`CycloMatrix`]: Gram matrices, Hadamard and unitarity verdicts, dephasing.
//! * [`constructions`]: Fourier and circulant matrices, the named catalog.
//! * [`mub`]: mutual unbiasedness of bases.
//! * [`equivalence`]: exhaustive Hadamard-equivalence search with witnesses.
//! * [`search`]: enumeration of circulant Butson-type Hadamard matrices.
//! * [`report`]: the claim-by-claim verification report.

pub mod constructions;
pub mod cyclotomic;
pub mod equivalence;
mod error;
pub mod format;
pub mod matrix;
pub mod mub;
pub mod report;
pub mod search;

pub use cyclotomic::CycloNum;
pub use error::{Error, Result};
pub use matrix::{CycloMatrix, HadamardVerdict};

/// Root order used for the named catalog: every root of unity that occurs in
/// it (orders 3, 4, 5, 6, 10 and 12) lives in `Q(ζ_60)`.
pub const CATALOG_ORDER: u32 = 60;
