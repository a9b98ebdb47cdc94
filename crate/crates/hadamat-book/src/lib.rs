//! The guide's chapters as modules, so `cargo test --doc` runs every listing.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/cyclotomic.md")]
pub mod cyclotomic {}
#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}
#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}
#[doc = include_str!("../../../book/src/mub.md")]
pub mod mub {}
#[doc = include_str!("../../../book/src/equivalence.md")]
pub mod equivalence {}
#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}
#[doc = include_str!("../../../book/src/cli-report.md")]
pub mod cli_report {}
