//! Weight spectral sequences of semistable degenerations, computed exactly
//! over the rationals.
//!
//! The crate assembles the E1 page of the weight spectral sequence from
//! stratum cohomology data, computes E2 with its induced monodromy
//! operator, compares monodromy and weight filtrations, and runs the
//! threefold Lefschetz/Hodge-index checks on concrete instances.

pub mod error;
pub mod filtration;
pub mod instances;
pub mod lefschetz;
pub mod ratlin;
pub mod specseq;
pub mod strata;

pub use error::{Error, Result};
