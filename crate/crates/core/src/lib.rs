//! Exact models of two integer-parameter threshold neurons and the machinery
//! to measure their computational capacity on Boolean functions:
//!
//! - [`models::LTUParams`]: the linear threshold unit, firing iff the weighted
//!   sum of its binary inputs reaches a threshold.
//! - [`models::NLTUParams`]: the saturating-subunit variant, where synapses are
//!   grouped into subunits whose local drive is clipped at a saturation level
//!   before the somatic sum is thresholded.
//!
//! On top of the models sit an exhaustive, symmetry-pruned enumerator of all
//! computable functions under a per-input synapse budget ([`search`]), an
//! independent linear-separability oracle ([`oracle`]), and report pipelines
//! ([`experiments`]) producing the capacity tables and golden-example checks.

pub mod error;
pub mod experiments;
pub mod models;
pub mod oracle;
pub mod search;
pub mod truthtable;

pub use error::{Error, Result};
