// Validity checks are written as negated comparisons so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adaptation;
pub mod campaign;
pub mod engine;
pub mod error;
pub mod io;
pub mod metrics;
pub mod problems;
pub mod rng;
pub mod scalarize;
pub mod stats;
pub mod types;
pub mod weights;

pub use error::{Error, Result};
pub use rng::RngStream;
pub use types::{
    dominates, euclidean_distance, DecisionVector, Individual, ObjectiveVector, ReferencePoint,
    WeightVector,
};
