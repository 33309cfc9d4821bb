//! Stabilizer Bell inequalities for graph states.
//!
//! This crate constructs graph-state stabilizer groups, computes exact
//! local-hidden-variable bounds for sums of stabilizing operators, and
//! searches for the Bell operators with the largest violation ratio
//! D = q/(2p−q), in exhaustive and graph-symmetric modes. A built-in
//! catalog covers the graph-state classes on up to six qubits, and a
//! dense statevector verifier cross-checks every quantum value.

pub mod catalog;
pub mod error;
pub mod graph;
pub mod lhv;
pub mod metrics;
pub mod pauli;
pub mod published;
pub mod report;
pub mod search;
pub mod stabilizer;
pub mod state;

mod bits;

pub use catalog::{catalog_lookup, validate_catalog, CATALOG};
pub use error::{Error, Result};
pub use graph::{Automorphism, GraphSpec};
pub use lhv::{Assignment, BellOperator, ClassicalBoundResult};
pub use metrics::Rational;
pub use pauli::{Letter, PauliString};
pub use search::{InequalityRecord, SearchConfig, SearchMode, SearchOutcome};
pub use stabilizer::{StabilizerElement, StabilizerGroup};
