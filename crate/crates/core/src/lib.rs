//! Exact-arithmetic machinery for nondegenerate integrable non-Hamiltonian
//! systems: resonance analysis and truncated Poincaré–Dulac normalization of
//! polynomial vector fields, simplicial fans classifying hyperbolic domains,
//! reflection gluing of orbit cell complexes, and the marked-graph /
//! monodromy / arrangement classification data for R^n-actions on n-manifolds.
//!
//! All geometric and lattice predicates run over exact rationals; floating
//! point appears only in the numeric flow cross-checks.

pub mod cells;
pub mod classify;
pub mod doc;
pub mod exact;
pub mod fans;
pub mod models;
pub mod resonance;
pub mod vfield;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("not a member: {0}")]
    Membership(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
