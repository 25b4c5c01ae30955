//! Finite quasigroups, quasigroupoids, matched pairs and the weak Hopf
//! quasigroups built from them, with exhaustive axiom checkers.
//!
//! Every structure is finite and index based. Checkers never stop at the
//! first failure; they return a [`StructureReport`] listing every violated
//! law together with witness indices.

pub mod bowtie;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod matched_pair;
pub mod quasigroup;
pub mod quasigroupoid;
pub mod report;
pub mod whq;

pub use error::Error;
pub use report::{Check, StructureReport, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;
