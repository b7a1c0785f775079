//! Exact computation of indefinite theta series.
//!
//! Given an indefinite binary quadratic form `Q(m,n) = am² + 2bmn + cn²`
//! with positive coefficients and a doubly periodic coefficient function
//! `f` whose horizontal and vertical line sums vanish, the series
//!
//! ```text
//! Θ_{Q,f} = Σ_{m≥0,n≥0} f(m,n) q^{Q(m,n)} − Σ_{m<0,n<0} f(m,n) q^{Q(m,n)}
//! ```
//!
//! coincides (up to an integer multiple per coset) with a sum of Hecke's
//! indefinite theta series attached to lattice cosets in a real quadratic
//! algebra. This crate computes both sides with exact rational arithmetic,
//! classifies the dihedral orbit data parametrizing admissible `f`, converts
//! between the two presentations, and searches for linear relations.
//!
//! Everything is exact: no floating point enters any coefficient or any
//! membership decision.

pub mod arith;
pub mod catalog;
mod enumerate;
pub mod error;
pub mod exec;
pub mod hecke;
pub mod linalg;
pub mod mat2;
pub mod orbits;
pub mod periodic;
pub mod qseries;
pub mod quadfield;
pub mod quadform;
pub mod relations;
pub mod theta;
pub mod wire;

pub use arith::Rational;
pub use error::{Error, Result};
pub use exec::Exec;
pub use hecke::{CosetDecomposition, HeckeCoset, QuadLattice};
pub use orbits::{GroupAction, OrbitAnalysis, OrbitRecord, Parity};
pub use periodic::PeriodicFunction;
pub use qseries::QSeries;
pub use quadfield::{ConeSector, QuadFieldElem};
pub use quadform::QuadForm;
pub use relations::RelationReport;

/// Truncation order used when a caller does not choose one.
pub const DEFAULT_PRECISION: u64 = 100;
