//! Exact cohomology of Lie algebras with invariant complex structures.
//!
//! Input is a set of structure equations `dα_i` over the Gaussian rationals
//! (see [`dsl`]). From them the crate builds the Chevalley-Eilenberg bicomplex
//! and computes Dolbeault, Bott-Chern, Aeppli and de Rham numbers, checks
//! invariant Hermitian metrics against pluriclosedness conditions, and runs
//! cohomological obstructions to astheno-Kähler metrics.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod dsl;
pub mod error;
pub mod exterior;
pub mod form;
pub mod linalg;
pub mod metrics;
pub mod obstructions;
pub mod report;
pub mod sampling;
pub mod scalar;

pub use algebra::AlgebraSpec;
pub use catalog::{catalog_get, CatalogEntry};
pub use cohomology::{Bicomplex, HodgeTable, Theory, Validity};
pub use dsl::{parse_structure_file, ParseError};
pub use error::{Error, Result};
pub use exterior::{validate, ValidationReport};
pub use form::{BasisForm, Bidegree, Form};
pub use metrics::{build_metric, check_condition, Condition, MetricForm};
pub use obstructions::{obstruct, ObstructionReport};
pub use report::{emit_report, Report};
pub use scalar::GaussianRational;
