//! Exact symbolic kernel for left-invariant Riemannian geometry on
//! low-dimensional Lie groups.
//!
//! Everything is computed over canonical-form multivariate polynomials with
//! rational coefficients, so geometric identities are decided exactly:
//!
//! * [`lie`] — structure constants, brackets, Jacobi residuals, involutivity;
//! * [`riemannian`] — Levi-Civita connection via the Koszul formula,
//!   curvature, sectional and Ricci curvature, Einstein defect;
//! * [`hermitian`] — adapted almost Hermitian structures, Nijenhuis tensor,
//!   Kähler defect;
//! * [`foliation`] — second fundamental forms and the conformal, Riemannian,
//!   minimal and totally geodesic predicates;
//! * [`families`] — built-in bracket families and the golden report that
//!   re-verifies every attached identity;
//! * [`algebra`] / [`expr`] — the text formats for algebras and expressions;
//! * [`numeric`] — an independent rational recomputation used as an oracle,
//!   sampled in parallel under the `parallel` feature.
//!
//! Predicates come back as [`constraint::ConstraintSet`] values: the empty
//! set means "holds identically in the parameters", otherwise the set cuts
//! out the locus where the predicate holds.

#![forbid(unsafe_code)]
// index loops mirror the tensor formulas
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod constraint;
pub mod error;
pub mod expr;
pub mod families;
pub mod foliation;
pub mod hermitian;
pub mod lie;
pub mod numeric;
pub mod pipeline;
pub mod poly;
pub mod rational;
pub mod report;
pub mod riemannian;

pub use constraint::ConstraintSet;
pub use error::{GeometryError, ParseError};
pub use lie::{LieAlgebraSpec, Vector};
pub use poly::{Monomial, ParameterTable, Polynomial};
pub use rational::Rational;
