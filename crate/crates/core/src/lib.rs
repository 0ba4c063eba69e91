//! Exact computation of twisted Spin^c indices, Witten genera and elliptic
//! genera of generalized complete intersections.
//!
//! The ambient manifolds are products of complex projective spaces and
//! generalized Bott manifolds, presented by torsion-free cohomology rings with
//! triangular relations. Everything is computed over exact rationals: a
//! vanishing result is certified by every coefficient being exactly zero.
//!
//! The layers are:
//!
//! * [`cohomology`]: the truncated graded ring, integration against the
//!   fundamental class and mod-2 reduction.
//! * [`qseries`]: truncated power series in `q` with cohomology coefficients.
//! * [`charclass`]: the multiplicative sequences `Â`, `Q₁`, `Q₂`, `Q₃` and the
//!   classical classes evaluated on explicit root multisets.
//! * [`genus`]: the index `φᶜ(M;V,W)`, its specializations and the
//!   Euler-class evaluation of Witten genera of complete intersections.
//! * [`conditions`]: string and Fano hypotheses, and theorem applicability.

pub mod charclass;
pub mod cohomology;
pub mod conditions;
mod error;
pub mod genus;
pub mod qseries;

pub use charclass::{LineBundleSum, RootBundle};
pub use cohomology::{CohomClass, Exponents, IntClass, Metadata, ManifoldModel, Z2Class};
pub use conditions::{ConditionReport, FanoReport, TheoremVerdict};
pub use error::{Error, Result};
pub use genus::{EvalPath, GenusResult, ModularFit};
pub use qseries::QSeries;

/// Exact rational scalar used throughout.
pub type Rational = num::BigRational;

/// Truncation order used when the caller does not pick one.
pub const DEFAULT_Q_ORDER: usize = 5;
