//! Truncated graded-commutative cohomology rings with triangular relations.
//!
//! All generators sit in degree 2, so the ring is commutative and a class is a
//! sparse polynomial in the generators. Degrees are counted in units of the
//! generator degree: a monomial `g₁^a₁ ⋯ g_m^a_m` has degree `Σ aᵢ`.

mod classes;
pub mod file;
mod model;

pub use classes::{CohomClass, Exponents, IntClass, Z2Class};
pub use model::{BottStage, ManifoldModel, Metadata, Relation};

/// Reduces an integral class coefficientwise modulo 2.
pub fn mod2(x: &IntClass) -> Z2Class {
    x.mod2()
}
