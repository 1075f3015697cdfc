//! Nielsen coincidence invariants in positive codimension.
//!
//! The crate answers looseness and minimum-coincidence questions for pairs of
//! maps `f₁, f₂ : M → N` in the settings where they are decidable from
//! algebraic data:
//!
//! * [`circle`]: targets `N = S¹`, where everything is read off `f₁* − f₂*` on `H₁`;
//! * [`sphere`]: maps `S^m → S^n`, via James–Hopf (Γ) vectors of stable stems;
//! * [`reidemeister`]: Reidemeister sets, abelian and small finite nonabelian;
//! * [`orientation`]: whether coincidence indices live in `ℤ` or `ℤ/2`;
//! * [`immersion`]: self-intersection invariants of framed planar curves;
//! * [`torus`]: a grid oracle that counts coincidence components directly.
//!
//! [`abelian`] and [`snf`] hold the exact integer algebra the rest builds on.

pub mod abelian;
pub mod circle;
pub mod citation;
pub mod data;
pub mod immersion;
pub mod matrix;
pub mod orientation;
pub mod reidemeister;
pub mod snf;
pub mod sphere;
pub mod torus;
pub mod union_find;

pub use abelian::{AlgebraError, Cardinality, FgAbelianGroup, GroupElement, GroupHom};
pub use citation::Citation;
pub use matrix::IntMatrix;
