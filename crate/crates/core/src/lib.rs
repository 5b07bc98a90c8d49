//! Exact computations on finite complex reflection groups: cyclotomic
//! arithmetic, group closure, reflection arrangements, the quadratic map
//! `H ↦ α_H²`, 𝒜-indices, the character family χₙ and numeric monodromy.

pub mod arrangement;
pub mod catalog;
pub mod cyclo;
pub mod error;
pub mod kappa;
pub mod matgroup;
pub mod matrix;
pub mod monodromy;
pub mod poly;
pub mod quadmap;
pub mod repfamily;
pub mod report;

pub use cyclo::CycNum;
pub use error::{Error, Result};
pub use matrix::{Matrix, Vector};
