//! Exact integer algebra for the Virasoro-Magri Poisson vertex algebra
//! `ℤ[L, ∂L, ∂²L, …]` and its categorification on the Grothendieck groups of
//! symmetric-group and nil-Coxeter representations.
//!
//! Everything is computed over `ℤ` (big integers) except the `G₀` realization
//! in [`nilcox::QPoly`], which needs divided powers.

pub mod bracket;
pub mod diffpoly;
pub mod error;
pub mod k0sigma;
pub mod lambda;
pub mod nilcox;
pub mod partition;
pub mod report;
pub mod text;
pub mod util;
pub mod verify;
pub mod weyl;
pub mod zhu;

pub use diffpoly::{AlgebraCtx, DiffPoly, Monomial};
pub use error::{Error, Result};
pub use k0sigma::K0SigmaElem;
pub use lambda::{BiLambdaPoly, LambdaPoly};
pub use nilcox::{G0NElem, K0NElem, QPoly, XPoly};
pub use partition::Partition;
pub use report::{Record, Report};
pub use weyl::{IndResCombo, WeylElem};
