//! Exact symbolic-numeric toolkit for isomonodromic Garnier systems.
//!
//! The crate verifies, in exact rational arithmetic, the structure of the
//! isomonodromy systems attached to the fourth Painlevé equation and to the
//! degenerate Garnier systems of type 9/2 and 5/2+3/2: Painlevé and
//! quasi-Painlevé tests, singularity reductions of the Schrödinger
//! potentials, secondary isomonodromy flows and their fourth-order scalar
//! reductions, second singularity reductions along Puiseux branches, and
//! genus checks of the classical-limit curves. A small floating-point lab
//! corroborates the branch-point structure numerically.

pub mod error;
pub mod symbols;
pub mod poly;
pub mod gcd;
pub mod ratfunc;
pub mod parser;
pub mod series;
pub mod linalg;
pub mod models;
pub mod painleve;
pub mod families;

pub use error::*;
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use series::{Expansion, TruncatedSeries};
pub use symbols::{Symbol, SymbolRegistry};
