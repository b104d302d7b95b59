//! Algebraic L-values of quadratic and cubic twists of the CM curve
//! y² = 4x³ − 27 (X₀(27)) and their 2-adic and 3-adic valuations.

pub mod analytic;
pub mod bsd;
pub mod classifier;
pub mod eisenstein;
pub mod error;
pub mod kelement;
pub mod lseries;
pub mod models;
pub mod mp;
pub mod phi;
pub mod recognize;
pub mod series;
pub mod table;

pub use eisenstein::{EisensteinInt, PrimaryPrime, ResidueSymbolValue};
pub use error::{Error, Result};
pub use kelement::KElement;
pub use mp::{Complex, PrecisionContext, Real};
