//! Exact construction and verification of the conformal-block polynomials
//! `P_z(λ)` of `gl_m`, their higher-level generalizations, and the
//! associated dimension counts and KZ equations.
//!
//! All arithmetic is over the rationals; there is no floating point
//! anywhere in the crate.

pub mod blocks;
mod error;
pub mod exact;
pub mod kz;
pub mod localization;
pub mod operators;

pub use error::{Error, Result};
pub use exact::{
    LinearFactorFraction, Rational, Ring, UnivariateRationalFunction, YMonomial, YPolynomial, YVar,
    ZPolynomial,
};
pub use localization::{LocalizationSum, Partition, ZAssignment};
