//! Exact scalars, polynomials, coefficient rings and linear algebra.

mod lff;
pub mod linalg;
mod ratfn;
mod ring;
pub mod text;
mod ypoly;
mod zpoly;

pub use lff::LinearFactorFraction;
pub use linalg::{independent_subset, kernel_dimension, rank, rank_over_rationals, solve, EchelonBasis};
pub use ratfn::{EpsPolynomial, UnivariateRationalFunction};
pub use ring::{parse_rational, rat, ratio, Rational, Ring};
pub use text::{parse_y_polynomial, parse_z_polynomial};
pub use ypoly::{YMonomial, YPolynomial, YVar};
pub use zpoly::{elementary_symmetric, ZMonomial, ZPolynomial};
