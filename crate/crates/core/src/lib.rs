//! Exact LDU factorization of totally positive matrices through weighted
//! planar networks.
//!
//! A totally positive matrix of order `n + 1` is parametrized by `(n + 1)^2`
//! positive weights `t[a][b]`. The weights with `a > b` label the fall edges of
//! an L-type network, the weights `t[i][i]` label the horizontal edges of a
//! D-type network, and the weights with `a < b` label the rise edges of a
//! U-type network. Concatenating the three networks gives the essential planar
//! network whose path-sum weight matrix is `A = L * D * U`.
//!
//! The crate computes the factors three independent ways:
//!
//! - [`network`]: by exhaustive lattice-path enumeration,
//! - [`formulas`]: by closed-form sums over index sequences,
//! - [`formulas::l_recursive`] / [`formulas::u_recursive`]: by bordering recursions,
//!
//! and goes back from a matrix to its weights in [`factorize`].
//!
//! Everything is generic over a [`Scalar`]; exact work uses [`Rat`].

pub mod error;
pub mod factorize;
pub mod formulas;
pub mod matrix;
pub mod network;
pub mod params;
pub mod scalar;

pub use error::{Error, Result};
pub use factorize::{assemble, factor_tp, recover_params, tp_inverse, Factorization};
pub use matrix::{is_totally_positive, ldu_eliminate, mat_mul, minor, Ldu, Matrix, MinorWitness, TpReport};
pub use network::{
    build_network, concatenate, enumerate_paths, export_dot, weight_matrix, Edge, FactorKind, LatticePath,
    NetworkKind, PlanarNetwork, Point,
};
pub use params::{ParamSet, Positivity};
pub use scalar::{parse_rat, Scalar};

/// Exact arbitrary-precision rational.
pub type Rat = num_rational::BigRational;
/// Dense matrix of exact rationals.
pub type RatMatrix = Matrix<Rat>;
/// Network weights over exact rationals.
pub type RatParamSet = ParamSet<Rat>;
/// Planar network with exact rational edge weights.
pub type RatNetwork = PlanarNetwork<Rat>;
/// LDU factorization over exact rationals.
pub type RatFactorization = Factorization<Rat>;

/// Double precision matrix, for approximate work.
pub type F64Matrix = Matrix<f64>;
/// Double precision network weights.
pub type F64ParamSet = ParamSet<f64>;
