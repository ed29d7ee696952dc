//! Exact polynomial arithmetic and root structure.
//!
//! Coefficients are exact Gaussian rationals throughout; floats appear only
//! in certified numeric roots.

mod centroid;
mod gaussian;
mod newton;
mod parse;
mod poly;
mod roots;
mod squarefree;

pub use centroid::{centroid_data, CentroidData, PenultimateRoot};
pub use gaussian::{
    format_rational, rat, rat_i64, rational_sqrt, rational_to_f64_down, rational_to_f64_up,
    GaussianRational, Rational,
};
pub use newton::{
    pairwise_square_sum, power_sums, sum_deviations, sum_squared_deviations, PowerSums,
};
pub use parse::{
    format_nodes, format_polynomial, parse_nodes, parse_polynomial, parse_scalar,
};
pub use poly::{count_distinct_real_roots, is_real_rooted, Polynomial};
pub use roots::{
    aberth, derivative_roots, root_multiset, ComplexApprox, DerivativeRoots, RootEntry,
    RootFindConfig, RootMultiset, RootValue,
};
pub use squarefree::squarefree_decompose;

use thiserror::Error;

/// Domain and resource errors for exact polynomial operations.
#[derive(Debug, Error)]
pub enum PolyError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
}

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Numeric root-finding failures.
#[derive(Debug, Error)]
pub enum RootFindError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("root iteration did not converge within budget")]
    NonConvergence { best: Vec<ComplexApprox> },
    #[error("certification failed: {message}")]
    Uncertified { message: String },
}
