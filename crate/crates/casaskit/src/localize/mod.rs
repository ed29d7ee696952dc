//! Root identities and localization inequalities, as machine-checked
//! residuals and interval verdicts.

mod context;
mod identities;
mod inequalities;
mod report;
mod stats;

pub use context::{derivative_root_values, exact_root_multiplicity, RealContext};
pub use identities::{lemma2_residual, sz_nagy_residuals};
pub use inequalities::{
    ca_mth_bound, common_root_interval, derivative_root_interval, gap_bounds, laguerre_interval,
    lemma7_bounds, lemma9_bounds, span_lower_bound,
};
pub use report::{
    Backend, BoundId, BoundReport, IdentityId, IdentityReport, InputsEcho, ResidualValue,
};
pub use stats::{extremal_stats, ExtremalStats};

use thiserror::Error;

use crate::polycore::{PolyError, RootFindError};

/// Numeric comparison settings for verdicts on irrational data.
#[derive(Clone, Copy, Debug)]
pub struct NumericConfig {
    /// Relative tolerance, scaled by input magnitude.
    pub rel_tol: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { rel_tol: 1e-9 }
    }
}

#[derive(Debug, Error)]
pub enum LocalizeError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Roots(#[from] RootFindError),
}
