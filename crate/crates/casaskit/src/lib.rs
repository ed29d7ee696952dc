//! casaskit: exact-arithmetic polynomial analysis.
//!
//! The crate is organized in four layers:
//!
//! * [`polycore`] — exact polynomials over the Gaussian rationals, square-free
//!   decomposition, certified numeric root finding, power sums, centroid data.
//! * [`goncharov`] — Abel-Goncharov interpolation polynomials built by three
//!   independent algorithms, plus two upper bounds on their magnitude.
//! * [`localize`] — Sz.-Nagy root identities checked as exact residuals and
//!   Laguerre/Obreshkov-type root-localization inequalities checked as
//!   interval verdicts.
//! * [`casearch`] — Casas-Alvero certification, non-existence filters, and a
//!   pruned residual-minimization search for counterexample candidates.
//!
//! All coefficient arithmetic is exact; floats appear only in certified
//! numeric roots and in (conservatively rounded) bound evaluation.

pub mod casearch;
pub mod goncharov;
pub mod localize;
pub mod polycore;

pub use polycore::{
    GaussianRational, Polynomial, Rational, RootMultiset, RootValue,
};
