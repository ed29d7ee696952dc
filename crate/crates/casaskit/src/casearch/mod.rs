//! Casas-Alvero certification, non-existence filters, and the candidate
//! search.

mod certificate;
mod chain;
mod optimize;
mod pattern;
mod search;
mod stats;

pub use certificate::{
    certify_ca, normalize_unit_disc, shared_root_counts, CACertificate, CaVerdict,
    SharedEvidence, SharedRootCounts,
};
pub use chain::{maximal_chain_check, ChainEntryReport, ChainReport, ChainVerdict};
pub use optimize::{
    assignment_residual, expand_real, optimize_real, AssignError, Assignment,
};
pub use pattern::{
    coverage_window, enumerate_compositions, pattern_admissible, FilterId, FilterToggles,
    MultiplicityPattern,
};
pub use search::{search, CandidateRecord, PatternRecord, SearchConfig, SearchReport};
pub use stats::{candidate_stats, prune_inequalities, CandidateStats, PruneOutcome};
