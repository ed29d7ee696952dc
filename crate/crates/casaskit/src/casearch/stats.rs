//! Candidate statistics and the necessary-condition prunes.
//!
//! A candidate is a multiplicity pattern with concrete root values and a
//! designated centroid-root. The prunes are necessary conditions for a
//! real-rooted witness: a candidate that violates one cannot be completed
//! into a counterexample, whatever the optimizer reports.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::polycore::{aberth, RootFindConfig};

use super::optimize::expand_real;
use super::pattern::{coverage_window, FilterId, MultiplicityPattern};

/// Numeric statistics of one candidate root configuration.
#[derive(Clone, Debug)]
pub struct CandidateStats {
    pub n: usize,
    pub k: usize,
    pub r_max: usize,
    pub r_min: usize,
    /// Multiplicity of the designated centroid-root.
    pub mult_centroid: usize,
    /// Multiplicities at the extreme roots.
    pub mult_at_max: usize,
    pub mult_at_min: usize,
    /// Multiplicity of the root designated as shared with the penultimate
    /// derivative, when the assignment names one.
    pub mult_penult: Option<usize>,
    /// Min/max distance from the centroid-root to the other roots.
    pub min_distance: Option<f64>,
    pub max_distance: Option<f64>,
    /// Max distance from the centroid-root to the roots of the m-th
    /// derivative, per order.
    pub max_distance_m: BTreeMap<usize, f64>,
    pub span: f64,
    pub gap: Option<f64>,
}

/// Computes candidate statistics from a pattern, increasing real roots, and
/// the indices designated by the witness assignment.
pub fn candidate_stats(
    pattern: &MultiplicityPattern,
    roots: &[f64],
    centroid_index: usize,
    penult_index: Option<usize>,
) -> CandidateStats {
    let n = pattern.n();
    let k = pattern.k();
    let parts = pattern.parts();
    let c = roots[centroid_index];
    let mut min_d = f64::INFINITY;
    let mut max_d = 0.0f64;
    for (i, &x) in roots.iter().enumerate() {
        if i == centroid_index {
            continue;
        }
        let d = (x - c).abs();
        min_d = min_d.min(d);
        max_d = max_d.max(d);
    }
    let coeffs = expand_real(parts, roots);
    // gap from the penultimate derivative (a quadratic)
    let mut quad = coeffs.clone();
    for _ in 0..n.saturating_sub(2) {
        let d = quad.len() - 1;
        quad = quad[..d]
            .iter()
            .enumerate()
            .map(|(i, &cc)| cc * ((d - i) as f64))
            .collect();
    }
    let gap = if quad.len() == 3 {
        let disc = quad[1] * quad[1] - 4.0 * quad[0] * quad[2];
        if disc >= 0.0 {
            Some(disc.sqrt() / (2.0 * quad[0].abs()))
        } else {
            None
        }
    } else {
        None
    };
    // D^(m) for m in r..=n-2 via the numeric solver on each derivative
    let mut max_distance_m = BTreeMap::new();
    let mut dcoeffs = coeffs;
    let mut order = 0usize;
    let cfg = RootFindConfig::default();
    while dcoeffs.len() > 2 {
        let d = dcoeffs.len() - 1;
        dcoeffs = dcoeffs[..d]
            .iter()
            .enumerate()
            .map(|(i, &cc)| cc * ((d - i) as f64))
            .collect();
        order += 1;
        if order >= pattern.r_max() && order <= n.saturating_sub(2) {
            let complex: Vec<Complex64> =
                dcoeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            let dm = match aberth(&complex, &cfg) {
                Ok(rs) => rs
                    .iter()
                    .map(|a| (a.value.re - c).abs())
                    .fold(0.0f64, f64::max),
                Err(_) => continue,
            };
            max_distance_m.insert(order, dm);
        }
    }
    CandidateStats {
        n,
        k,
        r_max: pattern.r_max(),
        r_min: pattern.r_min(),
        mult_centroid: parts[centroid_index],
        mult_at_max: parts[k - 1],
        mult_at_min: parts[0],
        mult_penult: penult_index.map(|i| parts[i]),
        min_distance: if min_d.is_finite() { Some(min_d) } else { None },
        max_distance: if k > 1 { Some(max_d) } else { None },
        max_distance_m,
        span: roots[k - 1] - roots[0],
        gap,
    }
}

/// Outcome of the candidate-level prunes.
#[derive(Clone, Debug, Default)]
pub struct PruneOutcome {
    pub fired: Option<FilterId>,
    /// Filters that could not be evaluated for lack of data.
    pub skipped: Vec<FilterId>,
}

/// Evaluates the span, distance, and ratio prunes. Each is a necessary
/// condition for a real-rooted witness; a strict violation (beyond a small
/// relative margin) prunes the candidate with provenance.
pub fn prune_inequalities(stats: &CandidateStats) -> PruneOutcome {
    const MARGIN: f64 = 1e-9;
    let mut out = PruneOutcome::default();
    let n = stats.n as f64;
    let r1 = stats.mult_centroid as f64;
    let r0 = stats.r_min as f64;
    let r_star = stats.mult_at_max.max(stats.mult_at_min) as f64;

    // span prune: a witness satisfies
    //   span <= (1/r*) [ (n - r1 - r0) D + r0 D^(m) ]   for every m >= r
    match stats.max_distance {
        Some(dist_max) => {
            for (_, &dm) in &stats.max_distance_m {
                let bound = ((n - r1 - r0) * dist_max + r0 * dm) / r_star;
                if stats.span > bound * (1.0 + MARGIN) + MARGIN {
                    out.fired = Some(FilterId::SpanPrune);
                    return out;
                }
            }
            if stats.max_distance_m.is_empty() {
                out.skipped.push(FilterId::SpanPrune);
            }
        }
        None => out.skipped.push(FilterId::SpanPrune),
    }

    // distance prune: a witness satisfies
    //   D >= [ r* sqrt((n^2 - r1)/(n - r1 - r2)) - r0 ] gap / (n - r1 - r0)
    match (stats.max_distance, stats.mult_penult, stats.gap) {
        (Some(dist_max), Some(r2), Some(gap)) => {
            let denom = n - r1 - r2 as f64;
            let scale = n - r1 - r0;
            if denom > 0.0 && scale > 0.0 {
                let bracket = r_star * ((n * n - r1) / denom).sqrt() - r0;
                let bound = bracket * gap / scale;
                if dist_max < bound * (1.0 - MARGIN) - MARGIN {
                    out.fired = Some(FilterId::DistancePrune);
                    return out;
                }
            } else {
                out.skipped.push(FilterId::DistancePrune);
            }
        }
        _ => out.skipped.push(FilterId::DistancePrune),
    }

    // ratio prune: for consecutive window orders a witness satisfies
    //   d/D <= sqrt(2(n - m - 1)/(2(k-1) - 1))
    match (stats.min_distance, stats.max_distance) {
        (Some(d), Some(dist_max)) if dist_max > 0.0 => {
            let window = coverage_window(stats.n, stats.r_max, stats.r_min);
            let mut evaluated = false;
            for &m in &window {
                if !window.contains(&(m + 1)) {
                    continue;
                }
                evaluated = true;
                let bound =
                    (2.0 * (n - m as f64 - 1.0) / (2.0 * (stats.k as f64 - 1.0) - 1.0)).sqrt();
                if d / dist_max > bound * (1.0 + MARGIN) {
                    out.fired = Some(FilterId::RatioPrune);
                    return out;
                }
            }
            if !evaluated {
                out.skipped.push(FilterId::RatioPrune);
            }
        }
        _ => out.skipped.push(FilterId::RatioPrune),
    }
    out
}
