//! Multiplicity patterns and the pattern-level non-existence filters.

use serde::Serialize;

/// Composition `(r_1..r_k)` of the degree: multiplicities of the distinct
/// roots in increasing root order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityPattern {
    parts: Vec<usize>,
}

impl MultiplicityPattern {
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&r| r > 0), "multiplicities are positive");
        MultiplicityPattern { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn r_max(&self) -> usize {
        self.parts.iter().copied().max().unwrap_or(0)
    }

    pub fn r_min(&self) -> usize {
        self.parts.iter().copied().min().unwrap_or(0)
    }
}

/// All compositions of `n` (ordered multiplicity patterns), in a fixed
/// deterministic order.
pub fn enumerate_compositions(n: usize) -> Vec<MultiplicityPattern> {
    assert!(n >= 1 && n < 64);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut parts = Vec::new();
        let mut run = 1usize;
        for bit in 0..(n - 1) {
            if mask & (1 << bit) != 0 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(MultiplicityPattern::new(parts));
    }
    out
}

/// Non-existence filters, each independently toggleable.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FilterToggles {
    /// Fewer than five distinct real zeros is impossible for a witness.
    pub min_distinct_zeros: bool,
    /// Two distinct real zeros cannot share a root with high-order
    /// derivatives.
    pub two_distinct_zeros: bool,
    /// Full-coverage window filter on orders `r <= m < (1/2)(1-1/r0)(n-1)`.
    pub coverage_window: bool,
    /// Candidate-level span/distance/ratio prunes.
    pub candidate_prunes: bool,
}

impl Default for FilterToggles {
    fn default() -> Self {
        FilterToggles {
            min_distinct_zeros: true,
            two_distinct_zeros: true,
            coverage_window: true,
            candidate_prunes: true,
        }
    }
}

impl FilterToggles {
    pub fn none() -> Self {
        FilterToggles {
            min_distinct_zeros: false,
            two_distinct_zeros: false,
            coverage_window: false,
            candidate_prunes: false,
        }
    }
}

/// Filter identifiers; provenance strings name the result they implement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterId {
    MinDistinctZeros,
    TwoDistinctZeros,
    CoverageWindow,
    SpanPrune,
    DistancePrune,
    RatioPrune,
}

impl FilterId {
    pub fn provenance(&self) -> &'static str {
        match self {
            FilterId::MinDistinctZeros => "Corollary 11",
            FilterId::TwoDistinctZeros => "Corollary 3",
            FilterId::CoverageWindow => "Corollary 7",
            FilterId::SpanPrune => "Proposition 3",
            FilterId::DistancePrune => "Proposition 4",
            FilterId::RatioPrune => "Proposition 5",
        }
    }
}

/// Integer orders in the window `[r, (1/2)(1-1/r0)(n-1))`; empty when the
/// minimum multiplicity is 1.
pub fn coverage_window(n: usize, r_max: usize, r_min: usize) -> Vec<usize> {
    if r_min == 0 {
        return Vec::new();
    }
    // m < (1/2)(1 - 1/r0)(n-1)  <=>  2 m r0 < (r0 - 1)(n - 1)
    (r_max..n)
        .filter(|&m| 2 * m * r_min < (r_min - 1) * (n - 1))
        .collect()
}

/// Pattern-level admissibility for the real-rooted search. Returns `false`
/// with the first violated filter.
pub fn pattern_admissible(
    pattern: &MultiplicityPattern,
    toggles: &FilterToggles,
) -> (bool, Option<FilterId>) {
    let n = pattern.n();
    let k = pattern.k();
    if toggles.min_distinct_zeros && k <= 4 {
        return (false, Some(FilterId::MinDistinctZeros));
    }
    if toggles.two_distinct_zeros && k == 2 {
        return (false, Some(FilterId::TwoDistinctZeros));
    }
    if toggles.coverage_window {
        // Fires only when the multiplicity pattern forces every root of the
        // m-th derivative to be a root of f for some window order: the
        // inherited-root count sum_j max(r_j - m, 0) must cover all n - m
        // roots. Inside the window m >= r_max, so the filter self-disables
        // unless the window is empty anyway.
        for m in coverage_window(n, pattern.r_max(), pattern.r_min()) {
            let inherited: usize =
                pattern.parts().iter().map(|&r| r.saturating_sub(m)).sum();
            if inherited == n - m {
                return (false, Some(FilterId::CoverageWindow));
            }
        }
    }
    (true, None)
}
