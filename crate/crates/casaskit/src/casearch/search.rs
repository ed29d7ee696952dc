//! Pruned multistart search for Casas-Alvero counterexample candidates.
//!
//! For each multiplicity pattern surviving the non-existence filters, every
//! admissible witness assignment is optimized from seeded multistarts. Work
//! items run concurrently but the report is assembled in (pattern,
//! assignment) order, so a fixed configuration and seed always produce the
//! same bytes.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::polycore::{GaussianRational, Polynomial, Rational};

use super::optimize::{
    optimize_complex, optimize_real, residual_unchecked, Assignment,
};
use super::pattern::{
    enumerate_compositions, pattern_admissible, FilterToggles, MultiplicityPattern,
};
use super::stats::{candidate_stats, prune_inequalities};

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub degree: usize,
    /// Residual threshold below which a minimum is treated as a potential
    /// candidate and re-verified exactly.
    pub theta: f64,
    pub seed: u64,
    pub multistarts: usize,
    /// Iteration cap per local optimization.
    pub max_iterations: usize,
    /// Cap on enumerated assignments per pattern.
    pub assignment_budget: usize,
    pub filters: FilterToggles,
    /// Unconstrained complex-root search: no filters, no ordering.
    pub complex_mode: bool,
    /// Re-check pruned patterns by exhaustive assignment enumeration (small
    /// degrees only).
    pub brute_force_check: bool,
}

impl SearchConfig {
    pub fn new(degree: usize) -> Self {
        SearchConfig {
            degree,
            theta: 1e-16,
            seed: 0,
            multistarts: 32,
            max_iterations: 80,
            assignment_budget: 100_000,
            filters: FilterToggles::default(),
            complex_mode: false,
            brute_force_check: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternRecord {
    pub pattern: Vec<usize>,
    pub pruned_by: Option<String>,
    pub assignments: usize,
    pub best_assignment: Option<Vec<[usize; 2]>>,
    pub best_residual: Option<f64>,
    /// Minimizer roots as (re, im) pairs.
    pub minimizer_roots: Option<Vec<[f64; 2]>>,
    /// Exhaustive re-check outcome for pruned patterns (small degrees).
    pub brute_force_confirmed: Option<bool>,
    pub incomplete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateRecord {
    pub pattern: Vec<usize>,
    pub assignment: Vec<[usize; 2]>,
    pub roots: Vec<[f64; 2]>,
    pub residual: f64,
    /// Exact rational value of the objective at the (rationalized)
    /// minimizer; a true counterexample would make this exactly zero.
    pub exact_residual: Option<String>,
    /// Necessary-condition filter refuting the candidate, if any fired.
    pub refuted_by: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub degree: usize,
    pub seed: u64,
    pub theta: f64,
    pub complex_mode: bool,
    pub patterns: Vec<PatternRecord>,
    pub candidates: Vec<CandidateRecord>,
    /// "no_candidate" or "candidates_found".
    pub verdict: String,
    pub incomplete: bool,
}

impl SearchReport {
    pub fn found_candidates(&self) -> bool {
        !self.candidates.is_empty()
    }
}

fn mix_seed(seed: u64, a: u64, b: u64, c: u64) -> u64 {
    let mut x = seed
        ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ b.wrapping_mul(0xBF58_476D_1CE4_E5B9)
        ^ c.wrapping_mul(0x94D0_49BB_1331_11EB);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Enumerates witness assignments for the orders `r..n-1`.
///
/// Real constrained mode: witnesses are interior root indices and
/// consecutive orders get distinct witnesses (a root shared by `f^(m)` and
/// `f^(m+1)` would be a multiple root of `f^(m)`, impossible for real-rooted
/// input at these orders). Exhaustive mode lifts both restrictions.
fn enumerate_assignments(
    pattern: &MultiplicityPattern,
    exhaustive: bool,
    budget: usize,
) -> (Vec<Assignment>, bool) {
    let n = pattern.n();
    let k = pattern.k();
    let r = pattern.r_max();
    let orders: Vec<usize> = (r..n).collect();
    let choices: Vec<usize> = if exhaustive {
        (0..k).collect()
    } else {
        (1..k.saturating_sub(1)).collect()
    };
    let mut out = Vec::new();
    let mut complete = true;
    if choices.is_empty() {
        return (out, true);
    }
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        orders: &[usize],
        choices: &[usize],
        exhaustive: bool,
        budget: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Assignment>,
        complete: &mut bool,
    ) {
        if out.len() >= budget {
            *complete = false;
            return;
        }
        if stack.len() == orders.len() {
            let asg: Assignment =
                orders.iter().copied().zip(stack.iter().copied()).collect();
            out.push(asg);
            return;
        }
        for &c in choices {
            if !exhaustive {
                if let Some(&prev) = stack.last() {
                    if prev == c {
                        continue;
                    }
                }
            }
            stack.push(c);
            rec(orders, choices, exhaustive, budget, stack, out, complete);
            stack.pop();
            if !*complete {
                return;
            }
        }
    }
    rec(&orders, &choices, exhaustive, budget, &mut stack, &mut out, &mut complete);
    (out, complete)
}

/// Best multistart outcome for one (pattern, assignment) work item.
fn optimize_item(
    pattern: &MultiplicityPattern,
    assignment: &Assignment,
    config: &SearchConfig,
    pattern_idx: u64,
    assignment_idx: u64,
) -> (f64, Vec<[f64; 2]>) {
    let k = pattern.k();
    let mut best_res = f64::INFINITY;
    let mut best_roots: Vec<[f64; 2]> = Vec::new();
    for start in 0..config.multistarts {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(
            config.seed,
            pattern_idx,
            assignment_idx,
            start as u64,
        ));
        if config.complex_mode {
            let interior: Vec<Complex64> = (0..k - 2)
                .map(|_| Complex64::new(rng.random::<f64>(), rng.random::<f64>() - 0.5))
                .collect();
            let (roots, res, _) =
                optimize_complex(pattern, assignment, &interior, config.max_iterations);
            if res < best_res {
                best_res = res;
                best_roots = roots.iter().map(|z| [z.re, z.im]).collect();
            }
        } else {
            let mut interior: Vec<f64> =
                (0..k - 2).map(|_| rng.random::<f64>() * 0.98 + 0.01).collect();
            interior.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if interior.windows(2).any(|w| w[1] - w[0] < 1e-6) {
                for (i, v) in interior.iter_mut().enumerate() {
                    *v = (i as f64 + 1.0) / (k as f64 - 1.0) * 0.9 + 0.02;
                }
            }
            let out = optimize_real(pattern, assignment, &interior, config.max_iterations);
            if out.residual < best_res {
                best_res = out.residual;
                best_roots = out.roots.iter().map(|&x| [x, 0.0]).collect();
            }
        }
    }
    (best_res, best_roots)
}

/// Exact value of the objective at a rationalized minimizer: the roots are
/// converted bit-exactly to rationals and the assigned derivative values are
/// evaluated in exact arithmetic.
fn exact_objective(
    pattern: &MultiplicityPattern,
    roots: &[[f64; 2]],
    assignment: &Assignment,
) -> Option<Rational> {
    let exact_roots: Vec<(GaussianRational, usize)> = roots
        .iter()
        .zip(pattern.parts())
        .map(|(xy, &mult)| {
            let re = Rational::from_float(xy[0])?;
            let im = Rational::from_float(xy[1])?;
            Some((GaussianRational::new(re, im), mult))
        })
        .collect::<Option<Vec<_>>>()?;
    let f = Polynomial::from_roots(&exact_roots);
    let mut total = Rational::from_integer(0.into());
    for (&order, &index) in assignment {
        if pattern.parts()[index] > order {
            continue;
        }
        let v = f.derive(order).ok()?.eval(&exact_roots[index].0);
        total += v.norm_sqr();
    }
    Some(total)
}

fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("CASASKIT_THREADS") {
        if let Ok(t) = v.parse::<usize>() {
            if t > 0 {
                builder = builder.num_threads(t);
            }
        }
    }
    builder.build().expect("worker pool")
}

/// Runs the full search for one degree.
pub fn search(config: &SearchConfig) -> SearchReport {
    thread_pool().install(|| search_inner(config))
}

fn search_inner(config: &SearchConfig) -> SearchReport {
    assert!(config.degree >= 2, "search needs degree >= 2");
    let n = config.degree;
    let all_patterns = enumerate_compositions(n);
    let mut records: Vec<PatternRecord> = Vec::new();
    let mut candidates: Vec<CandidateRecord> = Vec::new();
    let mut incomplete = false;

    for (pattern_idx, pattern) in all_patterns.iter().enumerate() {
        if pattern.k() < 2 {
            // the single-root class is the trivial family, not a search target
            records.push(PatternRecord {
                pattern: pattern.parts().to_vec(),
                pruned_by: Some("trivial class".to_string()),
                assignments: 0,
                best_assignment: None,
                best_residual: None,
                minimizer_roots: None,
                brute_force_confirmed: None,
                incomplete: false,
            });
            continue;
        }
        let (admissible, filter) = if config.complex_mode {
            (true, None)
        } else {
            pattern_admissible(pattern, &config.filters)
        };
        if !admissible {
            let filter = filter.expect("inadmissible implies a filter");
            let brute = if config.brute_force_check && n <= 5 && !config.complex_mode {
                Some(brute_force_confirm(pattern, config, pattern_idx as u64))
            } else {
                None
            };
            records.push(PatternRecord {
                pattern: pattern.parts().to_vec(),
                pruned_by: Some(filter.provenance().to_string()),
                assignments: 0,
                best_assignment: None,
                best_residual: None,
                minimizer_roots: None,
                brute_force_confirmed: brute,
                incomplete: false,
            });
            continue;
        }

        let (assignments, complete) =
            enumerate_assignments(pattern, config.complex_mode, config.assignment_budget);
        if !complete {
            incomplete = true;
        }
        let results: Vec<(f64, Vec<[f64; 2]>)> = assignments
            .par_iter()
            .enumerate()
            .map(|(ai, asg)| {
                optimize_item(pattern, asg, config, pattern_idx as u64, ai as u64)
            })
            .collect();
        let mut best: Option<(usize, f64, Vec<[f64; 2]>)> = None;
        for (ai, (res, roots)) in results.into_iter().enumerate() {
            let better = match &best {
                None => true,
                Some((_, b, _)) => res < *b,
            };
            if better {
                best = Some((ai, res, roots));
            }
        }
        let mut record = PatternRecord {
            pattern: pattern.parts().to_vec(),
            pruned_by: None,
            assignments: assignments.len(),
            best_assignment: None,
            best_residual: None,
            minimizer_roots: None,
            brute_force_confirmed: None,
            incomplete: !complete,
        };
        if let Some((ai, res, roots)) = best {
            let asg = &assignments[ai];
            record.best_assignment =
                Some(asg.iter().map(|(&m, &j)| [m, j]).collect());
            record.best_residual = Some(res);
            record.minimizer_roots = Some(roots.clone());
            if res < config.theta {
                let exact = if config.complex_mode {
                    exact_objective(pattern, &roots, asg)
                } else {
                    exact_objective(pattern, &roots, asg)
                };
                let exact_ok = exact
                    .as_ref()
                    .and_then(|r| Rational::from_float(config.theta).map(|t| *r < t))
                    .unwrap_or(false);
                if exact_ok {
                    // a verified near-zero: report, minus anything a
                    // necessary condition refutes
                    let refuted = if config.complex_mode {
                        None
                    } else {
                        let xs: Vec<f64> = roots.iter().map(|p| p[0]).collect();
                        let centroid_index = asg.get(&(n - 1)).copied().unwrap_or(0);
                        let penult_index = asg.get(&(n - 2)).copied();
                        let stats =
                            candidate_stats(pattern, &xs, centroid_index, penult_index);
                        if config.filters.candidate_prunes {
                            prune_inequalities(&stats)
                                .fired
                                .map(|f| f.provenance().to_string())
                        } else {
                            None
                        }
                    };
                    let keep = refuted.is_none();
                    let cand = CandidateRecord {
                        pattern: pattern.parts().to_vec(),
                        assignment: asg.iter().map(|(&m, &j)| [m, j]).collect(),
                        roots,
                        residual: res,
                        exact_residual: exact.map(|r| {
                            crate::polycore::format_rational(&r)
                        }),
                        refuted_by: refuted,
                    };
                    if keep {
                        candidates.push(cand);
                    } else {
                        record.pruned_by = cand.refuted_by.clone();
                    }
                }
            }
        }
        records.push(record);
    }

    let verdict = if candidates.is_empty() {
        "no_candidate".to_string()
    } else {
        "candidates_found".to_string()
    };
    SearchReport {
        degree: n,
        seed: config.seed,
        theta: config.theta,
        complex_mode: config.complex_mode,
        patterns: records,
        candidates,
        verdict,
        incomplete,
    }
}

/// Exhaustive assignment enumeration (no interiority, no adjacency
/// restriction) on a pruned pattern: returns true when no optimized
/// assignment reaches the threshold, i.e. the analytic filter agrees with
/// brute force.
fn brute_force_confirm(
    pattern: &MultiplicityPattern,
    config: &SearchConfig,
    pattern_idx: u64,
) -> bool {
    let (assignments, _) =
        enumerate_assignments(pattern, true, config.assignment_budget);
    if pattern.k() == 2 {
        // no interior freedom: evaluate the fixed gauge configuration
        let roots = [0.0, 1.0];
        return assignments.iter().all(|asg| {
            residual_unchecked(pattern, &roots, asg) >= config.theta
        });
    }
    let results: Vec<f64> = assignments
        .par_iter()
        .enumerate()
        .map(|(ai, asg)| {
            optimize_item(pattern, asg, config, pattern_idx ^ 0xBF58_476D, ai as u64).0
        })
        .collect();
    results.into_iter().all(|r| r >= config.theta)
}
