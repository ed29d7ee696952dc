//! Root-localization inequalities for real-rooted polynomials, reported as
//! interval-containment verdicts.
//!
//! Every operation verifies real-rootedness exactly (Sturm count) and gates
//! on each statement's hypotheses rather than guessing: a report with
//! `hypothesis_ok = false` carries no verdict. Interval memberships compare
//! exactly whenever the root and the squared interval width are rational;
//! otherwise certified numeric values are compared at a configurable
//! relative tolerance.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::polycore::{
    rational_to_f64_up, GaussianRational, Polynomial, Rational, RootFindConfig, RootValue,
};

use super::context::{derivative_root_values, RealContext};
use super::report::{BoundId, BoundReport, InputsEcho};
use super::{LocalizeError, NumericConfig};

fn holds_leq(lhs: f64, rhs: f64, num: &NumericConfig) -> bool {
    lhs <= rhs + num.rel_tol * lhs.abs().max(rhs.abs()).max(1.0)
}

/// Exact membership `(lambda - c)^2 <= w2` when `lambda` is exact; numeric
/// comparison at tolerance otherwise.
fn interval_holds(
    lambda: &RootValue,
    c: &Rational,
    w2: &Rational,
    num: &NumericConfig,
) -> bool {
    match lambda.as_exact() {
        Some(z) => {
            let d = z.as_rational().expect("real root") - c;
            &d * &d <= *w2
        }
        None => {
            let d = lambda.approx_real() - c.to_f64().unwrap_or(f64::NAN);
            holds_leq(d * d, rational_to_f64_up(w2), num)
        }
    }
}

fn rational_usize(v: usize) -> Rational {
    Rational::from_integer(v.into())
}

/// Consecutive-gap comparisons between a polynomial and its `m`-th
/// derivative: the three verdicts compare the smallest derivative gap, the
/// largest derivative gap, and the centroid gap against multiplicity-scaled
/// multiples of the extreme root gaps.
pub fn gap_bounds(
    p: &Polynomial,
    m: usize,
    cfg: &RootFindConfig,
    num: &NumericConfig,
) -> Result<[BoundReport; 3], LocalizeError> {
    let ctx = RealContext::build(p, cfg)?;
    let n = ctx.n;
    if n <= 2 {
        return Err(LocalizeError::Domain("gap bounds need degree > 2".into()));
    }
    if m < 1 || m > n - 2 {
        return Err(LocalizeError::Domain(format!(
            "derivative order {} out of range [1, {}]",
            m,
            n - 2
        )));
    }
    let inputs = InputsEcho { m: Some(m), ..Default::default() };
    let k = ctx.k();
    if k < 2 {
        return Ok([
            BoundReport::gated(BoundId::SmallDerivativeGap, "k >= 2 required", inputs.clone()),
            BoundReport::gated(BoundId::LargeDerivativeGap, "k >= 2 required", inputs.clone()),
            BoundReport::gated(BoundId::GapSandwich, "k >= 2 required", inputs),
        ]);
    }
    let (delta_max, delta_min) = ctx.consecutive_extremes();
    let dxs = derivative_root_values(&ctx.f, m, cfg)?;
    let mut dgap_max = 0.0f64;
    let mut dgap_min = f64::INFINITY;
    for w in dxs.windows(2) {
        let d = w[1] - w[0];
        dgap_max = dgap_max.max(d);
        dgap_min = dgap_min.min(d);
    }
    let r = ctx.max_multiplicity() as f64;
    let r0 = ctx.min_multiplicity() as f64;
    let kf = k as f64;
    let nf = n as f64;
    let root_factor = ((kf * kf - 1.0) / (((n - m + 1) * (n - 1)) as f64)).sqrt();
    let gap_factor = ((kf * kf - 1.0) / ((3 * (n - 1)) as f64)).sqrt();
    let gap = ctx.gap_abs();

    let small = BoundReport {
        id: BoundId::SmallDerivativeGap,
        lhs: dgap_min,
        mid: None,
        rhs: delta_max * (r * kf / nf) * root_factor,
        holds: false,
        hypothesis_ok: true,
        note: None,
        inputs: inputs.clone(),
    };
    let large = BoundReport {
        id: BoundId::LargeDerivativeGap,
        lhs: delta_min * (r0 * kf / nf) * root_factor,
        mid: None,
        rhs: dgap_max,
        holds: false,
        hypothesis_ok: true,
        note: None,
        inputs: inputs.clone(),
    };
    let sandwich = BoundReport {
        id: BoundId::GapSandwich,
        lhs: delta_min * (r0 * kf / (2.0 * nf)) * gap_factor,
        mid: Some(gap),
        rhs: delta_max * (r * kf / (2.0 * nf)) * gap_factor,
        holds: false,
        hypothesis_ok: true,
        note: None,
        inputs,
    };
    let mut out = [small, large, sandwich];
    for rep in &mut out {
        rep.holds = match rep.mid {
            Some(mid) => holds_leq(rep.lhs, mid, num) && holds_leq(mid, rep.rhs, num),
            None => holds_leq(rep.lhs, rep.rhs, num),
        };
    }
    Ok(out)
}

/// Multiplicity-weighted root interval: the root of multiplicity `r_j` lies
/// within `sqrt((n - r_j)(n - m - 1)/(r_j - m)) |gap|` of the centroid, for
/// every order `m < r_j`. `m = 0` is the widest-applicability special case.
pub fn laguerre_interval(
    p: &Polynomial,
    root_index: usize,
    m: usize,
    cfg: &RootFindConfig,
    num: &NumericConfig,
) -> Result<BoundReport, LocalizeError> {
    let ctx = RealContext::build(p, cfg)?;
    let n = ctx.n;
    let root = ctx
        .distinct
        .get(root_index)
        .ok_or_else(|| LocalizeError::Domain(format!("no root with index {}", root_index)))?;
    let rj = root.multiplicity;
    if m >= rj {
        return Err(LocalizeError::Domain(format!(
            "order {} must stay below the root multiplicity {}",
            m, rj
        )));
    }
    // w^2 = (n - r_j)(n - m - 1)/(r_j - m) * gap^2, exact.
    let w2 = &(&rational_usize(n - rj) * &rational_usize(n - m - 1))
        / &rational_usize(rj - m)
        * ctx.gap_squared_rational();
    let c = ctx.centroid_rational().clone();
    let holds = interval_holds(&root.value, &c, &w2, num);
    Ok(BoundReport {
        id: if m == 0 { BoundId::RootInterval } else { BoundId::MultiRootInterval },
        lhs: (root.x - ctx.centroid_f64()).abs(),
        mid: None,
        rhs: rational_to_f64_up(&w2).sqrt(),
        holds,
        hypothesis_ok: true,
        note: None,
        inputs: InputsEcho {
            m: Some(m),
            root: Some(root.value.as_exact().map(|z| z.to_text()).unwrap_or_else(|| {
                format!("{}", root.x)
            })),
            root_multiplicity: Some(rj),
            ..Default::default()
        },
    })
}

/// Every root of the `m`-th derivative lies within `(n-m-1) |gap|` of the
/// centroid.
pub fn derivative_root_interval(
    p: &Polynomial,
    m: usize,
    cfg: &RootFindConfig,
    num: &NumericConfig,
) -> Result<BoundReport, LocalizeError> {
    let ctx = RealContext::build(p, cfg)?;
    let n = ctx.n;
    if m > n - 2 {
        return Err(LocalizeError::Domain(format!(
            "derivative order {} out of range [0, {}]",
            m,
            n - 2
        )));
    }
    let c = ctx.centroid_f64();
    let dxs = derivative_root_values(&ctx.f, m, cfg)?;
    let max_dist = dxs.iter().map(|x| (x - c).abs()).fold(0.0f64, f64::max);
    let rhs = (n - m - 1) as f64 * ctx.gap_abs();
    Ok(BoundReport {
        id: BoundId::DerivativeRootInterval,
        lhs: max_dist,
        mid: None,
        rhs,
        holds: holds_leq(max_dist, rhs, num),
        hypothesis_ok: true,
        note: None,
        inputs: InputsEcho { m: Some(m), ..Default::default() },
    })
}

/// With the centroid a root of `f`, every other root `lambda_s` lies within
/// `sqrt((1/r_s - 1/(n - r_1)) (n^2 - n)) |gap|` of the centroid.
pub fn common_root_interval(
    p: &Polynomial,
    s: usize,
    cfg: &RootFindConfig,
    num: &NumericConfig,
) -> Result<BoundReport, LocalizeError> {
    let ctx = RealContext::build(p, cfg)?;
    let n = ctx.n;
    let r1 = ctx.centroid_multiplicity();
    let inputs = InputsEcho { centroid: Some(ctx.cd.centroid.to_text()), ..Default::default() };
    if r1 == 0 || ctx.k() < 2 {
        return Ok(BoundReport::gated(
            BoundId::CommonRootInterval,
            "centroid must be a root and k >= 2",
            inputs,
        ));
    }
    let c_exact = ctx.cd.centroid.clone();
    let others: Vec<_> = ctx
        .distinct
        .iter()
        .filter(|d| d.value.as_exact() != Some(&c_exact))
        .collect();
    let root = others
        .get(s)
        .ok_or_else(|| LocalizeError::Domain(format!("no non-centroid root with index {}", s)))?;
    let rs = root.multiplicity;
    // w^2 = (1/r_s - 1/(n-r_1)) (n^2 - n) gap^2
    let w2 = &(&(&Rational::from_integer(1.into()) / &rational_usize(rs)
        - &(&Rational::from_integer(1.into()) / &rational_usize(n - r1)))
        * &rational_usize(n * n - n))
        * ctx.gap_squared_rational();
    debug_assert!(!w2.is_negative());
    let holds = interval_holds(&root.value, ctx.centroid_rational(), &w2, num);
    Ok(BoundReport {
        id: BoundId::CommonRootInterval,
        lhs: (root.x - ctx.centroid_f64()).abs(),
        mid: None,
        rhs: rational_to_f64_up(&w2).sqrt(),
        holds,
        hypothesis_ok: true,
        note: None,
        inputs: InputsEcho {
            centroid: Some(ctx.cd.centroid.to_text()),
            centroid_multiplicity: Some(r1),
            root: Some(match root.value.as_exact() {
                Some(z) => z.to_text(),
                None => format!("{}", root.x),
            }),
            root_multiplicity: Some(rs),
            ..Default::default()
        },
    })
}

/// Common roots of `f` and `f^(m)` (shared-root configuration): the distance
/// from the centroid-root to the order-`m` shared root is controlled by the
/// gap. Gated on the centroid being a root and on an order-`m` shared root
/// distinct from the centroid, with `max multiplicity <= m <= n-2`.
pub fn ca_mth_bound(
    p: &Polynomial,
    m: usize,
    cfg: &RootFindConfig,
    num: &NumericConfig,
) -> Result<BoundReport, LocalizeError> {
    let ctx = RealContext::build(p, cfg)?;
    let n = ctx.n;
    let inputs = InputsEcho { m: Some(m), centroid: Some(ctx.cd.centroid.to_text()), ..Default::default() };
    if m > n - 2 {
        return Err(LocalizeError::Domain(format!(
            "derivative order {} out of range [1, {}]",
            m,
            n - 2
        )));
    }
    let r1 = ctx.centroid_multiplicity();
    if r1 == 0 {
        return Ok(BoundReport::gated(
            BoundId::SharedDerivativeBound,
            "centroid must be a root",
            inputs,
        ));
    }
    if m < ctx.max_multiplicity() {
        return Ok(BoundReport::gated(
            BoundId::SharedDerivativeBound,
            "order must be at least the maximum multiplicity",
            inputs,
        ));
    }
    // shared root of f and f^(m), distinct from the centroid, via exact gcd
    let fm = ctx.f.derive(m)?;
    let shared = ctx
        .distinct
        .iter()
        .filter(|d| d.value.as_exact() != Some(&ctx.cd.centroid))
        .find(|d| match d.value.as_exact() {
            Some(z) => fm.eval(z).is_zero(),
            None => false,
        });
    let shared = match shared {
        Some(d) => d,
        None => {
            return Ok(BoundReport::gated(
                BoundId::SharedDerivativeBound,
                "no exact shared root of f and its m-th derivative besides the centroid",
                inputs,
            ))
        }
    };
    let r_km = shared.multiplicity;
    // coefficient (n - r1 - r_km)/(n - r1)^2 (n^2 - r1 + (n - r1)(n - m)(n - m - 2))
    let coef = &(&rational_usize(n - r1 - r_km)
        / &(&rational_usize(n - r1) * &rational_usize(n - r1)))
        * &(&rational_usize(n * n - r1)
            + &(&rational_usize(n - r1)
                * &(&rational_usize(n - m)
                    * &Rational::from_integer(((n as i64) - (m as i64) - 2).into()))));
    let w2 = &coef * ctx.gap_squared_rational();
    let holds = interval_holds(&shared.value, ctx.centroid_rational(), &w2, num);
    Ok(BoundReport {
        id: BoundId::SharedDerivativeBound,
        lhs: (shared.x - ctx.centroid_f64()).abs(),
        mid: None,
        rhs: rational_to_f64_up(&w2).max(0.0).sqrt(),
        holds,
        hypothesis_ok: true,
        note: None,
        inputs: InputsEcho {
            m: Some(m),
            centroid: Some(ctx.cd.centroid.to_text()),
            centroid_multiplicity: Some(r1),
            shared_root: shared.value.as_exact().map(|z| z.to_text()),
            shared_multiplicity: Some(r_km),
            ..Default::default()
        },
    })
}

/// Two-sided control of the maximum centroid distance `D` when both the
/// centroid and a penultimate-derivative root are roots of `f` and `D` is
/// attained away from both.
pub fn lemma7_bounds(
    p: &Polynomial,
    cfg: &RootFindConfig,
    num: &NumericConfig,
) -> Result<[BoundReport; 2], LocalizeError> {
    let ctx = RealContext::build(p, cfg)?;
    let n = ctx.n;
    let inputs = InputsEcho { centroid: Some(ctx.cd.centroid.to_text()), ..Default::default() };
    let gate = |reason: &str| {
        Ok([
            BoundReport::gated(BoundId::MaxDistanceByGap, reason, inputs.clone()),
            BoundReport::gated(BoundId::MaxDistanceBySpan, reason, inputs.clone()),
        ])
    };
    let r1 = ctx.centroid_multiplicity();
    if r1 == 0 {
        return gate("centroid must be a root");
    }
    if ctx.k() < 3 {
        return gate("needs at least three distinct roots");
    }
    let penult = match penultimate_root_of_f(&ctx) {
        Some(v) => v,
        None => return gate("no penultimate-derivative root is a root of f"),
    };
    let r2 = penult.1;
    // D over roots other than the centroid; the argmax must avoid the
    // penultimate root as well.
    let c = ctx.centroid_f64();
    let candidates: Vec<_> = ctx
        .distinct
        .iter()
        .filter(|d| {
            d.value.as_exact() != Some(&ctx.cd.centroid)
        })
        .collect();
    let dmax = candidates
        .iter()
        .map(|d| (d.x - c).abs())
        .fold(0.0f64, f64::max);
    let at_max: Vec<_> = candidates
        .iter()
        .filter(|d| ((d.x - c).abs() - dmax).abs() <= 1e-12 * (1.0 + dmax))
        .collect();
    let s0 = at_max
        .iter()
        .find(|d| d.value.as_exact() != Some(&penult.0));
    let s0 = match s0 {
        Some(d) => d,
        None => return gate("maximum centroid distance is attained only at the penultimate root"),
    };
    let r_s0 = s0.multiplicity;
    if n <= r1 + r2 {
        return gate("needs n > r1 + r2");
    }

    let gap = ctx.gap_abs();
    let (span, _, _) = ctx.span();
    let top = (n * n - n - r2) as f64;
    let by_gap = BoundReport {
        id: BoundId::MaxDistanceByGap,
        lhs: (top / ((n - r1 - r2) as f64)).sqrt() * gap,
        mid: Some(dmax),
        rhs: (top / (r_s0 as f64)).sqrt() * gap,
        holds: false,
        hypothesis_ok: true,
        note: None,
        inputs: inputs.clone(),
    };
    let bracket = 5.0 + (r2 as f64) / top;
    let by_span = BoundReport {
        id: BoundId::MaxDistanceBySpan,
        lhs: 0.5 * ((r_s0 as f64) / (3.0 * ((n - r1) as f64)) * bracket).sqrt() * span,
        mid: Some(dmax),
        rhs: ((1.0 / ((n - r1) as f64))
            * (((n - r1) as f64) - (r_s0 as f64) / 4.0 * bracket))
            .sqrt()
            * span,
        holds: false,
        hypothesis_ok: true,
        note: None,
        inputs,
    };
    let mut out = [by_gap, by_span];
    for rep in &mut out {
        let mid = rep.mid.unwrap();
        rep.holds = holds_leq(rep.lhs, mid, num) && holds_leq(mid, rep.rhs, num);
    }
    Ok(out)
}

/// A root of `f` that is also a root of the penultimate derivative, with its
/// multiplicity in `f`.
fn penultimate_root_of_f(ctx: &RealContext) -> Option<(GaussianRational, usize)> {
    let fn2 = ctx.f.derive(ctx.n - 2).ok()?;
    ctx.distinct
        .iter()
        .filter_map(|d| d.value.as_exact().map(|z| (z.clone(), d.multiplicity)))
        .find(|(z, _)| z != &ctx.cd.centroid && fn2.eval(z).is_zero())
}

/// Lower bound on the span when the centroid and a penultimate root are both
/// roots of `f` with `r1 + r2 < n`.
pub fn span_lower_bound(
    p: &Polynomial,
    cfg: &RootFindConfig,
    num: &NumericConfig,
) -> Result<BoundReport, LocalizeError> {
    let ctx = RealContext::build(p, cfg)?;
    let n = ctx.n;
    let inputs = InputsEcho { centroid: Some(ctx.cd.centroid.to_text()), ..Default::default() };
    let r1 = ctx.centroid_multiplicity();
    if r1 == 0 {
        return Ok(BoundReport::gated(BoundId::SpanLowerBound, "centroid must be a root", inputs));
    }
    let penult = match penultimate_root_of_f(&ctx) {
        Some(v) => v,
        None => {
            return Ok(BoundReport::gated(
                BoundId::SpanLowerBound,
                "no penultimate-derivative root is a root of f",
                inputs,
            ))
        }
    };
    let r2 = penult.1;
    if r1 + r2 >= n {
        return Ok(BoundReport::gated(BoundId::SpanLowerBound, "needs r1 + r2 < n", inputs));
    }
    let (span, _, _) = ctx.span();
    let lhs = (((n * n - r1) as f64) / ((n - r1 - r2) as f64)).sqrt() * ctx.gap_abs();
    Ok(BoundReport {
        id: BoundId::SpanLowerBound,
        lhs,
        mid: None,
        rhs: span,
        holds: holds_leq(lhs, span, num),
        hypothesis_ok: true,
        note: None,
        inputs,
    })
}

/// Derivative-root distance and span bounds for orders at or above the
/// maximum multiplicity, where every derivative root is simple.
pub fn lemma9_bounds(
    p: &Polynomial,
    m: usize,
    cfg: &RootFindConfig,
    num: &NumericConfig,
) -> Result<[BoundReport; 4], LocalizeError> {
    let ctx = RealContext::build(p, cfg)?;
    let n = ctx.n;
    if m > n - 2 {
        return Err(LocalizeError::Domain(format!(
            "derivative order {} out of range [1, {}]",
            m,
            n - 2
        )));
    }
    let inputs = InputsEcho { m: Some(m), ..Default::default() };
    let r = ctx.max_multiplicity();
    let gap = ctx.gap_abs();
    let c = ctx.centroid_f64();
    let dxs = derivative_root_values(&ctx.f, m, cfg)?;
    let dmax_m = dxs.iter().map(|x| (x - c).abs()).fold(0.0f64, f64::max);
    let span_m = match (dxs.first(), dxs.last()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0.0,
    };
    let centroid_is_droot = ctx.f.derive(m)?.eval(&ctx.cd.centroid).is_zero();
    // A centroid root of the penultimate derivative forces a zero gap, which
    // for real-rooted input means the polynomial is the pure power.
    let trivial_note = if m == n - 2 && centroid_is_droot {
        debug_assert!(ctx.gap_squared_rational().is_zero());
        Some("penultimate derivative has a double root: polynomial is trivial".to_string())
    } else {
        None
    };

    let mut reports: [BoundReport; 4] = [
        BoundReport::gated(BoundId::DerivativeMaxDistance, "order below max multiplicity", inputs.clone()),
        BoundReport::gated(
            BoundId::DerivativeMaxDistanceAtCentroid,
            "centroid is not a root of the m-th derivative",
            inputs.clone(),
        ),
        BoundReport::gated(BoundId::DerivativeSpanSandwich, "order below max multiplicity", inputs.clone()),
        BoundReport::gated(
            BoundId::DerivativeSpanSandwichAtCentroid,
            "centroid is not a root of the m-th derivative",
            inputs.clone(),
        ),
    ];
    reports[1].note = trivial_note.clone();

    if m >= r {
        let lhs39 = (((n - m - 1) as f64).sqrt()) * gap;
        reports[0] = BoundReport {
            id: BoundId::DerivativeMaxDistance,
            lhs: lhs39,
            mid: None,
            rhs: dmax_m,
            holds: holds_leq(lhs39, dmax_m, num),
            hypothesis_ok: true,
            note: None,
            inputs: inputs.clone(),
        };
        let lower41 = ((n - m) as f64 / (n - m - 1) as f64) * dmax_m;
        reports[2] = BoundReport {
            id: BoundId::DerivativeSpanSandwich,
            lhs: lower41,
            mid: Some(span_m),
            rhs: 2.0 * dmax_m,
            holds: holds_leq(lower41, span_m, num) && holds_leq(span_m, 2.0 * dmax_m, num),
            hypothesis_ok: true,
            note: None,
            inputs: inputs.clone(),
        };
        if centroid_is_droot {
            let lhs40 = ((n - m) as f64).sqrt() * gap;
            reports[1] = BoundReport {
                id: BoundId::DerivativeMaxDistanceAtCentroid,
                lhs: lhs40,
                mid: None,
                rhs: dmax_m,
                holds: holds_leq(lhs40, dmax_m, num),
                hypothesis_ok: true,
                note: trivial_note,
                inputs: inputs.clone(),
            };
            if m <= n.saturating_sub(3) {
                let ratio = (((n - m) * (n - m - 1) + 1) as f64
                    / ((n - m - 1) * (n - m - 2)) as f64)
                    .sqrt();
                let lower42 = ratio * dmax_m;
                reports[3] = BoundReport {
                    id: BoundId::DerivativeSpanSandwichAtCentroid,
                    lhs: lower42,
                    mid: Some(span_m),
                    rhs: 2.0 * dmax_m,
                    holds: holds_leq(lower42, span_m, num)
                        && holds_leq(span_m, 2.0 * dmax_m, num),
                    hypothesis_ok: true,
                    note: None,
                    inputs: inputs.clone(),
                };
            } else {
                reports[3] = BoundReport::gated(
                    BoundId::DerivativeSpanSandwichAtCentroid,
                    "needs m <= n - 3",
                    inputs.clone(),
                );
            }
        }
    }
    Ok(reports)
}
