//! Extremal root statistics: centroid distances, per-order analogues, span.

use serde::Serialize;

use crate::polycore::{Polynomial, RootFindConfig};

use super::context::{derivative_root_values, RealContext};
use super::LocalizeError;

/// Distances of roots from the centroid, per-order analogues for the `m`-th
/// derivative, and the span of the root set.
///
/// `min_distance`/`max_distance` run over distinct roots other than the
/// centroid itself and are absent when there is no such root; the
/// derivative-side quantities run over all roots of the `m`-th derivative.
#[derive(Clone, Debug, Serialize)]
pub struct ExtremalStats {
    pub order: usize,
    pub min_distance: Option<f64>,
    pub max_distance: Option<f64>,
    pub min_distance_m: Option<f64>,
    pub max_distance_m: Option<f64>,
    pub span: f64,
    pub span_m: Option<f64>,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub mult_at_max: usize,
    pub mult_at_min: usize,
}

/// Computes extremal statistics for a real-rooted polynomial of degree >= 2
/// and derivative order `0 <= m <= n-1`.
pub fn extremal_stats(
    p: &Polynomial,
    m: usize,
    cfg: &RootFindConfig,
) -> Result<ExtremalStats, LocalizeError> {
    let ctx = RealContext::build(p, cfg)?;
    let n = ctx.n;
    if m > n - 1 {
        return Err(LocalizeError::Domain(format!(
            "derivative order {} out of range [0, {}]",
            m,
            n - 1
        )));
    }
    let c = ctx.centroid_f64();
    let (dist_min, dist_max) = match ctx.centroid_distances() {
        Some((lo, hi, _, _)) => (Some(lo), Some(hi)),
        None => (None, None),
    };
    let dxs = derivative_root_values(&ctx.f, m, cfg)?;
    let (dmin_m, dmax_m, span_m) = if dxs.is_empty() {
        (None, None, None)
    } else {
        let dmin = dxs.iter().map(|x| (x - c).abs()).fold(f64::INFINITY, f64::min);
        let dmax = dxs.iter().map(|x| (x - c).abs()).fold(0.0f64, f64::max);
        let span = dxs.last().unwrap() - dxs.first().unwrap();
        (Some(dmin), Some(dmax), Some(span))
    };
    let lo = ctx.distinct.first().expect("degree >= 2");
    let hi = ctx.distinct.last().expect("degree >= 2");
    Ok(ExtremalStats {
        order: m,
        min_distance: dist_min,
        max_distance: dist_max,
        min_distance_m: dmin_m,
        max_distance_m: dmax_m,
        span: hi.x - lo.x,
        span_m,
        lambda_max: hi.x,
        lambda_min: lo.x,
        mult_at_max: hi.multiplicity,
        mult_at_min: lo.multiplicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, GaussianRational};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn symmetric_cubic() {
        let st = extremal_stats(&p("x^3 - x"), 1, &RootFindConfig::default()).unwrap();
        assert_eq!(st.min_distance, Some(1.0));
        assert_eq!(st.max_distance, Some(1.0));
        assert_eq!(st.span, 2.0);
        assert_eq!(st.lambda_max, 1.0);
        assert_eq!(st.lambda_min, -1.0);
    }

    #[test]
    fn pure_power_has_no_off_centroid_roots() {
        let f = Polynomial::from_roots(&[(GaussianRational::from_i64(3), 4)]);
        let st = extremal_stats(&f, 1, &RootFindConfig::default()).unwrap();
        assert!(st.min_distance.is_none() && st.max_distance.is_none());
        assert_eq!(st.span, 0.0);
    }

    #[test]
    fn double_root_cubic() {
        // x^2(x-1): centroid 1/3; distances 1/3 and 2/3
        let st = extremal_stats(&p("x^3 - x^2"), 1, &RootFindConfig::default()).unwrap();
        assert!((st.min_distance.unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!((st.max_distance.unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(st.span, 1.0);
    }

    #[test]
    fn monotone_in_order() {
        let f = p("x^5 - 10*x^3 + 9*x");
        let mut prev_d = f64::INFINITY;
        let mut prev_span = f64::INFINITY;
        for m in 1..=4usize {
            let st = extremal_stats(&f, m, &RootFindConfig::default()).unwrap();
            let d = st.max_distance_m.unwrap();
            let s = st.span_m.unwrap();
            assert!(d <= prev_d + 1e-12);
            assert!(s <= prev_span + 1e-12);
            prev_d = d;
            prev_span = s;
        }
    }
}
