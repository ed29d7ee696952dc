//! Shared root data for the identity and inequality checkers.

use num_traits::ToPrimitive;

use crate::polycore::{
    centroid_data, is_real_rooted, root_multiset, CentroidData, GaussianRational, Polynomial,
    Rational, RootFindConfig, RootMultiset, RootValue,
};

use super::LocalizeError;

/// One distinct root of a real-rooted polynomial, with its real value.
#[derive(Clone, Debug)]
pub struct DistinctRoot {
    pub value: RootValue,
    pub multiplicity: usize,
    pub x: f64,
}

/// Monic polynomial with centroid data and sorted real roots; the common
/// substrate of every real-rooted inequality.
pub struct RealContext {
    pub f: Polynomial,
    pub n: usize,
    pub cd: CentroidData,
    pub roots: RootMultiset,
    /// Distinct roots in increasing order.
    pub distinct: Vec<DistinctRoot>,
}

impl RealContext {
    pub fn build(p: &Polynomial, cfg: &RootFindConfig) -> Result<Self, LocalizeError> {
        if p.is_zero() || p.degree() < 2 {
            return Err(LocalizeError::Domain("need degree >= 2".into()));
        }
        if !is_real_rooted(p) {
            return Err(LocalizeError::Domain(
                "complex roots detected; this operation requires a real-rooted polynomial".into(),
            ));
        }
        let f = p.monic();
        let n = f.degree();
        let cd = centroid_data(&f)?;
        let roots = root_multiset(&f, cfg)?;
        let mut distinct: Vec<DistinctRoot> = roots
            .entries()
            .iter()
            .map(|e| DistinctRoot {
                value: e.value.clone(),
                multiplicity: e.multiplicity,
                x: e.value.approx_real(),
            })
            .collect();
        distinct.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap_or(std::cmp::Ordering::Equal));
        Ok(RealContext { f, n, cd, roots, distinct })
    }

    pub fn k(&self) -> usize {
        self.distinct.len()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.distinct.iter().map(|d| d.multiplicity).max().unwrap_or(0)
    }

    pub fn min_multiplicity(&self) -> usize {
        self.distinct.iter().map(|d| d.multiplicity).min().unwrap_or(0)
    }

    /// Centroid as an exact rational (real coefficients guarantee this).
    pub fn centroid_rational(&self) -> &Rational {
        self.cd.centroid.as_rational().expect("real-rooted implies rational centroid")
    }

    pub fn centroid_f64(&self) -> f64 {
        self.centroid_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Exact multiplicity of the centroid as a root of `f` (0 when the
    /// centroid is not a root).
    pub fn centroid_multiplicity(&self) -> usize {
        exact_root_multiplicity(&self.f, &self.cd.centroid)
    }

    /// `|gap|` as a float.
    pub fn gap_abs(&self) -> f64 {
        self.cd.gap_abs()
    }

    /// Exact squared gap (real case).
    pub fn gap_squared_rational(&self) -> &Rational {
        self.cd.gap_squared.as_rational().expect("real coefficients")
    }

    /// Largest and smallest distance between consecutive distinct roots.
    /// Requires `k >= 2`.
    pub fn consecutive_extremes(&self) -> (f64, f64) {
        let mut delta_max = 0.0f64;
        let mut delta_min = f64::INFINITY;
        for w in self.distinct.windows(2) {
            let d = w[1].x - w[0].x;
            delta_max = delta_max.max(d);
            delta_min = delta_min.min(d);
        }
        (delta_max, delta_min)
    }

    /// Distances of distinct roots other than the centroid from the centroid:
    /// `(min, max, multiplicity at the max, value at the max)`; `None` when
    /// every root coincides with the centroid.
    pub fn centroid_distances(&self) -> Option<(f64, f64, usize, f64)> {
        let c = self.centroid_f64();
        let c_exact = &self.cd.centroid;
        let mut best: Option<(f64, f64, usize, f64)> = None;
        for d in &self.distinct {
            let is_centroid = match d.value.as_exact() {
                Some(z) => z == c_exact,
                None => false,
            };
            if is_centroid {
                continue;
            }
            let dist = (d.x - c).abs();
            best = Some(match best {
                None => (dist, dist, d.multiplicity, d.x),
                Some((lo, hi, hm, hx)) => {
                    if dist > hi {
                        (lo.min(dist), dist, d.multiplicity, d.x)
                    } else {
                        (lo.min(dist), hi, hm, hx)
                    }
                }
            });
        }
        best
    }

    /// Span `lambda_max - lambda_min` with the multiplicities at the ends.
    pub fn span(&self) -> (f64, usize, usize) {
        let lo = self.distinct.first().expect("nonempty");
        let hi = self.distinct.last().expect("nonempty");
        (hi.x - lo.x, hi.multiplicity, lo.multiplicity)
    }
}

/// Exact multiplicity of `z` as a root of `p` (0 when not a root).
pub fn exact_root_multiplicity(p: &Polynomial, z: &GaussianRational) -> usize {
    let mut mult = 0;
    let mut g = p.monic();
    let lin = Polynomial::linear_from_root(z);
    while !g.is_constant() && g.eval(z).is_zero() {
        let (q, r) = g.div_rem(&lin);
        debug_assert!(r.is_zero());
        g = q;
        mult += 1;
    }
    mult
}

/// Real root values of the `m`-th derivative, listed with multiplicity in
/// non-decreasing order.
pub fn derivative_root_values(
    f: &Polynomial,
    m: usize,
    cfg: &RootFindConfig,
) -> Result<Vec<f64>, LocalizeError> {
    let fm = f.derive(m)?;
    if fm.is_constant() {
        return Ok(Vec::new());
    }
    let ms = root_multiset(&fm, cfg)?;
    let mut xs = Vec::with_capacity(fm.degree());
    for e in ms.entries() {
        for _ in 0..e.multiplicity {
            xs.push(e.value.approx_real());
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(xs)
}
