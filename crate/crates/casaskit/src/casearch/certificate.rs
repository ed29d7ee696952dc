//! Exact Casas-Alvero certification and shared-root bookkeeping.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::polycore::{
    centroid_data, GaussianRational, PolyError, Polynomial, Rational,
};

/// Evidence per derivative order: either the nonconstant gcd factor
/// witnessing a shared root, or a certificate that none exists.
#[derive(Clone, Debug)]
pub enum SharedEvidence {
    Shared { witness: Polynomial },
    NotShared,
}

impl SharedEvidence {
    pub fn is_shared(&self) -> bool {
        matches!(self, SharedEvidence::Shared { .. })
    }
}

/// Certification verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaVerdict {
    /// A pure power of one linear factor.
    Trivial,
    /// Shares a root with every non-constant derivative but is not trivial —
    /// exactly what the conjecture asserts cannot exist.
    CaNontrivialCandidate,
    /// Misses at least one derivative order.
    NotCa,
}

impl CaVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            CaVerdict::Trivial => "trivial",
            CaVerdict::CaNontrivialCandidate => "ca_nontrivial_candidate",
            CaVerdict::NotCa => "not_ca",
        }
    }
}

/// Per-order shared-root evidence with the overall verdict.
#[derive(Clone, Debug)]
pub struct CACertificate {
    /// `(m, evidence)` for every order `m = 1..n-1`.
    pub per_order: Vec<(usize, SharedEvidence)>,
    pub verdict: CaVerdict,
}

impl CACertificate {
    pub fn shared_at(&self, m: usize) -> Option<bool> {
        self.per_order
            .iter()
            .find(|(order, _)| *order == m)
            .map(|(_, e)| e.is_shared())
    }
}

/// Exact per-order gcd certification of the Casas-Alvero property.
pub fn certify_ca(p: &Polynomial) -> Result<CACertificate, PolyError> {
    if p.is_zero() || p.degree() < 1 {
        return Err(PolyError::Domain("certification needs degree >= 1".into()));
    }
    let f = p.monic();
    let n = f.degree();
    let mut per_order = Vec::with_capacity(n.saturating_sub(1));
    let mut all_shared = true;
    for m in 1..n {
        let g = Polynomial::gcd(&f, &f.derive(m).expect("m < n"));
        if g.is_constant() {
            all_shared = false;
            per_order.push((m, SharedEvidence::NotShared));
        } else {
            per_order.push((m, SharedEvidence::Shared { witness: g }));
        }
    }
    let verdict = if f.is_trivial() {
        CaVerdict::Trivial
    } else if all_shared {
        CaVerdict::CaNontrivialCandidate
    } else {
        CaVerdict::NotCa
    };
    Ok(CACertificate { per_order, verdict })
}

/// Count of distinct roots shared between `f` and `f^(m)`, excluding the
/// centroid-root, for every order `m = 0..n-2`.
#[derive(Clone, Debug)]
pub struct SharedRootCounts {
    pub counts: BTreeMap<usize, usize>,
    pub centroid_is_root: bool,
    pub max_multiplicity: usize,
}

impl SharedRootCounts {
    pub fn l(&self, m: usize) -> Option<usize> {
        self.counts.get(&m).copied()
    }

    /// Orders `m >= r` with `l(m) = l(m+1) = 0`; the order `n-1` count is
    /// zero by definition (the only root there is the centroid).
    pub fn consecutive_zero_pairs(&self) -> Vec<usize> {
        let r = self.max_multiplicity;
        let max_m = self.counts.keys().max().copied().unwrap_or(0);
        let mut out = Vec::new();
        for m in r..=max_m {
            let here = self.counts.get(&m).copied().unwrap_or(0);
            let next = if m == max_m {
                0 // order n-1 shares only the centroid
            } else {
                self.counts.get(&(m + 1)).copied().unwrap_or(0)
            };
            if here == 0 && next == 0 {
                out.push(m);
            }
        }
        out
    }
}

/// Number of distinct complex roots of a nonconstant polynomial: the degree
/// of its square-free part.
fn distinct_root_count(p: &Polynomial) -> usize {
    if p.is_constant() {
        0
    } else {
        p.squarefree_part().degree()
    }
}

/// Computes the shared-root counts exactly from gcd factor structure; no
/// root extraction.
pub fn shared_root_counts(p: &Polynomial) -> Result<SharedRootCounts, PolyError> {
    if p.is_zero() || p.degree() < 2 {
        return Err(PolyError::Domain("shared-root counts need degree >= 2".into()));
    }
    let f = p.monic();
    let n = f.degree();
    let cd = centroid_data(&f)?;
    let centroid_is_root = f.eval(&cd.centroid).is_zero();
    let mut counts = BTreeMap::new();
    for m in 0..=(n - 2) {
        let fm = f.derive(m).expect("m <= n-2");
        let g = Polynomial::gcd(&f, &fm);
        let mut count = if g.is_constant() { 0 } else { distinct_root_count(&g) };
        if centroid_is_root && !g.is_constant() && g.eval(&cd.centroid).is_zero() {
            count -= 1;
        }
        counts.insert(m, count);
    }
    let max_multiplicity = crate::polycore::squarefree_decompose(&f)
        .iter()
        .map(|(_, mult)| *mult)
        .max()
        .unwrap_or(1);
    Ok(SharedRootCounts { counts, centroid_is_root, max_multiplicity })
}

/// Chooses a rational scale `alpha > 0` placing every supplied common root
/// strictly inside the unit disc, and applies it to the polynomial's roots
/// (homogeneous scaling preserves CA structure).
pub fn normalize_unit_disc(
    p: &Polynomial,
    common_roots: &[GaussianRational],
) -> Result<(Polynomial, Rational), PolyError> {
    let max_norm = common_roots
        .iter()
        .map(|z| z.norm_sqr())
        .max()
        .unwrap_or_else(Rational::zero);
    let alpha = if max_norm < Rational::one() {
        Rational::one()
    } else {
        // smallest integer t with t^2 >= max |z|^2, then alpha = 1/(2t):
        // scaled magnitudes are at most 1/2.
        let mut t = max_norm.to_integer().sqrt();
        while Rational::from_integer(&t * &t) < max_norm {
            t += 1;
        }
        Rational::new(BigInt::one(), 2 * t)
    };
    let scaled = p.scale_roots(&GaussianRational::from_rational(alpha.clone()))?;
    Ok((scaled, alpha))
}
