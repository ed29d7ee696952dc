//! Root extraction: exact where the field allows it, certified numeric
//! elsewhere.
//!
//! Multiplicities always come from the square-free decomposition, so the
//! numeric solver only ever sees simple roots. Exact values are recovered
//! from linear factors, quadratics whose discriminant is a Gaussian-rational
//! square, the rational root test, and a snap-and-verify pass that promotes
//! numeric roots to exact ones whenever an exact candidate checks out.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gaussian::{GaussianRational, Rational};
use super::poly::Polynomial;
use super::squarefree::squarefree_decompose;
use super::{PolyError, RootFindError};

/// A numeric root with a certified inclusion radius: the disk
/// `|z - value| <= error_radius` contains exactly one true root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexApprox {
    pub value: Complex64,
    pub error_radius: f64,
}

/// Root value: exact Gaussian rational or certified numeric approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum RootValue {
    Exact(GaussianRational),
    Approx(ComplexApprox),
}

impl RootValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            RootValue::Exact(z) => z.to_complex(),
            RootValue::Approx(a) => a.value,
        }
    }

    pub fn as_exact(&self) -> Option<&GaussianRational> {
        match self {
            RootValue::Exact(z) => Some(z),
            RootValue::Approx(_) => None,
        }
    }

    pub fn error_radius(&self) -> f64 {
        match self {
            RootValue::Exact(_) => 0.0,
            RootValue::Approx(a) => a.error_radius,
        }
    }

    /// True when the root is exactly real, or numerically real within its
    /// certification radius.
    pub fn is_real(&self) -> bool {
        match self {
            RootValue::Exact(z) => z.is_real(),
            RootValue::Approx(a) => a.value.im.abs() <= a.error_radius,
        }
    }

    /// Real part as `f64` (the natural reading for real-rooted input).
    pub fn approx_real(&self) -> f64 {
        match self {
            RootValue::Exact(z) => z.re.to_f64().unwrap_or(f64::NAN),
            RootValue::Approx(a) => a.value.re,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootEntry {
    pub value: RootValue,
    pub multiplicity: usize,
}

/// Distinct roots with multiplicities; multiplicities sum to the degree.
#[derive(Clone, Debug)]
pub struct RootMultiset {
    entries: Vec<RootEntry>,
    degree: usize,
}

impl RootMultiset {
    pub fn entries(&self) -> &[RootEntry] {
        &self.entries
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of distinct roots.
    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).max().unwrap_or(0)
    }

    pub fn min_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).min().unwrap_or(0)
    }

    pub fn all_exact(&self) -> bool {
        self.entries.iter().all(|e| e.value.as_exact().is_some())
    }

    pub fn all_real(&self) -> bool {
        self.entries.iter().all(|e| e.value.is_real())
    }

    /// Certified upper bound on `|p(value)|` for entry `i` of the multiset of
    /// a polynomial with leading coefficient `lead`: the true root in this
    /// entry's disk is within `error_radius`, and every other true root is
    /// within its own disk.
    pub fn residual_bound(&self, i: usize, lead_abs: f64) -> f64 {
        let e = &self.entries[i];
        let z = e.value.to_complex();
        let mut bound = lead_abs * e.value.error_radius().powi(e.multiplicity as i32);
        for (j, other) in self.entries.iter().enumerate() {
            if j == i {
                continue;
            }
            let d = (z - other.value.to_complex()).norm() + other.value.error_radius();
            bound *= d.powi(other.multiplicity as i32);
        }
        bound
    }
}

/// All roots of the `m`-th derivative as certified numeric values, listed
/// with multiplicity (exact roots carry a zero radius).
#[derive(Clone, Debug)]
pub struct DerivativeRoots {
    pub order: usize,
    pub roots: Vec<ComplexApprox>,
}

/// Computes the `n - m` roots of the `m`-th derivative, `0 <= m <= n-1`.
pub fn derivative_roots(
    p: &Polynomial,
    m: usize,
    cfg: &RootFindConfig,
) -> Result<DerivativeRoots, RootFindError> {
    if p.is_zero() || p.degree() < 1 {
        return Err(RootFindError::Poly(PolyError::Domain(
            "derivative roots need degree >= 1".into(),
        )));
    }
    let n = p.degree();
    if m > n - 1 {
        return Err(RootFindError::Poly(PolyError::Domain(format!(
            "derivative order {} out of range [0, {}]",
            m,
            n - 1
        ))));
    }
    let fm = p.derive(m).expect("m <= n-1");
    let mut roots = Vec::with_capacity(n - m);
    for entry in root_multiset(&fm, cfg)?.entries() {
        let approx = match &entry.value {
            RootValue::Exact(z) => ComplexApprox { value: z.to_complex(), error_radius: 0.0 },
            RootValue::Approx(a) => *a,
        };
        for _ in 0..entry.multiplicity {
            roots.push(approx);
        }
    }
    debug_assert_eq!(roots.len(), n - m);
    Ok(DerivativeRoots { order: m, roots })
}

/// Tuning for the numeric solver.
#[derive(Clone, Copy, Debug)]
pub struct RootFindConfig {
    pub max_iterations: usize,
    /// Convergence when every correction is below `epsilon * (1 + |z|)`.
    pub epsilon: f64,
    /// Attempt to promote numeric roots to exact Gaussian rationals.
    pub snap_to_exact: bool,
}

impl Default for RootFindConfig {
    fn default() -> Self {
        RootFindConfig { max_iterations: 200, epsilon: 1e-14, snap_to_exact: true }
    }
}

/// Simultaneous-iteration (Aberth-Ehrlich) root finder for a square-free
/// polynomial given by leading-first complex coefficients.
///
/// Certification: with the Weierstrass corrections `W_i = p(z_i) / (a_0
/// prod_{j != i} (z_i - z_j))`, the union of disks `|z - z_i| <= d |W_i|`
/// contains every root; disjoint disks therefore contain exactly one each.
pub fn aberth(coeffs: &[Complex64], cfg: &RootFindConfig) -> Result<Vec<ComplexApprox>, RootFindError> {
    assert!(coeffs.len() >= 2, "aberth needs degree >= 1");
    let d = coeffs.len() - 1;
    let lead = coeffs[0];
    assert!(lead.norm() > 0.0, "aberth needs a nonzero leading coefficient");

    // Cauchy-style starting radius with asymmetric angles so symmetric
    // configurations cannot stall the iteration.
    let max_ratio = coeffs[1..]
        .iter()
        .map(|c| (c / lead).norm())
        .fold(0.0f64, f64::max);
    let radius = 1.0 + max_ratio;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.41;
            radius * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();

    let deriv: Vec<Complex64> = coeffs[..d]
        .iter()
        .enumerate()
        .map(|(i, c)| c * ((d - i) as f64))
        .collect();
    let eval = |cs: &[Complex64], x: Complex64| -> Complex64 {
        cs.iter().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
    };

    let mut settled = vec![false; d];
    let mut converged = false;
    let mut prev_step = f64::INFINITY;
    let mut stalls = 0usize;
    for _ in 0..cfg.max_iterations {
        let mut max_step = 0.0f64;
        for i in 0..d {
            if settled[i] {
                continue;
            }
            let pz = eval(coeffs, z[i]);
            let dz = eval(&deriv, z[i]);
            let newton = if dz.norm() > 0.0 {
                pz / dz
            } else {
                // Derivative vanished at the iterate; nudge off the point.
                let nudge = 1e-6 * (1.0 + z[i].norm());
                z[i] += Complex64::new(nudge, 1e-6);
                continue;
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() > 0.0 { newton / denom } else { newton };
            z[i] -= step;
            let rel = step.norm() / (1.0 + z[i].norm());
            if rel < cfg.epsilon {
                settled[i] = true;
            }
            max_step = max_step.max(rel);
        }
        if settled.iter().all(|&s| s) || max_step < cfg.epsilon {
            converged = true;
            break;
        }
        // Corrections at the double-precision noise floor stop shrinking long
        // before the step criterion; the certified radii below are the actual
        // guarantee, so accept an iteration whose best correction has stopped
        // improving at a tiny level.
        if max_step < 0.75 * prev_step {
            prev_step = max_step;
            stalls = 0;
        } else {
            stalls += 1;
        }
        if stalls >= 12 && prev_step < 1e-10 {
            converged = true;
            break;
        }
    }

    let certified: Vec<ComplexApprox> = (0..d)
        .map(|i| {
            let pz = eval(coeffs, z[i]);
            let mut denom = lead;
            for j in 0..d {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            let w = if denom.norm() > 0.0 { (pz / denom).norm() } else { f64::INFINITY };
            ComplexApprox {
                value: z[i],
                error_radius: (d as f64) * w * (1.0 + 1e-12),
            }
        })
        .collect();

    if converged {
        Ok(certified)
    } else {
        Err(RootFindError::NonConvergence { best: certified })
    }
}

/// Continued-fraction rational approximation of `x` with denominator at most
/// `max_den`, or `None` when `x` is not finite.
fn rational_approx(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let exact = BigRational::from_float(x)?;
    if exact.denom().to_u64().map(|d| d <= max_den).unwrap_or(false) {
        return Some(exact);
    }
    // Stern-Brocot style convergents of the exact binary value.
    let mut p_prev = BigInt::zero();
    let mut q_prev = BigInt::one();
    let mut p = BigInt::one();
    let mut q = BigInt::zero();
    let mut frac = exact.clone();
    let cap = BigInt::from(max_den);
    loop {
        let a = frac.to_integer();
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        if q_next > cap {
            break;
        }
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        let rem = &frac - BigRational::from_integer(a);
        if rem.is_zero() {
            break;
        }
        frac = rem.recip();
    }
    if q.is_zero() {
        None
    } else {
        Some(BigRational::new(p, q))
    }
}

/// Tries to replace a numeric root by a nearby exact Gaussian rational that
/// is verified to be an exact root of `g`.
fn snap_to_exact_root(g: &Polynomial, approx: &ComplexApprox) -> Option<GaussianRational> {
    let tol = (approx.error_radius * 4.0).max(1e-9);
    let max_den = 1_000_000u64;
    let re_candidates = rational_approx(approx.value.re, max_den);
    let im_candidates = if approx.value.im.abs() <= tol {
        Some(Rational::zero())
    } else {
        rational_approx(approx.value.im, max_den)
    };
    let (re, im) = (re_candidates?, im_candidates?);
    let cand = GaussianRational::new(re, im);
    let delta = cand.to_complex() - approx.value;
    if delta.norm() > tol {
        return None;
    }
    if g.eval(&cand).is_zero() {
        Some(cand)
    } else {
        None
    }
}

/// Divisors of `n` (positive), via trial-division factorization. Gives up
/// (returns `None`) when a cofactor beyond the trial bound remains, so a
/// missed divisor can never silently drop a root.
fn positive_divisors(n: &BigInt, trial_bound: u64) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    if m.is_zero() {
        return None;
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, factors: &mut Vec<(BigInt, u32)>| {
        if let Some(last) = factors.last_mut() {
            if last.0 == p {
                last.1 += 1;
                return;
            }
        }
        factors.push((p, 1));
    };
    let mut p = BigInt::from(2u32);
    while &(&p * &p) <= &m {
        if p.to_u64().map(|v| v > trial_bound).unwrap_or(true) {
            return None;
        }
        while m.is_multiple_of(&p) {
            m /= &p;
            push(p.clone(), &mut factors);
        }
        p += if p == BigInt::from(2u32) { BigInt::one() } else { BigInt::from(2u32) };
    }
    if !m.is_one() {
        push(m, &mut factors);
    }
    let mut divisors = vec![BigInt::one()];
    for (prime, count) in factors {
        let mut extended = Vec::with_capacity(divisors.len() * (count as usize + 1));
        for d in &divisors {
            let mut acc = d.clone();
            extended.push(acc.clone());
            for _ in 0..count {
                acc = &acc * &prime;
                extended.push(acc.clone());
            }
        }
        divisors = extended;
        if divisors.len() > 4096 {
            return None;
        }
    }
    Some(divisors)
}

/// Rational root test on a real-rational-coefficient polynomial; returns one
/// exact root if any exists among the candidates.
fn find_rational_root(g: &Polynomial) -> Option<GaussianRational> {
    if !g.has_real_coeffs() {
        return None;
    }
    // x = 0 first.
    if g.coeff_of_power(0).is_zero() {
        return Some(GaussianRational::zero());
    }
    // Clear denominators.
    let mut lcm = BigInt::one();
    for c in g.coeffs_descending() {
        lcm = lcm.lcm(c.re.denom());
    }
    let ints: Vec<BigInt> = g
        .coeffs_descending()
        .iter()
        .map(|c| (&c.re * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let lead = ints.first()?.clone();
    let constant = ints.last()?.clone();
    let num_divs = positive_divisors(&constant, 1_000_000)?;
    let den_divs = positive_divisors(&lead, 1_000_000)?;
    for p in &num_divs {
        for q in &den_divs {
            for sign in [1i64, -1] {
                let cand = GaussianRational::from_rational(Rational::new(
                    p * BigInt::from(sign),
                    q.clone(),
                ));
                if g.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Roots of a monic quadratic, exact when the discriminant is a square in
/// the Gaussian rationals.
fn quadratic_roots(g: &Polynomial) -> Vec<RootValue> {
    debug_assert_eq!(g.degree(), 2);
    let m = g.monic();
    let b = m.coeff_desc(1);
    let c = m.coeff_desc(2);
    let four = GaussianRational::from_i64(4);
    let disc = &(&b * &b) - &(&four * &c);
    let two = GaussianRational::from_i64(2);
    match disc.sqrt() {
        Some(s) => {
            let r1 = &(-&b - &s) / &two;
            let r2 = &(-&b + &s) / &two;
            vec![RootValue::Exact(r1), RootValue::Exact(r2)]
        }
        None => {
            let s = disc.to_complex().sqrt();
            let bb = b.to_complex();
            let err = 8.0 * f64::EPSILON * (1.0 + bb.norm() + s.norm());
            vec![
                RootValue::Approx(ComplexApprox { value: (-bb - s) / 2.0, error_radius: err }),
                RootValue::Approx(ComplexApprox { value: (-bb + s) / 2.0, error_radius: err }),
            ]
        }
    }
}

/// All roots of a square-free polynomial, exact wherever a verified exact
/// value is found.
fn roots_of_squarefree(
    g: &Polynomial,
    cfg: &RootFindConfig,
) -> Result<Vec<RootValue>, RootFindError> {
    let mut out = Vec::new();
    let mut h = g.monic();
    // Peel exact roots while we can.
    loop {
        if h.is_constant() {
            return Ok(out);
        }
        match h.degree() {
            1 => {
                out.push(RootValue::Exact(-&h.coeff_desc(1)));
                return Ok(out);
            }
            2 => {
                out.extend(quadratic_roots(&h));
                return Ok(out);
            }
            _ => match find_rational_root(&h) {
                Some(root) => {
                    let (q, r) = h.div_rem(&Polynomial::linear_from_root(&root));
                    debug_assert!(r.is_zero());
                    out.push(RootValue::Exact(root));
                    h = q.monic();
                }
                None => break,
            },
        }
    }
    // Numeric remainder.
    let approx = aberth(&h.to_complex_coeffs(), cfg)?;
    if cfg.snap_to_exact {
        for a in &approx {
            if let Some(exact) = snap_to_exact_root(&h, a) {
                let (q, r) = h.div_rem(&Polynomial::linear_from_root(&exact));
                debug_assert!(r.is_zero());
                out.push(RootValue::Exact(exact));
                let mut rest = roots_of_squarefree(&q.monic(), cfg)?;
                out.append(&mut rest);
                return Ok(out);
            }
        }
    }
    out.extend(approx.into_iter().map(RootValue::Approx));
    Ok(out)
}

fn root_sort_key(v: &RootValue) -> (f64, f64, u8) {
    let z = v.to_complex();
    let exactness = if v.as_exact().is_some() { 0 } else { 1 };
    (z.re, z.im, exactness)
}

/// Computes the full root multiset of `p`: multiplicities exact from the
/// square-free decomposition, values exact where possible, certified numeric
/// otherwise. Entries are sorted by value (real part, then imaginary part).
pub fn root_multiset(p: &Polynomial, cfg: &RootFindConfig) -> Result<RootMultiset, RootFindError> {
    if p.is_zero() || p.degree() < 1 {
        return Err(RootFindError::Poly(PolyError::Domain(
            "root multiset needs degree >= 1".into(),
        )));
    }
    let degree = p.degree();
    let mut entries: Vec<RootEntry> = Vec::new();
    for (factor, mult) in squarefree_decompose(p) {
        for value in roots_of_squarefree(&factor, cfg)? {
            entries.push(RootEntry { value, multiplicity: mult });
        }
    }
    entries.sort_by(|a, b| {
        root_sort_key(&a.value)
            .partial_cmp(&root_sort_key(&b.value))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let total: usize = entries.iter().map(|e| e.multiplicity).sum();
    debug_assert_eq!(total, degree);
    // Distinctness guarantee: exact values from coprime factors are distinct
    // by construction; numeric disks must not overlap.
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            let (a, b) = (&entries[i], &entries[j]);
            if let (Some(x), Some(y)) = (a.value.as_exact(), b.value.as_exact()) {
                debug_assert!(x != y);
                continue;
            }
            let dist = (a.value.to_complex() - b.value.to_complex()).norm();
            let need = 2.0 * a.value.error_radius().max(b.value.error_radius());
            if dist <= need {
                return Err(RootFindError::Uncertified {
                    message: format!(
                        "numeric roots too close to separate: |{} - {}| = {:.3e} <= {:.3e}",
                        a.value.to_complex(),
                        b.value.to_complex(),
                        dist,
                        need
                    ),
                });
            }
        }
    }
    Ok(RootMultiset { entries, degree })
}
