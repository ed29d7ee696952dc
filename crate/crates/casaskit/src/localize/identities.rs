//! Sz.-Nagy root identities as machine-checked residuals.
//!
//! The exact backend never touches a root: every sum over the roots of `f`
//! or `f^(m)` reduces to power sums computed from coefficients by Newton's
//! identities, so the residual of a true identity is the exact rational
//! zero. The numeric backend substitutes certified roots and is used to
//! cross-check the reduction.

use num_complex::Complex64;

use crate::polycore::{
    centroid_data, power_sums, root_multiset, sum_deviations, sum_squared_deviations,
    GaussianRational, Polynomial, RootFindConfig,
};

use super::context::exact_root_multiplicity;
use super::report::{Backend, IdentityId, IdentityReport, InputsEcho, ResidualValue};
use super::LocalizeError;

/// Larger of two deviations by exact squared modulus.
fn max_by_norm(a: GaussianRational, b: GaussianRational) -> GaussianRational {
    if a.norm_sqr() >= b.norm_sqr() {
        a
    } else {
        b
    }
}

fn echo(m: usize, z: &GaussianRational) -> InputsEcho {
    InputsEcho { m: Some(m), z: Some(z.to_text()), ..Default::default() }
}

/// Evaluates the three centroid/gap identities linking `f` and `f^(m)` at
/// the point `z`. Each identity equates three expressions; the stored
/// residual is the larger of the two pairwise differences, so a report
/// passes exactly when the whole chain agrees.
pub fn sz_nagy_residuals(
    p: &Polynomial,
    z: &GaussianRational,
    m: usize,
    backend: Backend,
    cfg: &RootFindConfig,
) -> Result<[IdentityReport; 3], LocalizeError> {
    if p.is_zero() || p.degree() < 2 {
        return Err(LocalizeError::Domain("identities need degree >= 2".into()));
    }
    let f = p.monic();
    let n = f.degree();
    if m > n - 2 {
        return Err(LocalizeError::Domain(format!(
            "derivative order {} out of range (max {})",
            m,
            n - 2
        )));
    }
    match backend {
        Backend::Exact => Ok(sz_nagy_exact(&f, z, m)),
        Backend::Numeric => sz_nagy_numeric(&f, z, m, cfg),
    }
}

fn sz_nagy_exact(f: &Polynomial, z: &GaussianRational, m: usize) -> [IdentityReport; 3] {
    let n = f.degree();
    let cd = centroid_data(f).expect("degree >= 2");
    let centroid = &cd.centroid;
    let gap2 = &cd.gap_squared;

    let fm = f.derive(m).expect("m <= n-2");
    let ps_f = power_sums(f, 2);
    let ps_m = power_sums(&fm, 2);
    let nn = GaussianRational::from_i64(n as i64);
    let dm = GaussianRational::from_i64((n - m) as i64);

    // shift identity: c - z = (1/n) sum r_j (l_j - z) = (1/(n-m)) sum (xi_j - z)
    let a15 = centroid - z;
    let b15 = &sum_deviations(&ps_f, z) / &nn;
    let c15 = &sum_deviations(&ps_m, z) / &dm;
    let r15 = max_by_norm(&a15 - &b15, &a15 - &c15);

    // variance identity: gap^2 via second moments of either root set
    let shift2 = &a15 * &a15;
    let nf1 = &nn * &GaussianRational::from_i64((n - 1) as i64);
    let df1 = &dm * &GaussianRational::from_i64((n - m - 1) as i64);
    let b16 = &(&sum_squared_deviations(&ps_f, z) - &(&nn * &shift2)) / &nf1;
    let c16 = &(&sum_squared_deviations(&ps_m, z) - &(&dm * &shift2)) / &df1;
    let r16 = max_by_norm(gap2 - &b16, gap2 - &c16);

    // pairwise identity: gap^2 from pairwise squared differences
    let b17 = &crate::polycore::pairwise_square_sum(&ps_f) / &(&nn * &nf1);
    let c17 = &crate::polycore::pairwise_square_sum(&ps_m) / &(&dm * &df1);
    let r17 = max_by_norm(gap2 - &b17, gap2 - &c17);

    [
        IdentityReport {
            id: IdentityId::CentroidShift,
            backend: Backend::Exact,
            residual: Some(ResidualValue::Exact(r15)),
            hypothesis_ok: true,
            inputs: echo(m, z),
        },
        IdentityReport {
            id: IdentityId::GapVariance,
            backend: Backend::Exact,
            residual: Some(ResidualValue::Exact(r16)),
            hypothesis_ok: true,
            inputs: echo(m, z),
        },
        IdentityReport {
            id: IdentityId::GapPairSum,
            backend: Backend::Exact,
            residual: Some(ResidualValue::Exact(r17)),
            hypothesis_ok: true,
            inputs: echo(m, z),
        },
    ]
}

fn sz_nagy_numeric(
    f: &Polynomial,
    z: &GaussianRational,
    m: usize,
    cfg: &RootFindConfig,
) -> Result<[IdentityReport; 3], LocalizeError> {
    let n = f.degree();
    let cd = centroid_data(f).expect("degree >= 2");
    let centroid = cd.centroid.to_complex();
    let gap2 = cd.gap_squared.to_complex();
    let zc = z.to_complex();

    let fm = f.derive(m).expect("m <= n-2");
    let roots_f = complex_roots_with_multiplicity(f, cfg)?;
    let roots_m = complex_roots_with_multiplicity(&fm, cfg)?;
    let nn = n as f64;
    let dm = (n - m) as f64;

    let sum1 = |roots: &[Complex64]| -> Complex64 {
        roots.iter().map(|l| l - zc).sum()
    };
    let sum2 = |roots: &[Complex64]| -> Complex64 {
        roots.iter().map(|l| (l - zc) * (l - zc)).sum()
    };
    let pairwise = |roots: &[Complex64]| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                let d = roots[i] - roots[j];
                acc += d * d;
            }
        }
        acc
    };

    let a15 = centroid - zc;
    let r15 = (a15 - sum1(&roots_f) / nn)
        .norm()
        .max((a15 - sum1(&roots_m) / dm).norm());

    let shift2 = a15 * a15;
    let b16 = (sum2(&roots_f) - nn * shift2) / (nn * (nn - 1.0));
    let c16 = (sum2(&roots_m) - dm * shift2) / (dm * (dm - 1.0));
    let r16 = (gap2 - b16).norm().max((gap2 - c16).norm());

    let b17 = pairwise(&roots_f) / (nn * nn * (nn - 1.0));
    let c17 = pairwise(&roots_m) / (dm * dm * (dm - 1.0));
    let r17 = (gap2 - b17).norm().max((gap2 - c17).norm());

    let make = |id, r| IdentityReport {
        id,
        backend: Backend::Numeric,
        residual: Some(ResidualValue::Numeric(r)),
        hypothesis_ok: true,
        inputs: echo(m, z),
    };
    Ok([
        make(IdentityId::CentroidShift, r15),
        make(IdentityId::GapVariance, r16),
        make(IdentityId::GapPairSum, r17),
    ])
}

fn complex_roots_with_multiplicity(
    f: &Polynomial,
    cfg: &RootFindConfig,
) -> Result<Vec<Complex64>, LocalizeError> {
    let ms = root_multiset(f, cfg)?;
    let mut out = Vec::with_capacity(f.degree());
    for e in ms.entries() {
        for _ in 0..e.multiplicity {
            out.push(e.value.to_complex());
        }
    }
    Ok(out)
}

/// Shared-root identity (Lemma-2 style): with the centroid a root of `f` and
/// `z_m` a common root of `f` and `f^(m)`, balances weighted square sums over
/// the remaining roots of `f^(m)` against mixed products over the other
/// roots of `f`.
///
/// Exact backend: let `q = f^(m)/(x - z_m)` (monic). All sums over roots of
/// `q` reduce to its first two power sums; the mixed double sum over roots
/// `l` of `f` is a quadratic polynomial in `l` with coefficients built from
/// those power sums, so its root-weighted total reduces to power sums of `f`
/// with the two known roots subtracted off.
pub fn lemma2_residual(
    p: &Polynomial,
    m: usize,
    shared: Option<&GaussianRational>,
    backend: Backend,
    cfg: &RootFindConfig,
) -> Result<IdentityReport, LocalizeError> {
    if p.is_zero() || p.degree() < 2 {
        return Err(LocalizeError::Domain("identity needs degree >= 2".into()));
    }
    let f = p.monic();
    let n = f.degree();
    if m < 1 || m > n - 2 {
        return Err(LocalizeError::Domain(format!(
            "derivative order {} out of range [1, {}]",
            m,
            n - 2
        )));
    }
    let cd = centroid_data(&f).expect("degree >= 2");
    let centroid = cd.centroid.clone();
    let mut inputs = InputsEcho {
        m: Some(m),
        centroid: Some(centroid.to_text()),
        ..Default::default()
    };

    // Hypothesis: the centroid is a root of f.
    let r1 = exact_root_multiplicity(&f, &centroid);
    if r1 == 0 {
        return Ok(IdentityReport::gated(IdentityId::SharedRootBalance, backend, inputs));
    }
    inputs.centroid_multiplicity = Some(r1);

    let fm = f.derive(m).expect("m <= n-2");
    // Hypothesis: z_m is a common root of f and f^(m), distinct from the
    // centroid. Auto-detect via the exact gcd when not supplied.
    let z_m = match shared {
        Some(z) => {
            if f.eval(z).is_zero() && fm.eval(z).is_zero() && *z != centroid {
                Some(z.clone())
            } else {
                None
            }
        }
        None => detect_shared_root(&f, &fm, &centroid, cfg),
    };
    let z_m = match z_m {
        Some(z) => z,
        None => {
            return Ok(IdentityReport::gated(IdentityId::SharedRootBalance, backend, inputs))
        }
    };
    let r_km = exact_root_multiplicity(&f, &z_m);
    inputs.shared_root = Some(z_m.to_text());
    inputs.shared_multiplicity = Some(r_km);

    let residual = match backend {
        Backend::Exact => {
            ResidualValue::Exact(lemma2_exact(&f, &fm, m, &centroid, r1, &z_m, r_km))
        }
        Backend::Numeric => ResidualValue::Numeric(lemma2_numeric(
            &f, &fm, m, &centroid, r1, &z_m, r_km, cfg,
        )?),
    };
    Ok(IdentityReport {
        id: IdentityId::SharedRootBalance,
        backend,
        residual: Some(residual),
        hypothesis_ok: true,
        inputs,
    })
}

fn detect_shared_root(
    f: &Polynomial,
    fm: &Polynomial,
    centroid: &GaussianRational,
    cfg: &RootFindConfig,
) -> Option<GaussianRational> {
    let g = Polynomial::gcd(f, fm);
    if g.is_constant() {
        return None;
    }
    let ms = root_multiset(&g, cfg).ok()?;
    // Deterministic pick: smallest exact root distinct from the centroid.
    ms.entries()
        .iter()
        .filter_map(|e| e.value.as_exact())
        .find(|z| *z != centroid)
        .cloned()
}

#[allow(clippy::too_many_arguments)]
fn lemma2_exact(
    f: &Polynomial,
    fm: &Polynomial,
    m: usize,
    centroid: &GaussianRational,
    r1: usize,
    z_m: &GaussianRational,
    r_km: usize,
) -> GaussianRational {
    let n = f.degree();
    let d = n - m - 1; // number of remaining roots of f^(m)
    let (q, rem) = fm.monic().div_rem(&Polynomial::linear_from_root(z_m));
    debug_assert!(rem.is_zero());
    let ps_q = power_sums(&q, 2);
    let p1q = ps_q.get(1).clone();
    let p2q = ps_q.get(2).clone();
    let d_rat = GaussianRational::from_i64(d as i64);

    // sum_s (z_m - xi_s)^2 and sum_{s<t} (xi_s - xi_t)^2 over roots of q
    let sum_sq_zm = sum_squared_deviations(&ps_q, z_m);
    let pair_q = &(&d_rat * &p2q) - &(&p1q * &p1q);

    let nr = GaussianRational::from_i64(n as i64);
    let n1 = GaussianRational::from_i64((n - 1) as i64);
    let nm = GaussianRational::from_i64((n - m) as i64);
    let nm2 = GaussianRational::from_i64((n - m - 2) as i64);
    let nn1 = &nr * &n1;

    // lhs = [ (n-m-2)/(n-m)^2 + (r_km + r1 - n)/(n(n-1)) ] sum_sq_zm
    //       + (n-m-2)/(n-m)^2 * pair_q
    let inv_nm2 = &nm2 / &(&nm * &nm);
    let mix_coef = &GaussianRational::from_i64((r_km + r1) as i64 - n as i64) / &nn1;
    let lhs = &(&(&inv_nm2 + &mix_coef) * &sum_sq_zm) + &(&inv_nm2 * &pair_q);

    // rhs first term: [ (n-m)^2 r_km - (n - r1)(n - m + 2) ] / (n(n-1)) (z_m - c)^2
    let coef = &(&(&nm * &nm) * &GaussianRational::from_i64(r_km as i64))
        - &(&GaussianRational::from_i64((n - r1) as i64)
            * &GaussianRational::from_i64((n - m + 2) as i64));
    let diff = z_m - centroid;
    let rhs1 = &(&coef / &nn1) * &(&diff * &diff);

    // Mixed double sum over roots l of f with j != 1, k_m:
    //   M(l) = [ (d l - p1q)^2 - (d l^2 - 2 l p1q + p2q) ] / 2
    // so sum_j r_j M(l_j) comes from power sums of f; subtract the centroid
    // and z_m contributions.
    let ps_f = power_sums(f, 2);
    let two = GaussianRational::from_i64(2);
    let m_of = |l: &GaussianRational| -> GaussianRational {
        let s1 = &(&d_rat * l) - &p1q;
        let s2 = &(&(&d_rat * &(l * l)) - &(&two * &(l * &p1q))) + &p2q;
        &(&(&s1 * &s1) - &s2) / &two
    };
    // total over all roots: expand M(l) = (d^2-d)/2 l^2 - (d-1) p1q l + (p1q^2 - p2q)/2
    let c2 = &(&(&d_rat * &d_rat) - &d_rat) / &two;
    let c1 = -(&(&d_rat - &GaussianRational::one()) * &p1q);
    let c0 = &(&(&p1q * &p1q) - &p2q) / &two;
    let total_mixed = &(&(&c2 * ps_f.get(2)) + &(&c1 * ps_f.get(1))) + &(&c0 * ps_f.get(0));
    let mixed_rest = &total_mixed
        - &(&(&GaussianRational::from_i64(r1 as i64) * &m_of(centroid))
            + &(&GaussianRational::from_i64(r_km as i64) * &m_of(z_m)));
    let rhs = &rhs1 + &(&(&two / &nn1) * &mixed_rest);

    &lhs - &rhs
}

#[allow(clippy::too_many_arguments)]
fn lemma2_numeric(
    f: &Polynomial,
    fm: &Polynomial,
    m: usize,
    centroid: &GaussianRational,
    r1: usize,
    z_m: &GaussianRational,
    r_km: usize,
    cfg: &RootFindConfig,
) -> Result<f64, LocalizeError> {
    let n = f.degree();
    let (q, _) = fm.monic().div_rem(&Polynomial::linear_from_root(z_m));
    let xi: Vec<Complex64> = complex_roots_with_multiplicity(&q, cfg)?;
    let zm = z_m.to_complex();
    let c = centroid.to_complex();

    let sum_sq_zm: Complex64 = xi.iter().map(|x| (zm - x) * (zm - x)).sum();
    let mut pair_q = Complex64::new(0.0, 0.0);
    for i in 0..xi.len() {
        for j in (i + 1)..xi.len() {
            let dxy = xi[i] - xi[j];
            pair_q += dxy * dxy;
        }
    }
    let nm = (n - m) as f64;
    let nn1 = (n * (n - 1)) as f64;
    let inv_nm2 = (n as f64 - m as f64 - 2.0) / (nm * nm);
    let lhs = (inv_nm2 + ((r_km + r1) as f64 - n as f64) / nn1) * sum_sq_zm + inv_nm2 * pair_q;

    let coef = (nm * nm * r_km as f64 - (n - r1) as f64 * (n as f64 - m as f64 + 2.0)) / nn1;
    let dzc = zm - c;
    let rhs1 = coef * dzc * dzc;

    // mixed sums over the other roots of f, with certified roots
    let ms = root_multiset(f, cfg)?;
    let mut mixed = Complex64::new(0.0, 0.0);
    for e in ms.entries() {
        if let Some(zex) = e.value.as_exact() {
            if zex == centroid || zex == z_m {
                continue;
            }
        }
        let l = e.value.to_complex();
        let mut inner = Complex64::new(0.0, 0.0);
        for s in 0..xi.len() {
            for t in (s + 1)..xi.len() {
                inner += (l - xi[s]) * (l - xi[t]);
            }
        }
        mixed += (e.multiplicity as f64) * inner;
    }
    let rhs = rhs1 + 2.0 / nn1 * mixed;
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, rat};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_i64(n)
    }

    #[test]
    fn trivial_polynomial_residuals_vanish() {
        let f = Polynomial::from_roots(&[(g(2), 4)]);
        for m in 0..=2usize {
            let reports =
                sz_nagy_residuals(&f, &g(2), m, Backend::Exact, &RootFindConfig::default())
                    .unwrap();
            for r in &reports {
                assert!(r.residual.as_ref().unwrap().is_exact_zero(), "{:?}", r);
            }
        }
    }

    #[test]
    fn cubic_pairwise_identity_matches_gap() {
        // pairwise sum for roots {-1,0,1} is 6; 6 / (9*2) = 1/3 = gap^2
        let reports = sz_nagy_residuals(
            &p("x^3 - x"),
            &g(0),
            1,
            Backend::Exact,
            &RootFindConfig::default(),
        )
        .unwrap();
        assert!(reports[2].residual.as_ref().unwrap().is_exact_zero());
    }

    #[test]
    fn shift_identity_example() {
        // x^2(x-1) at z=0: c - 0 = (2*0 + 1*1)/3 = 1/3
        let f = p("x^3 - x^2");
        let reports =
            sz_nagy_residuals(&f, &g(0), 0, Backend::Exact, &RootFindConfig::default()).unwrap();
        assert!(reports[0].residual.as_ref().unwrap().is_exact_zero());
        let cd = centroid_data(&f).unwrap();
        assert_eq!(cd.centroid, GaussianRational::from_rational(rat(1, 3)));
    }

    #[test]
    fn residuals_vanish_at_gaussian_points_too() {
        let f = p("x^4 - 3*x^2 + 2*x");
        let z = GaussianRational::from_pair(1, 2);
        for m in 0..=2usize {
            let reports =
                sz_nagy_residuals(&f, &z, m, Backend::Exact, &RootFindConfig::default()).unwrap();
            for r in &reports {
                assert!(r.residual.as_ref().unwrap().is_exact_zero(), "m={} {:?}", m, r);
            }
        }
    }

    #[test]
    fn numeric_backend_agrees() {
        let f = p("x^4 - 3*x^2 + 2*x");
        let reports = sz_nagy_residuals(
            &f,
            &GaussianRational::from_rational(rat(1, 2)),
            1,
            Backend::Numeric,
            &RootFindConfig::default(),
        )
        .unwrap();
        for r in &reports {
            assert!(r.residual.as_ref().unwrap().magnitude() < 1e-9, "{:?}", r);
        }
    }

    #[test]
    fn shared_root_identity_exact_zero() {
        // x(x-1)^2(x+2): centroid 0 is a root, f' shares the double root 1
        let f = p("x^4 - 3*x^2 + 2*x");
        let rep =
            lemma2_residual(&f, 1, None, Backend::Exact, &RootFindConfig::default()).unwrap();
        assert!(rep.hypothesis_ok);
        assert_eq!(rep.inputs.shared_root.as_deref(), Some("1"));
        assert_eq!(rep.inputs.centroid_multiplicity, Some(1));
        assert_eq!(rep.inputs.shared_multiplicity, Some(2));
        assert!(rep.residual.as_ref().unwrap().is_exact_zero(), "{:?}", rep);
    }

    #[test]
    fn shared_root_identity_numeric() {
        let f = p("x^4 - 3*x^2 + 2*x");
        let rep =
            lemma2_residual(&f, 1, None, Backend::Numeric, &RootFindConfig::default()).unwrap();
        assert!(rep.hypothesis_ok);
        assert!(rep.residual.as_ref().unwrap().magnitude() < 1e-10, "{:?}", rep);
    }

    #[test]
    fn hypothesis_gate_without_centroid_root() {
        // x^2 - 3x + 2 has centroid 3/2, not a root
        let rep = lemma2_residual(
            &p("x^3 - 3*x^2 + 2*x + 1"),
            1,
            None,
            Backend::Exact,
            &RootFindConfig::default(),
        )
        .unwrap();
        assert!(!rep.hypothesis_ok);
        assert!(rep.residual.is_none());
    }

    #[test]
    fn supplied_shared_root_is_verified() {
        let f = p("x^4 - 3*x^2 + 2*x");
        // 0 is a root of f but not of f', and equals the centroid: gated
        let rep = lemma2_residual(&f, 1, Some(&g(0)), Backend::Exact, &RootFindConfig::default())
            .unwrap();
        assert!(!rep.hypothesis_ok);
        // 1 is correct
        let rep = lemma2_residual(&f, 1, Some(&g(1)), Backend::Exact, &RootFindConfig::default())
            .unwrap();
        assert!(rep.hypothesis_ok);
        assert!(rep.residual.as_ref().unwrap().is_exact_zero());
    }
}
