//! Abel-Goncharov interpolation polynomials.
//!
//! For nodes `z_0, ..., z_{n-1}` (repeats permitted) the Abel-Goncharov
//! polynomial is the unique monic degree-`n` polynomial whose `m`-th
//! derivative vanishes at `z_m` for every `m`. Three independent
//! constructions are provided and cross-validate each other:
//!
//! * [`build_interpolation`] — back-substitution on the triangular linear
//!   system for the lower-order part;
//! * [`build_recursion`] — the expansion of `x^n` over the Goncharov basis of
//!   the node prefixes;
//! * [`build_genetic`] — direct evaluation of the nested combinatorial sum,
//!   a depth-first walk over monotonically constrained index tuples.
//!
//! Two upper bounds on `|G_n(z)|` are evaluated conservatively (magnitudes
//! of exact inputs are rounded up, then both bound formulas are evaluated in
//! exact rational arithmetic): the classical telescoping bound and the
//! sharper restricted-multinomial bound derived from the nested sum.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polycore::{
    rational_to_f64_up, ComplexApprox, GaussianRational, PolyError, Polynomial, Rational,
};

/// Degree cap for the nested-sum walks; the tuple count grows like the
/// Catalan numbers, so anything much larger stops being a desk computation.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Interpolation nodes: exact Gaussian rationals, or certified numeric
/// values for bound evaluation only.
#[derive(Clone, Debug)]
pub enum NodeSequence {
    Exact(Vec<GaussianRational>),
    Approx(Vec<ComplexApprox>),
}

impl NodeSequence {
    pub fn exact(nodes: Vec<GaussianRational>) -> Self {
        NodeSequence::Exact(nodes)
    }

    pub fn len(&self) -> usize {
        match self {
            NodeSequence::Exact(v) => v.len(),
            NodeSequence::Approx(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn exact_nodes(&self) -> Result<&[GaussianRational], PolyError> {
        match self {
            NodeSequence::Exact(v) => Ok(v),
            NodeSequence::Approx(_) => Err(PolyError::Domain(
                "this construction requires exact-mode nodes".into(),
            )),
        }
    }

    /// Upper-rounded magnitude of `nodes[i] - nodes[j]`.
    fn diff_abs_upper(&self, i: usize, j: usize) -> f64 {
        match self {
            NodeSequence::Exact(v) => (&v[i] - &v[j]).abs_upper(),
            NodeSequence::Approx(v) => {
                ((v[i].value - v[j].value).norm() + v[i].error_radius + v[j].error_radius)
                    .next_up()
            }
        }
    }

    /// Upper-rounded magnitude of `z - nodes[i]` for an exact query point.
    fn point_diff_abs_upper(&self, z: &GaussianRational, i: usize) -> f64 {
        match self {
            NodeSequence::Exact(v) => (z - &v[i]).abs_upper(),
            NodeSequence::Approx(v) => {
                ((z.to_complex() - v[i].value).norm() + v[i].error_radius).next_up()
            }
        }
    }
}

/// Which algorithm produced a Goncharov polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Interpolation,
    Recursion,
    Genetic,
}

/// A monic Goncharov polynomial together with its construction tag.
#[derive(Clone, Debug)]
pub struct GoncharovResult {
    pub polynomial: Polynomial,
    pub construction: Construction,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn factorial_rat(n: usize) -> GaussianRational {
    GaussianRational::from_rational(Rational::from_integer(factorial(n)))
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Solves the triangular interpolation system: the lower-order part `P` of
/// `G = x^n + P` satisfies `P^(m)(z_m) = -n!/(n-m)! z_m^(n-m)`.
pub fn build_interpolation(nodes: &NodeSequence) -> Result<GoncharovResult, PolyError> {
    let zs = nodes.exact_nodes()?;
    let n = zs.len();
    if n == 0 {
        return Err(PolyError::Domain("need at least one node".into()));
    }
    // Ascending coefficients c_0..c_{n-1} of P, solved from m = n-1 down.
    let mut c = vec![GaussianRational::zero(); n];
    for m in (0..n).rev() {
        let rhs = {
            // -n!/(n-m)! z_m^(n-m)
            let falling = Rational::from_integer(factorial(n) / factorial(n - m));
            -(&GaussianRational::from_rational(falling) * &zs[m].pow((n - m) as u32))
        };
        let mut acc = rhs;
        for j in (m + 1)..n {
            // coefficient of c_j in P^(m)(z_m): j!/(j-m)! z_m^(j-m)
            let fall = Rational::from_integer(factorial(j) / factorial(j - m));
            let term =
                &(&GaussianRational::from_rational(fall) * &zs[m].pow((j - m) as u32)) * &c[j];
            acc = &acc - &term;
        }
        c[m] = &acc / &factorial_rat(m);
    }
    let mut coeffs = vec![GaussianRational::one()];
    coeffs.extend(c.into_iter().rev());
    Ok(GoncharovResult {
        polynomial: Polynomial::from_descending(coeffs),
        construction: Construction::Interpolation,
    })
}

/// Builds `G_n` from the expansion of `x^n` over the Goncharov polynomials
/// of the node prefixes: `G_n = x^n - sum_k C(n,k) z_k^(n-k) G_k`.
pub fn build_recursion(nodes: &NodeSequence) -> Result<GoncharovResult, PolyError> {
    let zs = nodes.exact_nodes()?;
    let n = zs.len();
    if n == 0 {
        return Err(PolyError::Domain("need at least one node".into()));
    }
    // All prefixes share the node sequence, so G_0..G_n are built in order.
    let mut basis: Vec<Polynomial> = Vec::with_capacity(n + 1);
    basis.push(Polynomial::one());
    for degree in 1..=n {
        let mut coeffs = vec![GaussianRational::zero(); degree + 1];
        coeffs[0] = GaussianRational::one();
        let mut g = Polynomial::from_descending(coeffs); // x^degree
        for k in 0..degree {
            let coef = GaussianRational::from_rational(Rational::from_integer(binomial(
                degree, k,
            )));
            let weight = &coef * &zs[k].pow((degree - k) as u32);
            if weight.is_zero() {
                continue;
            }
            g = &g - &basis[k].scale(&weight);
        }
        basis.push(g);
    }
    Ok(GoncharovResult {
        polynomial: basis.pop().expect("n >= 1"),
        construction: Construction::Recursion,
    })
}

/// Depth-first walk over the admissible index tuples of the nested sum.
///
/// Indices `j_1..j_{levels}` satisfy `0 <= j_t <= 1 + j_{t-1}` (`j_0 = 0`).
/// Level `t` contributes `diff[t-1]^(1 + j_{t-1} - j_t) / (1 + j_{t-1} - j_t)!`
/// and the final index selects the exponent of the symbolic factor.
fn nested_sum_walk(
    diffs: &[GaussianRational],
    levels: usize,
    weights: &mut Vec<GaussianRational>,
    level: usize,
    j_prev: usize,
    acc: GaussianRational,
) {
    if level == levels {
        // exponent of the symbolic factor is 1 + j_prev
        let e = 1 + j_prev;
        if weights.len() <= e {
            weights.resize(e + 1, GaussianRational::zero());
        }
        weights[e] = &weights[e] + &(&acc / &factorial_rat(e));
        return;
    }
    for j in 0..=(1 + j_prev) {
        let exp = 1 + j_prev - j;
        let factor = &diffs[level].pow(exp as u32) / &factorial_rat(exp);
        if factor.is_zero() {
            continue;
        }
        nested_sum_walk(diffs, levels, weights, level + 1, j, &acc * &factor);
    }
}

fn check_budget(n: usize, cap: usize) -> Result<(), PolyError> {
    if n > cap {
        Err(PolyError::Budget(format!(
            "nested-sum enumeration capped at degree {} (requested {})",
            cap, n
        )))
    } else {
        Ok(())
    }
}

/// Evaluates the nested combinatorial sum for `G_n` exactly.
pub fn build_genetic(nodes: &NodeSequence) -> Result<GoncharovResult, PolyError> {
    build_genetic_with_cap(nodes, DEFAULT_ENUMERATION_CAP)
}

pub fn build_genetic_with_cap(
    nodes: &NodeSequence,
    cap: usize,
) -> Result<GoncharovResult, PolyError> {
    let polynomial = derivative_genetic_with_cap(nodes, 0, cap)?;
    Ok(GoncharovResult { polynomial, construction: Construction::Genetic })
}

/// Nested-sum expansion of the `m`-th derivative of `G_n`, as a polynomial.
pub fn derivative_genetic(nodes: &NodeSequence, m: usize) -> Result<Polynomial, PolyError> {
    derivative_genetic_with_cap(nodes, m, DEFAULT_ENUMERATION_CAP)
}

pub fn derivative_genetic_with_cap(
    nodes: &NodeSequence,
    m: usize,
    cap: usize,
) -> Result<Polynomial, PolyError> {
    let zs = nodes.exact_nodes()?;
    let n = zs.len();
    if n == 0 || m > n - 1 {
        return Err(PolyError::Domain(format!(
            "derivative order {} out of range for {} nodes",
            m, n
        )));
    }
    check_budget(n, cap)?;
    // diffs[t-1] = z_{n-2-(t-1)} - z_{n-1-(t-1)} for level t = 1..n-1-m;
    // the symbolic factor is (x - z_m).
    let levels = n - 1 - m;
    let diffs: Vec<GaussianRational> =
        (0..levels).map(|s| &zs[n - 2 - s] - &zs[n - 1 - s]).collect();
    let mut weights: Vec<GaussianRational> = Vec::new();
    nested_sum_walk(&diffs, levels, &mut weights, 0, 0, GaussianRational::one());
    // Assemble n! * sum_e weights[e] (x - z_m)^e.
    let nfac = factorial_rat(n);
    let mut in_u = vec![GaussianRational::zero(); weights.len()];
    for (e, w) in weights.iter().enumerate() {
        in_u[weights.len() - 1 - e] = &nfac * w;
    }
    let poly_u = Polynomial::from_descending(in_u);
    Ok(poly_u.taylor_shift(&-(&zs[m])))
}

/// Value of `G_n^(s+m)` at the node `z_m`, by direct evaluation of the
/// closed combinatorial form; terms whose factorial argument would be
/// negative contribute zero.
pub fn derivative_at_node(
    nodes: &NodeSequence,
    m: usize,
    s: usize,
) -> Result<GaussianRational, PolyError> {
    let zs = nodes.exact_nodes()?;
    let n = zs.len();
    if n == 0 || m > n - 1 || s < 1 || s > n - m {
        return Err(PolyError::Domain(format!(
            "derivative offset (m={}, s={}) out of range for {} nodes",
            m, s, n
        )));
    }
    if s == n - m {
        // top derivative is the constant n!
        return Ok(factorial_rat(n));
    }
    check_budget(n, DEFAULT_ENUMERATION_CAP)?;
    // Levels t = 1..n-2-m walk j_t; the closing factor uses the final index
    // with exponent 2 + j_final - s on (z_m - z_{m+1}).
    let levels = n - 2 - m;
    let diffs: Vec<GaussianRational> =
        (0..levels).map(|l| &zs[n - 2 - l] - &zs[n - 1 - l]).collect();
    let closing = &zs[m] - &zs[m + 1];

    fn walk(
        diffs: &[GaussianRational],
        levels: usize,
        level: usize,
        j_prev: usize,
        acc: GaussianRational,
        out: &mut Vec<GaussianRational>,
    ) {
        if level == levels {
            if out.len() <= j_prev {
                out.resize(j_prev + 1, GaussianRational::zero());
            }
            out[j_prev] = &out[j_prev] + &acc;
            return;
        }
        for j in 0..=(1 + j_prev) {
            let exp = 1 + j_prev - j;
            let factor = &diffs[level].pow(exp as u32) / &factorial_rat(exp);
            if factor.is_zero() {
                continue;
            }
            walk(diffs, levels, level + 1, j, &acc * &factor, out);
        }
    }
    let mut by_final: Vec<GaussianRational> = Vec::new();
    walk(&diffs, levels, 0, 0, GaussianRational::one(), &mut by_final);
    let mut total = GaussianRational::zero();
    for (j_final, w) in by_final.iter().enumerate() {
        // exponent 2 + j_final - s must be nonnegative
        if 2 + j_final < s {
            continue;
        }
        let e = 2 + j_final - s;
        let term = &(&closing.pow(e as u32) / &factorial_rat(e)) * w;
        total = &total + &term;
    }
    Ok(&total * &factorial_rat(n))
}

/// Elementwise node scaling; the built polynomial scales homogeneously.
pub fn scale_nodes(
    nodes: &NodeSequence,
    alpha: &GaussianRational,
) -> Result<NodeSequence, PolyError> {
    if alpha.is_zero() {
        return Err(PolyError::Domain("node scaling by zero".into()));
    }
    Ok(match nodes {
        NodeSequence::Exact(v) => NodeSequence::Exact(v.iter().map(|z| z * alpha).collect()),
        NodeSequence::Approx(v) => {
            let a = alpha.to_complex();
            NodeSequence::Approx(
                v.iter()
                    .map(|c| ComplexApprox {
                        value: c.value * a,
                        error_radius: c.error_radius * a.norm(),
                    })
                    .collect(),
            )
        }
    })
}

fn f64_to_rational(x: f64) -> Rational {
    BigRational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Upper-rounded magnitudes feeding the sharp bound: index `s` holds
/// `|z_{n-2-s} - z_{n-1-s}|` for `s < n-1` and `|z - z_0|` at `s = n-1`,
/// converted exactly into rationals so the bound arithmetic is exact.
fn bound_magnitudes(nodes: &NodeSequence, z: &GaussianRational) -> Vec<Rational> {
    let n = nodes.len();
    let mut mags = Vec::with_capacity(n);
    for s in 0..n.saturating_sub(1) {
        mags.push(f64_to_rational(nodes.diff_abs_upper(n - 2 - s, n - 1 - s)));
    }
    mags.push(f64_to_rational(nodes.point_diff_abs_upper(z, 0)));
    mags
}

/// Telescoping upper bound `(|z - z_0| + sum |z_{s+1} - z_s|)^n`, exact in
/// the upper-rounded magnitudes.
pub fn goncharov_bound_exact(nodes: &NodeSequence, z: &GaussianRational) -> Rational {
    let n = nodes.len();
    if n == 0 {
        return Rational::zero();
    }
    let mut total = f64_to_rational(nodes.point_diff_abs_upper(z, 0));
    for s in 0..n - 1 {
        total += f64_to_rational(nodes.diff_abs_upper(s + 1, s));
    }
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= &total;
    }
    acc
}

pub fn goncharov_bound(nodes: &NodeSequence, z: &GaussianRational) -> f64 {
    rational_to_f64_up(&goncharov_bound_exact(nodes, z))
}

/// Restricted-multinomial upper bound: over tuples `k_0..k_{n-2}` with
/// `k_t <= t+1 - (k_0+...+k_{t-1})` and `k_{n-1} = n - sum`, sums
/// `n!/(k_0! ... k_{n-1}!) prod mags[s]^(k_s)`. Sharper than the telescoping
/// bound and exact in the same upper-rounded magnitudes.
pub fn sharp_bound_exact(
    nodes: &NodeSequence,
    z: &GaussianRational,
    cap: usize,
) -> Result<Rational, PolyError> {
    let n = nodes.len();
    if n == 0 {
        return Ok(Rational::zero());
    }
    check_budget(n, cap)?;
    let mags = bound_magnitudes(nodes, z);
    // DFS over k_0..k_{n-2}; `used` carries the running sum of chosen k's.
    fn walk(
        mags: &[Rational],
        n: usize,
        t: usize,
        used: usize,
        acc: Rational,
        total: &mut Rational,
    ) {
        if t == n - 1 {
            let k_last = n - used;
            let mut term = acc;
            if k_last > 0 {
                if mags[n - 1].is_zero() {
                    return;
                }
                for _ in 0..k_last {
                    term *= &mags[n - 1];
                }
            }
            term /= Rational::from_integer(factorial(k_last));
            *total += term;
            return;
        }
        let max_k = t + 1 - used;
        for k in 0..=max_k {
            if k > 0 && mags[t].is_zero() {
                break;
            }
            let mut factor = Rational::one();
            for _ in 0..k {
                factor *= &mags[t];
            }
            factor /= Rational::from_integer(factorial(k));
            walk(mags, n, t + 1, used + k, &acc * &factor, total);
        }
    }
    let mut total = Rational::zero();
    walk(&mags, n, 0, 0, Rational::one(), &mut total);
    Ok(total * Rational::from_integer(factorial(n)))
}

pub fn sharp_bound(
    nodes: &NodeSequence,
    z: &GaussianRational,
    cap: usize,
) -> Result<f64, PolyError> {
    Ok(rational_to_f64_up(&sharp_bound_exact(nodes, z, cap)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, rat};

    fn nodes_i64(v: &[i64]) -> NodeSequence {
        NodeSequence::Exact(v.iter().map(|&x| GaussianRational::from_i64(x)).collect())
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    type Builder = fn(&NodeSequence) -> Result<GoncharovResult, PolyError>;
    const BUILDERS: [Builder; 3] = [build_interpolation, build_recursion, build_genetic];

    #[test]
    fn single_node_is_linear() {
        for build in BUILDERS {
            let g = build(&nodes_i64(&[5])).unwrap();
            assert_eq!(g.polynomial, p("x - 5"));
        }
    }

    #[test]
    fn repeated_nodes_collapse_to_pure_power() {
        for build in BUILDERS {
            let g = build(&nodes_i64(&[3, 3, 3])).unwrap();
            assert_eq!(g.polynomial, p("x^3 - 9*x^2 + 27*x - 27"));
        }
    }

    #[test]
    fn three_distinct_nodes() {
        for build in BUILDERS {
            let g = build(&nodes_i64(&[0, 1, 2])).unwrap();
            assert_eq!(g.polynomial, p("x^3 - 6*x^2 + 9*x"), "{:?}", g.construction);
        }
    }

    #[test]
    fn two_nodes_closed_form() {
        // (x - z0)(x + z0 - 2 z1) for nodes (0, 1)
        for build in BUILDERS {
            let g = build(&nodes_i64(&[0, 1])).unwrap();
            assert_eq!(g.polynomial, p("x^2 - 2*x"));
        }
    }

    #[test]
    fn defining_property_holds() {
        let seq = NodeSequence::Exact(vec![
            GaussianRational::from_rational(rat(1, 2)),
            GaussianRational::from_i64(-1),
            GaussianRational::from_rational(rat(3, 4)),
            GaussianRational::from_i64(2),
        ]);
        let g = build_interpolation(&seq).unwrap().polynomial;
        let zs = match &seq {
            NodeSequence::Exact(v) => v.clone(),
            _ => unreachable!(),
        };
        for (m, zm) in zs.iter().enumerate() {
            let val = g.derive(m).unwrap().eval(zm);
            assert!(val.is_zero(), "G^({})({}) = {}", m, zm, val);
        }
    }

    #[test]
    fn derivative_genetic_matches_derive() {
        let seq = nodes_i64(&[0, 1, 2]);
        let g = build_genetic(&seq).unwrap().polynomial;
        assert_eq!(derivative_genetic(&seq, 0).unwrap(), g);
        assert_eq!(derivative_genetic(&seq, 1).unwrap(), p("3*x^2 - 12*x + 9"));
        let second = derivative_genetic(&seq, 2).unwrap();
        assert_eq!(second, p("6*x - 12"));
        assert!(second.eval(&GaussianRational::from_i64(2)).is_zero());
    }

    #[test]
    fn derivative_values_at_nodes() {
        let seq = nodes_i64(&[0, 1, 2]);
        // top derivative is n!
        assert_eq!(
            derivative_at_node(&seq, 0, 3).unwrap(),
            GaussianRational::from_i64(6)
        );
        // G''(z_1) = -6 read off 6x - 12 at x = 1
        assert_eq!(
            derivative_at_node(&seq, 1, 1).unwrap(),
            GaussianRational::from_i64(-6)
        );
        // repeated nodes: every intermediate derivative vanishes at b
        let rep = nodes_i64(&[4, 4, 4, 4]);
        for m in 0..4usize {
            for s in 1..(4 - m) {
                assert!(derivative_at_node(&rep, m, s).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn derivative_at_node_agrees_with_direct_evaluation() {
        let seq = NodeSequence::Exact(vec![
            GaussianRational::from_i64(1),
            GaussianRational::from_rational(rat(-1, 2)),
            GaussianRational::from_i64(0),
            GaussianRational::from_i64(2),
            GaussianRational::from_rational(rat(5, 3)),
        ]);
        let g = build_interpolation(&seq).unwrap().polynomial;
        let zs = match &seq {
            NodeSequence::Exact(v) => v.clone(),
            _ => unreachable!(),
        };
        let n = zs.len();
        for m in 0..n {
            for s in 1..=(n - m) {
                let direct = g.derive(s + m).unwrap().eval(&zs[m]);
                let formula = derivative_at_node(&seq, m, s).unwrap();
                assert_eq!(direct, formula, "m={} s={}", m, s);
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let two = GaussianRational::from_i64(2);
        let zero = GaussianRational::zero();
        assert_eq!(goncharov_bound(&nodes_i64(&[0, 1]), &two), 9.0);
        let b = nodes_i64(&[7, 7, 7]);
        assert_eq!(goncharov_bound(&b, &GaussianRational::from_i64(7)), 0.0);
        assert_eq!(goncharov_bound(&nodes_i64(&[0, 1, 2]), &zero), 8.0);
        // sharp bound for nodes (0,1) at z=2 is exactly 8, below the telescoping 9
        let sharp = sharp_bound_exact(&nodes_i64(&[0, 1]), &two, 12).unwrap();
        assert_eq!(sharp, Rational::from_integer(8.into()));
        // at z = z_0 the sharp bound collapses to zero, like G itself
        let sharp0 = sharp_bound_exact(&nodes_i64(&[0, 1, 2]), &zero, 12).unwrap();
        assert!(sharp0.is_zero());
        // repeated nodes evaluated at the node: both bounds vanish
        let sharp_rep = sharp_bound_exact(&b, &GaussianRational::from_i64(7), 12).unwrap();
        assert!(sharp_rep.is_zero());
    }

    #[test]
    fn budget_gate() {
        let many = nodes_i64(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]);
        assert!(matches!(build_genetic(&many), Err(PolyError::Budget(_))));
        let small = nodes_i64(&[0, 1, 2]);
        assert!(matches!(
            build_genetic_with_cap(&small, 2),
            Err(PolyError::Budget(_))
        ));
        assert!(build_genetic_with_cap(&small, 3).is_ok());
    }

    #[test]
    fn node_scaling_is_homogeneous() {
        let seq = nodes_i64(&[0, 1]);
        let alpha = GaussianRational::from_i64(2);
        let scaled = scale_nodes(&seq, &alpha).unwrap();
        let g = build_recursion(&scaled).unwrap().polynomial;
        assert_eq!(g, p("x^2 - 4*x"));
        assert!(scale_nodes(&seq, &GaussianRational::zero()).is_err());
    }
}
