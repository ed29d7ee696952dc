//! Centroid and penultimate-gap data.
//!
//! The centroid is the unique root of the `(n-1)`-th derivative — the
//! multiplicity-weighted mean of the roots, invariant under differentiation.
//! The `(n-2)`-th derivative is a quadratic whose two roots are mirror images
//! about the centroid; the squared half-distance ("gap squared") is rational
//! for rational input even when the roots themselves are not.

use num_complex::Complex64;

use super::gaussian::{rational_to_f64_up, GaussianRational};
use super::poly::Polynomial;
use super::roots::ComplexApprox;
use super::PolyError;

/// A root of the penultimate derivative: exact when the gap is a perfect
/// square in the coefficient field, certified numeric otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum PenultimateRoot {
    Exact(GaussianRational),
    Approx(ComplexApprox),
}

impl PenultimateRoot {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            PenultimateRoot::Exact(z) => z.to_complex(),
            PenultimateRoot::Approx(a) => a.value,
        }
    }

    pub fn as_exact(&self) -> Option<&GaussianRational> {
        match self {
            PenultimateRoot::Exact(z) => Some(z),
            PenultimateRoot::Approx(_) => None,
        }
    }
}

/// Centroid `z_{n-1}`, the exact squared gap `(z_{n-1} - z_{n-2})^2`, and
/// both roots of the penultimate derivative.
///
/// The two penultimate roots are mirror images about the centroid; which one
/// plays the role of `z_{n-2}` is a pure naming convention, so both are
/// exposed and every identity downstream consumes only the squared gap.
#[derive(Clone, Debug)]
pub struct CentroidData {
    pub centroid: GaussianRational,
    pub gap_squared: GaussianRational,
    /// Both roots of the `(n-2)`-th derivative; their sum is exactly twice
    /// the centroid.
    pub penultimate_pair: (PenultimateRoot, PenultimateRoot),
}

impl CentroidData {
    /// The representative `z_{n-2}` (first of the pair).
    pub fn z_n2(&self) -> &PenultimateRoot {
        &self.penultimate_pair.0
    }

    /// The mirror root `2 z_{n-1} - z_{n-2}` (second of the pair).
    pub fn mirror_root(&self) -> &PenultimateRoot {
        &self.penultimate_pair.1
    }

    /// `|z_{n-1} - z_{n-2}|` as a float (upper-rounded modulus).
    pub fn gap_abs(&self) -> f64 {
        rational_to_f64_up(&self.gap_squared.norm_sqr()).sqrt().sqrt()
    }
}

/// Computes centroid data for `deg(p) >= 2`.
pub fn centroid_data(p: &Polynomial) -> Result<CentroidData, PolyError> {
    if p.is_zero() || p.degree() < 2 {
        return Err(PolyError::Domain("centroid data needs degree >= 2".into()));
    }
    let n = p.degree();
    let a0 = p.coeff_desc(0);
    let a1 = p.coeff_desc(1);
    let a2 = p.coeff_desc(2);
    let n_rat = GaussianRational::from_i64(n as i64);
    let centroid = -(&a1 / &(&a0 * &n_rat));

    // The (n-2)-th derivative is A x^2 + B x + C with
    //   A = a0 n!/2,  B = a1 (n-1)!,  C = a2 (n-2)!.
    // gap^2 = (B^2 - 4AC) / (4 A^2); the common (n-2)! factor cancels, so use
    // the reduced coefficients A' = a0 n(n-1)/2, B' = a1 (n-1), C' = a2.
    let half = GaussianRational::from_rational(super::gaussian::rat(1, 2));
    let a_red = &(&a0 * &n_rat) * &(&GaussianRational::from_i64((n - 1) as i64) * &half);
    let b_red = &a1 * &GaussianRational::from_i64((n - 1) as i64);
    let disc = &(&b_red * &b_red) - &(&GaussianRational::from_i64(4) * &(&a_red * &a2));
    let four_a_sq = &GaussianRational::from_i64(4) * &(&a_red * &a_red);
    let gap_squared = &disc / &four_a_sq;

    let pair = match gap_squared.sqrt() {
        Some(gap) => (
            PenultimateRoot::Exact(&centroid - &gap),
            PenultimateRoot::Exact(&centroid + &gap),
        ),
        None => {
            let g = gap_squared.to_complex().sqrt();
            let c = centroid.to_complex();
            // Error radius: both values derive from exact data through a
            // handful of rounded operations.
            let r = 4.0 * f64::EPSILON * (c.norm() + g.norm() + 1.0);
            (
                PenultimateRoot::Approx(ComplexApprox { value: c - g, error_radius: r }),
                PenultimateRoot::Approx(ComplexApprox { value: c + g, error_radius: r }),
            )
        }
    };

    Ok(CentroidData { centroid, gap_squared, penultimate_pair: pair })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::gaussian::rat;
    use crate::polycore::parse::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn grat(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_rational(rat(n, d))
    }

    #[test]
    fn cubic_with_symmetric_roots() {
        let cd = centroid_data(&p("x^3 - x")).unwrap();
        assert_eq!(cd.centroid, GaussianRational::zero());
        assert_eq!(cd.gap_squared, grat(1, 3));
        // 1/3 is not a rational square, so the pair is numeric
        assert!(cd.z_n2().as_exact().is_none());
        let s = cd.z_n2().to_complex() + cd.mirror_root().to_complex();
        assert!((s - 2.0 * cd.centroid.to_complex()).norm() < 1e-12);
    }

    #[test]
    fn pure_power_has_zero_gap() {
        let f = Polynomial::from_roots(&[(GaussianRational::from_i64(7), 5)]);
        let cd = centroid_data(&f).unwrap();
        assert_eq!(cd.centroid, GaussianRational::from_i64(7));
        assert_eq!(cd.gap_squared, GaussianRational::zero());
        assert_eq!(cd.z_n2().as_exact(), Some(&GaussianRational::from_i64(7)));
    }

    #[test]
    fn double_root_at_origin() {
        let cd = centroid_data(&p("x^3 - x^2")).unwrap();
        assert_eq!(cd.centroid, grat(1, 3));
        assert_eq!(cd.gap_squared, grat(1, 9));
        // gap = 1/3 exactly; pair is 0 and 2/3
        let mut exact: Vec<_> = [cd.z_n2(), cd.mirror_root()]
            .iter()
            .map(|r| r.as_exact().unwrap().clone())
            .collect();
        exact.sort_by(|a, b| a.re.cmp(&b.re));
        assert_eq!(exact, vec![GaussianRational::zero(), grat(2, 3)]);
    }

    #[test]
    fn degree_gate() {
        assert!(centroid_data(&p("x - 1")).is_err());
        assert!(centroid_data(&p("5")).is_err());
    }
}
