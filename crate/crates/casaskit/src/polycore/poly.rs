//! Dense univariate polynomials over the Gaussian rationals.
//!
//! Coefficients are stored leading-first: index `i` holds the coefficient of
//! `x^(n-i)` for a degree-`n` polynomial, matching the `poly:[a0,...,an]`
//! text format. The zero polynomial is the empty coefficient vector.

use std::fmt;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::gaussian::GaussianRational;
use super::PolyError;

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    /// Leading-first coefficients; empty means the zero polynomial, otherwise
    /// the first entry is nonzero.
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    /// Builds a polynomial from leading-first coefficients, trimming leading
    /// zeros into canonical form.
    pub fn from_descending(coeffs: Vec<GaussianRational>) -> Self {
        let first_nonzero = coeffs.iter().position(|c| !c.is_zero());
        match first_nonzero {
            None => Polynomial { coeffs: Vec::new() },
            Some(k) => Polynomial { coeffs: coeffs[k..].to_vec() },
        }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_descending(coeffs.iter().map(|&c| GaussianRational::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![GaussianRational::one()] }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_descending(vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear_from_root(root: &GaussianRational) -> Self {
        Polynomial { coeffs: vec![GaussianRational::one(), -root] }
    }

    /// Monic polynomial with prescribed roots and multiplicities.
    pub fn from_roots(roots: &[(GaussianRational, usize)]) -> Self {
        let mut p = Polynomial::one();
        for (root, mult) in roots {
            let lin = Polynomial::linear_from_root(root);
            for _ in 0..*mult {
                p = &p * &lin;
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial. Panics on the zero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &GaussianRational {
        assert!(!self.is_zero(), "leading coefficient of the zero polynomial");
        &self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading-first coefficient slice.
    pub fn coeffs_descending(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient `a_i` of `x^(n-i)`; zero outside the stored range.
    pub fn coeff_desc(&self, i: usize) -> GaussianRational {
        self.coeffs.get(i).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Coefficient of `x^k`.
    pub fn coeff_of_power(&self, k: usize) -> GaussianRational {
        if self.is_zero() || k > self.degree() {
            GaussianRational::zero()
        } else {
            self.coeffs[self.degree() - k].clone()
        }
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in &self.coeffs {
            acc = &acc * z + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in &self.coeffs {
            acc = acc * z + c.to_complex();
        }
        acc
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.to_complex()).collect()
    }

    pub fn derivative(&self) -> Polynomial {
        if self.is_constant() {
            return Polynomial::zero();
        }
        let n = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .take(n)
            .enumerate()
            .map(|(i, c)| c * &GaussianRational::from_i64((n - i) as i64))
            .collect();
        Polynomial::from_descending(coeffs)
    }

    /// Exact `m`-th derivative. Errors when `m` exceeds the degree.
    pub fn derive(&self, m: usize) -> Result<Polynomial, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Domain("derivative of the zero polynomial".into()));
        }
        if m > self.degree() {
            return Err(PolyError::Domain(format!(
                "derivative order {} exceeds degree {}",
                m,
                self.degree()
            )));
        }
        let mut p = self.clone();
        for _ in 0..m {
            p = p.derivative();
        }
        Ok(p)
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Polynomial {
        assert!(!self.is_zero(), "monic form of the zero polynomial");
        if self.is_monic() {
            self.clone()
        } else {
            self.scale(&self.leading().inv())
        }
    }

    /// `p(x + c)` by Horner re-expansion; exact.
    pub fn taylor_shift(&self, c: &GaussianRational) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let shift = Polynomial {
            coeffs: vec![GaussianRational::one(), c.clone()],
        };
        let mut res = Polynomial::constant(self.coeffs[0].clone());
        for a in &self.coeffs[1..] {
            res = &(&res * &shift) + &Polynomial::constant(a.clone());
        }
        res
    }

    /// `alpha^n * p(x / alpha)`: multiplies every root by `alpha` while
    /// preserving the leading coefficient.
    pub fn scale_roots(&self, alpha: &GaussianRational) -> Result<Polynomial, PolyError> {
        if alpha.is_zero() {
            return Err(PolyError::Domain("root scaling by zero".into()));
        }
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        let mut pow = GaussianRational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let scaled = a * &pow;
                pow = &pow * alpha;
                scaled
            })
            .collect();
        Ok(Polynomial { coeffs })
    }

    /// Quotient and remainder of exact division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.is_zero() || self.degree() < divisor.degree() {
            return (Polynomial::zero(), self.clone());
        }
        let dn = divisor.degree();
        let lead_inv = divisor.leading().inv();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dn;
        let mut quot = vec![GaussianRational::zero(); qlen];
        for i in 0..qlen {
            if rem[i].is_zero() {
                continue;
            }
            let factor = &rem[i] * &lead_inv;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &factor * d;
                rem[i + j] = &rem[i + j] - &t;
            }
            quot[i] = factor;
        }
        (
            Polynomial::from_descending(quot),
            Polynomial::from_descending(rem[qlen..].to_vec()),
        )
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        let (_, r) = other.div_rem(self);
        r.is_zero()
    }

    /// Monic greatest common divisor by the Euclidean algorithm, with monic
    /// normalization at every step to keep coefficients small.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut x = if a.is_zero() { Polynomial::zero() } else { a.monic() };
        let mut y = if b.is_zero() { Polynomial::zero() } else { b.monic() };
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = if r.is_zero() { r } else { r.monic() };
        }
        if x.is_zero() {
            x
        } else {
            x.monic()
        }
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Polynomial {
        assert!(!self.is_zero());
        if self.is_constant() {
            return Polynomial::one();
        }
        let g = Polynomial::gcd(self, &self.derivative());
        let (q, r) = self.monic().div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// A polynomial is a pure power of one linear factor exactly when it is
    /// divisible by its first derivative.
    pub fn is_trivial(&self) -> bool {
        assert!(!self.is_zero() && self.degree() >= 1);
        if self.degree() == 1 {
            return true;
        }
        self.derivative().divides(self)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]", super::parse::format_polynomial(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::format_polynomial(self))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (longer, shorter) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let offset = longer.coeffs.len() - shorter.coeffs.len();
        let mut coeffs = longer.coeffs.clone();
        for (i, c) in shorter.coeffs.iter().enumerate() {
            coeffs[offset + i] = &coeffs[offset + i] + c;
        }
        Polynomial::from_descending(coeffs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &rhs.neg()
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                coeffs[i + j] = &coeffs[i + j] + &t;
            }
        }
        Polynomial::from_descending(coeffs)
    }
}

impl Polynomial {
    pub fn neg(&self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Number of distinct real roots of a real-coefficient polynomial, by a
/// Sturm-sequence sign-variation count over the whole line.
pub fn count_distinct_real_roots(p: &Polynomial) -> Result<usize, PolyError> {
    if !p.has_real_coeffs() {
        return Err(PolyError::Domain(
            "Sturm count requires real coefficients".into(),
        ));
    }
    if p.is_zero() || p.is_constant() {
        return Ok(0);
    }
    let sf = p.squarefree_part();
    if sf.is_constant() {
        return Ok(0);
    }
    // Sturm chain on the square-free part.
    let mut chain = vec![sf.clone(), sf.derivative()];
    loop {
        let len = chain.len();
        if chain[len - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[len - 2].div_rem(&chain[len - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    let sign_at = |c: &GaussianRational| -> i8 {
        let q = c.as_rational().expect("real coefficients");
        if q.is_zero() {
            0
        } else if q.is_positive() {
            1
        } else {
            -1
        }
    };
    let variations = |signs: &[i8]| -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for &s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    };
    let at_pos_inf: Vec<i8> = chain.iter().map(|q| sign_at(q.leading())).collect();
    let at_neg_inf: Vec<i8> = chain
        .iter()
        .map(|q| {
            let s = sign_at(q.leading());
            if q.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect();
    Ok(variations(&at_neg_inf) - variations(&at_pos_inf))
}

/// True when every root of `p` is real: the Sturm count on the square-free
/// part equals its degree (after monic normalization the coefficients must
/// already be real).
pub fn is_real_rooted(p: &Polynomial) -> bool {
    assert!(!p.is_zero());
    let m = p.monic();
    if !m.has_real_coeffs() {
        return false;
    }
    if m.is_constant() {
        return true;
    }
    let sf = m.squarefree_part();
    if sf.is_constant() {
        return true;
    }
    match count_distinct_real_roots(&sf) {
        Ok(c) => c == sf.degree(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::gaussian::rat;
    use crate::polycore::parse::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn derive_examples() {
        assert_eq!(p("x^3 - x").derive(1).unwrap(), p("3*x^2 - 1"));
        assert_eq!(p("x^4 - 3*x^2 + 2*x").derive(0).unwrap(), p("x^4 - 3*x^2 + 2*x"));
        assert_eq!(p("x^4 - 3*x^2 + 2*x").derive(2).unwrap(), p("12*x^2 - 6"));
        assert!(p("x^2 + 1").derive(3).is_err());
    }

    #[test]
    fn derive_composes() {
        let f = p("x^5 - 2*x^3 + x - 7");
        let a = f.derive(2).unwrap().derive(1).unwrap();
        let b = f.derive(3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p("x^4 - 3*x^2 + 2*x");
        let b = p("x^2 - 1");
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree() || r.is_zero());
    }

    #[test]
    fn gcd_finds_shared_factor() {
        let f = p("x^4 - 3*x^2 + 2*x"); // x(x-1)^2(x+2)
        let g = f.derivative();
        let d = Polynomial::gcd(&f, &g);
        assert_eq!(d, p("x - 1"));
    }

    #[test]
    fn trivial_detection() {
        assert!(p("x^4 - 8*x^3 + 24*x^2 - 32*x + 16").is_trivial()); // (x-2)^4
        assert!(!p("x^3 - x").is_trivial());
        assert!(!p("x^4 - 3*x^2 + 2*x").is_trivial());
    }

    #[test]
    fn taylor_shift_and_scale_roots() {
        let f = p("x^2 - 1");
        // f(x+1) = x^2 + 2x
        assert_eq!(f.taylor_shift(&GaussianRational::from_i64(1)), p("x^2 + 2*x"));
        // roots scaled by 3: (x-3)(x+3)
        let g = f.scale_roots(&GaussianRational::from_i64(3)).unwrap();
        assert_eq!(g, p("x^2 - 9"));
        assert!(f.scale_roots(&GaussianRational::zero()).is_err());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(count_distinct_real_roots(&p("x^3 - x")).unwrap(), 3);
        assert_eq!(count_distinct_real_roots(&p("x^2 + 1")).unwrap(), 0);
        assert_eq!(count_distinct_real_roots(&p("x^2 - 2")).unwrap(), 2);
        // (x-1)^3 has one distinct real root
        assert_eq!(
            count_distinct_real_roots(&p("x^3 - 3*x^2 + 3*x - 1")).unwrap(),
            1
        );
        assert!(is_real_rooted(&p("x^3 - x")));
        assert!(!is_real_rooted(&p("x^3 - 1")));
        assert!(is_real_rooted(&p("x^3 - 3*x^2 + 3*x - 1")));
    }

    #[test]
    fn from_roots_expands() {
        let f = Polynomial::from_roots(&[
            (GaussianRational::from_i64(0), 1),
            (GaussianRational::from_i64(1), 2),
            (GaussianRational::from_i64(-2), 1),
        ]);
        assert_eq!(f, p("x^4 - 3*x^2 + 2*x"));
        let half = GaussianRational::from_rational(rat(1, 2));
        let g = Polynomial::from_roots(&[(half, 2)]);
        assert_eq!(g, p("x^2 - x + 1/4"));
    }
}
