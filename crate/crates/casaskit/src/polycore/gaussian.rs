//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar. Canonical form (positive denominator, reduced) is
/// maintained by the underlying representation.
pub type Rational = BigRational;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact square root of a nonnegative rational, when it exists in the
/// rationals: both numerator and denominator must be perfect squares.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let num = q.numer();
    let den = q.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// `f64` value of a rational, rounded so the result is `>=` the true value.
pub fn rational_to_f64_up(q: &Rational) -> f64 {
    let approx = q.to_f64().unwrap_or(f64::INFINITY);
    if !approx.is_finite() {
        return approx;
    }
    // to_f64 rounds to nearest; adjust only when it rounded below.
    match Rational::from_float(approx) {
        Some(exact) if exact >= *q => approx,
        _ => approx.next_up(),
    }
}

/// `f64` value of a rational, rounded so the result is `<=` the true value.
pub fn rational_to_f64_down(q: &Rational) -> f64 {
    let approx = q.to_f64().unwrap_or(f64::NEG_INFINITY);
    if !approx.is_finite() {
        return approx;
    }
    match Rational::from_float(approx) {
        Some(exact) if exact <= *q => approx,
        _ => approx.next_down(),
    }
}

fn sqrt_is_exact(s: f64, square: &Rational) -> bool {
    match Rational::from_float(s) {
        Some(r) => &(&r * &r) == square,
        None => false,
    }
}

/// Canonical text form: `p` when the denominator is 1, else `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Complex number with exact rational real and imaginary parts.
///
/// This is the coefficient field for every exact operation in the crate;
/// it is closed under the four field operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(rat_i64(n))
    }

    pub fn from_pair(re: i64, im: i64) -> Self {
        GaussianRational { re: rat_i64(re), im: rat_i64(im) }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Real part, if the value is real.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_real() {
            Some(&self.re)
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re^2 + im^2`, the exact squared modulus.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero GaussianRational");
        GaussianRational { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Exact square root in the Gaussian rationals, when one exists.
    ///
    /// For `z = x + yi` a root exists iff `|z|` is rational and the two
    /// half-sum quantities `(x ± |z|)/2` are rational squares.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = rat_i64(2);
        if self.im.is_zero() {
            if !self.re.is_negative() {
                let u = rational_sqrt(&self.re)?;
                return Some(GaussianRational::from_rational(u));
            }
            let v = rational_sqrt(&(-self.re.clone()))?;
            return Some(GaussianRational { re: Rational::zero(), im: v });
        }
        let u2 = (&self.re + &modulus) / &two;
        let v2 = (&modulus - &self.re) / &two;
        let u = rational_sqrt(&u2)?;
        let v_abs = rational_sqrt(&v2)?;
        // Sign of v is fixed by 2uv = im.
        let v = if self.im.is_negative() { -v_abs } else { v_abs };
        let cand = GaussianRational { re: u, im: v };
        debug_assert_eq!(&(&cand * &cand), self);
        Some(cand)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Upper bound on `|z|` in `f64` (one-sided rounding, tight when the
    /// modulus is exactly representable).
    pub fn abs_upper(&self) -> f64 {
        let norm = self.norm_sqr();
        let s = rational_to_f64_up(&norm).sqrt();
        if sqrt_is_exact(s, &norm) {
            s
        } else {
            s.next_up()
        }
    }

    /// Lower bound on `|z|` in `f64` (one-sided rounding).
    pub fn abs_lower(&self) -> f64 {
        let norm = self.norm_sqr();
        let s = rational_to_f64_down(&norm).max(0.0).sqrt();
        if sqrt_is_exact(s, &norm) || s == 0.0 {
            s
        } else {
            s.next_down()
        }
    }

    /// Canonical text form: rational when real, else `(re,im)`.
    pub fn to_text(&self) -> String {
        if self.is_real() {
            format_rational(&self.re)
        } else {
            format!("({},{})", format_rational(&self.re), format_rational(&self.im))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'b GaussianRational) -> GaussianRational {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'b GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, |a, b| GaussianRational {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
impl_binop!(Sub, sub, |a, b| GaussianRational {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
impl_binop!(Mul, mul, |a, b| GaussianRational {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
impl_binop!(Div, div, |a, b| a * &b.inv());

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl<'a> Neg for &'a GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_close() {
        let a = GaussianRational::from_pair(1, 2);
        let b = GaussianRational::from_pair(3, -1);
        let prod = &a * &b;
        assert_eq!(prod, GaussianRational::from_pair(5, 5));
        let back = &prod / &b;
        assert_eq!(back, a);
        let sum = &a + &b;
        assert_eq!(&sum - &b, a);
    }

    #[test]
    fn sqrt_of_gaussian_square() {
        // (2+3i)^2 = -5+12i
        let z = GaussianRational::from_pair(-5, 12);
        let s = z.sqrt().unwrap();
        assert_eq!(&s * &s, z);
        // 2i has no Gaussian-rational square root (sqrt is 1+i times sqrt 1... it does: (1+i)^2 = 2i)
        let t = GaussianRational::from_pair(0, 2);
        let st = t.sqrt().unwrap();
        assert_eq!(&st * &st, t);
        // 3 has no rational square root
        assert!(GaussianRational::from_i64(3).sqrt().is_none());
        // -4 has root 2i
        let m = GaussianRational::from_i64(-4).sqrt().unwrap();
        assert_eq!(m, GaussianRational::from_pair(0, 2));
    }

    #[test]
    fn rational_sqrt_cases() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
        assert_eq!(rational_sqrt(&Rational::zero()), Some(Rational::zero()));
    }

    #[test]
    fn one_sided_rounding_brackets_value() {
        let q = rat(1, 3);
        assert!(rational_to_f64_down(&q) < rational_to_f64_up(&q));
        let z = GaussianRational::from_pair(3, 4);
        assert!(z.abs_lower() <= 5.0 && 5.0 <= z.abs_upper());
    }
}
