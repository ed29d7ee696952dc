//! Power sums of polynomial roots from coefficients, via Newton's identities.
//!
//! No root extraction: `p_t = sum_j r_j lambda_j^t` comes straight from the
//! elementary symmetric functions, so the result is exact even when the roots
//! are irrational.

use super::gaussian::GaussianRational;
use super::poly::Polynomial;

/// Power sums `p[0..=t_max]` of the roots of a polynomial, counted with
/// multiplicity. `p[0]` equals the degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSums {
    values: Vec<GaussianRational>,
}

impl PowerSums {
    pub fn get(&self, t: usize) -> &GaussianRational {
        &self.values[t]
    }

    pub fn values(&self) -> &[GaussianRational] {
        &self.values
    }

    pub fn t_max(&self) -> usize {
        self.values.len() - 1
    }
}

/// Computes power sums of the roots of `p` (normalized monic internally) for
/// `t = 0..=t_max`.
pub fn power_sums(p: &Polynomial, t_max: usize) -> PowerSums {
    assert!(!p.is_zero(), "power sums of the zero polynomial");
    let f = p.monic();
    let n = f.degree();
    // e[i] = (-1)^i a_i for the monic coefficients a_i of x^(n-i).
    let elementary: Vec<GaussianRational> = (0..=n)
        .map(|i| {
            let a = f.coeff_desc(i);
            if i % 2 == 0 {
                a
            } else {
                -a
            }
        })
        .collect();
    let mut values = Vec::with_capacity(t_max + 1);
    values.push(GaussianRational::from_i64(n as i64));
    for t in 1..=t_max {
        let mut acc = GaussianRational::zero();
        for i in 1..t.min(n + 1) {
            let term = &elementary[i] * &values[t - i];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        if t <= n {
            let lead = &elementary[t] * &GaussianRational::from_i64(t as i64);
            acc = if t % 2 == 1 { &acc + &lead } else { &acc - &lead };
        }
        values.push(acc);
    }
    PowerSums { values }
}

/// `sum_j r_j (lambda_j - z)^2` from the first three power sums.
pub fn sum_squared_deviations(ps: &PowerSums, z: &GaussianRational) -> GaussianRational {
    let n = ps.get(0);
    let p1 = ps.get(1);
    let p2 = ps.get(2);
    let two = GaussianRational::from_i64(2);
    p2 - &(&two * z * p1) + &(z * z * n)
}

/// `sum_j r_j (lambda_j - z)` from the first power sum.
pub fn sum_deviations(ps: &PowerSums, z: &GaussianRational) -> GaussianRational {
    ps.get(1) - &(z * ps.get(0))
}

/// `sum_{j<s} r_j r_s (lambda_j - lambda_s)^2 = n p_2 - p_1^2`.
pub fn pairwise_square_sum(ps: &PowerSums) -> GaussianRational {
    ps.get(0) * ps.get(2) - ps.get(1) * ps.get(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn cubic_with_symmetric_roots() {
        let ps = power_sums(&p("x^3 - x"), 2);
        assert_eq!(
            ps.values(),
            &[
                GaussianRational::from_i64(3),
                GaussianRational::from_i64(0),
                GaussianRational::from_i64(2)
            ]
        );
    }

    #[test]
    fn single_root_with_multiplicity() {
        // (x-b)^n has p_1 = n b; take b=5, n=4
        let f = Polynomial::from_roots(&[(GaussianRational::from_i64(5), 4)]);
        let ps = power_sums(&f, 1);
        assert_eq!(ps.get(1), &GaussianRational::from_i64(20));
    }

    #[test]
    fn double_root_counts_twice() {
        // x^2 (x-1): p_2 = 0 + 0 + 1
        let ps = power_sums(&p("x^3 - x^2"), 2);
        assert_eq!(ps.get(2), &GaussianRational::from_i64(1));
    }

    #[test]
    fn high_powers_and_non_monic() {
        // roots 1,2,3 of 2(x-1)(x-2)(x-3); p_4 = 1 + 16 + 81 = 98
        let f = p("2*x^3 - 12*x^2 + 22*x - 12");
        let ps = power_sums(&f, 4);
        assert_eq!(ps.get(4), &GaussianRational::from_i64(98));
    }
}
