//! Seeded generators and constructed fixtures shared by the test suites.
#![allow(dead_code)]

use casaskit::polycore::{rat, GaussianRational, Polynomial, Rational};
use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-9i64..=9);
    let den = rng.random_range(1i64..=3);
    rat(num, den)
}

pub fn nonzero_small_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != rat(0, 1) {
            return q;
        }
    }
}

/// Monic polynomial of degree `n` with random distinct rational roots and
/// random multiplicities; returns the root data alongside.
pub fn rational_rooted(rng: &mut ChaCha8Rng, n: usize) -> (Polynomial, Vec<(Rational, usize)>) {
    // distinct root pool
    let mut pool: Vec<Rational> = Vec::new();
    for num in -9i64..=9 {
        for den in 1i64..=2 {
            let q = rat(num, den);
            if !pool.contains(&q) {
                pool.push(q);
            }
        }
    }
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let root = pool.choose(rng).unwrap().clone();
        if roots.iter().any(|(r, _)| *r == root) {
            continue;
        }
        let mult = if remaining == 1 { 1 } else { rng.random_range(1..=remaining.min(3)) };
        roots.push((root, mult));
        remaining -= mult;
    }
    let gaussian: Vec<(GaussianRational, usize)> = roots
        .iter()
        .map(|(r, m)| (GaussianRational::from_rational(r.clone()), *m))
        .collect();
    (Polynomial::from_roots(&gaussian), roots)
}

/// `(x - b)^n` for a random rational `b`.
pub fn trivial_poly(rng: &mut ChaCha8Rng, n: usize) -> Polynomial {
    let b = small_rational(rng);
    Polynomial::from_roots(&[(GaussianRational::from_rational(b), n)])
}

/// Random exact rational node sequence of length `n`.
pub fn rational_nodes(rng: &mut ChaCha8Rng, n: usize) -> Vec<GaussianRational> {
    (0..n)
        .map(|_| GaussianRational::from_rational(small_rational(rng)))
        .collect()
}

pub fn int_poly(roots: &[(i64, usize)]) -> Polynomial {
    let data: Vec<(GaussianRational, usize)> = roots
        .iter()
        .map(|&(r, m)| (GaussianRational::from_i64(r), m))
        .collect();
    Polynomial::from_roots(&data)
}

/// Integer-root instances whose centroid is a root and whose penultimate
/// derivative also has a root of the polynomial (exactly verified data).
pub const PENULTIMATE_INSTANCES: &[&[(i64, usize)]] = &[
    &[(-4, 3), (-3, 1), (-2, 1), (0, 1), (3, 1)],
    &[(-4, 1), (-3, 1), (-1, 2), (0, 1), (3, 1)],
    &[(-4, 1), (-2, 1), (-1, 1), (0, 1), (2, 1)],
    &[(-4, 1), (-1, 1), (0, 2), (2, 1), (3, 1)],
    &[(-4, 1), (-1, 1), (1, 1), (2, 1), (3, 3)],
    &[(-3, 3), (-2, 1), (-1, 1), (1, 1), (4, 1)],
    &[(-3, 1), (-2, 1), (0, 2), (1, 1), (4, 1)],
    &[(-3, 1), (-1, 1), (0, 1), (1, 1), (3, 1)],
    &[(-3, 1), (0, 1), (1, 2), (3, 1), (4, 1)],
    &[(-3, 1), (0, 1), (2, 1), (3, 3), (4, 1)],
    &[(-2, 1), (0, 1), (1, 1), (2, 1), (4, 1)],
];

/// Integer-root instances where the centroid is a root and `f^(m)` shares a
/// non-centroid root with `f` at an order strictly between the maximum
/// multiplicity and the penultimate derivative: `(roots, m)`.
pub const SHARED_DERIVATIVE_INSTANCES: &[(&[(i64, usize)], usize)] = &[
    (&[(-4, 1), (-3, 1), (-2, 2), (-1, 1), (0, 1)], 3),
    (&[(-4, 1), (-3, 1), (-2, 1), (-1, 1), (2, 2)], 2),
    (&[(-4, 1), (-3, 1), (-1, 1), (0, 1), (3, 1)], 2),
    (&[(-4, 1), (-2, 1), (0, 1), (1, 1), (4, 3)], 3),
    (&[(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)], 3),
    (&[(-4, 2), (-1, 1), (0, 1), (1, 1), (2, 1)], 2),
    (&[(-4, 1), (-1, 1), (0, 1), (2, 1), (3, 1)], 2),
    (&[(-4, 3), (-1, 1), (0, 1), (2, 1), (4, 1)], 3),
    (&[(-3, 1), (-2, 1), (-1, 2), (0, 1), (1, 1)], 3),
    (&[(-3, 1), (-2, 1), (-1, 1), (0, 1), (3, 2)], 2),
    (&[(-3, 1), (-2, 1), (0, 1), (1, 1), (4, 1)], 2),
    (&[(-3, 2), (0, 1), (1, 1), (2, 1), (3, 1)], 2),
    (&[(-3, 1), (0, 1), (1, 1), (3, 1), (4, 1)], 2),
    (&[(-2, 1), (-1, 1), (0, 2), (1, 1), (2, 1)], 3),
    (&[(-2, 1), (-1, 1), (0, 1), (1, 1), (4, 2)], 2),
];

/// Apply a rational translation and positive scaling to an integer-root
/// instance; the centroid/penultimate hypotheses are invariant.
pub fn translate_scale(
    base: &[(i64, usize)],
    shift: &Rational,
    scale: &Rational,
) -> Polynomial {
    let data: Vec<(GaussianRational, usize)> = base
        .iter()
        .map(|&(r, m)| {
            let v = (rat(r, 1) + shift) * scale;
            (GaussianRational::from_rational(v), m)
        })
        .collect();
    Polynomial::from_roots(&data)
}

/// Monic quartic with centroid `gamma` a root and `f''` sharing the root
/// `s` with `f` (`s != gamma`): solves the three linear conditions exactly.
pub fn quartic_with_shared_penultimate(gamma: &Rational, s: &Rational) -> Polynomial {
    assert_ne!(gamma, s);
    let four = rat(4, 1);
    let a1 = -(gamma * &four);
    // f'' = 12 x^2 + 6 a1 x + 2 a2 vanishing at s
    let a2 = -(rat(6, 1) * s * s) - rat(3, 1) * &a1 * s;
    // f(s) = 0 and f(gamma) = 0, linear in a3, a4
    let pow4 = |x: &Rational| x * x * x * x;
    let pow3 = |x: &Rational| x * x * x;
    let pow2 = |x: &Rational| x * x;
    let rhs_s = -(pow4(s) + &a1 * pow3(s) + &a2 * pow2(s));
    let rhs_g = -(pow4(gamma) + &a1 * pow3(gamma) + &a2 * pow2(gamma));
    let a3 = (&rhs_s - &rhs_g) / (s - gamma);
    let a4 = rhs_g - &a3 * gamma;
    Polynomial::from_descending(
        [rat(1, 1), a1, a2, a3, a4]
            .into_iter()
            .map(GaussianRational::from_rational)
            .collect(),
    )
}

/// Polynomial with centroid zero that is also a root: picks random other
/// roots and solves the last one so the weighted sum vanishes.
pub fn centroid_root_poly(rng: &mut ChaCha8Rng, n: usize) -> Option<Polynomial> {
    if n < 3 {
        return None;
    }
    let r1 = rng.random_range(1..=2usize.min(n - 2));
    let mut rest = n - r1;
    let mut others: Vec<(Rational, usize)> = Vec::new();
    while rest > 1 {
        let root = nonzero_small_rational(rng);
        if others.iter().any(|(r, _)| *r == root) {
            continue;
        }
        let mult = if rest <= 2 { 1 } else { rng.random_range(1..=(rest - 1).min(3)) };
        others.push((root, mult));
        rest -= mult;
        if others.len() >= 4 {
            break;
        }
    }
    if rest == 0 {
        return None;
    }
    // solve the last root: sum of r_j lambda_j = 0
    let weighted: Rational = others
        .iter()
        .map(|(r, m)| r * rat(*m as i64, 1))
        .fold(rat(0, 1), |acc, v| acc + v);
    let last = -(weighted / rat(rest as i64, 1));
    if last == rat(0, 1) || others.iter().any(|(r, _)| *r == last) {
        return None;
    }
    others.push((last, rest));
    let mut data: Vec<(GaussianRational, usize)> =
        vec![(GaussianRational::zero(), r1)];
    data.extend(
        others
            .into_iter()
            .map(|(r, m)| (GaussianRational::from_rational(r), m)),
    );
    Some(Polynomial::from_roots(&data))
}

/// Complex-rooted family whose penultimate derivative has a double root
/// while the polynomial has four distinct roots: `(x-c)^4 - a^4`.
pub fn zero_gap_complex(c: i64, a: i64) -> Polynomial {
    assert!(a != 0);
    let data = [
        (GaussianRational::from_i64(c + a), 1),
        (GaussianRational::from_i64(c - a), 1),
        (
            GaussianRational::new(rat(c, 1), rat(a, 1)),
            1,
        ),
        (
            GaussianRational::new(rat(c, 1), rat(-a, 1)),
            1,
        ),
    ];
    Polynomial::from_roots(&data)
}
