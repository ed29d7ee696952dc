//! Square-free decomposition by Yun's algorithm (characteristic zero).

use super::poly::Polynomial;

/// Decomposes `p` into pairwise-coprime monic square-free factors with their
/// multiplicities, sorted by multiplicity. The product of `factor^mult`
/// reproduces `p` up to its leading coefficient.
pub fn squarefree_decompose(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    assert!(!p.is_zero() && p.degree() >= 1, "square-free decomposition needs degree >= 1");
    let f = p.monic();
    let fp = f.derivative();
    let a0 = Polynomial::gcd(&f, &fp);
    if a0.is_constant() {
        return vec![(f, 1)];
    }
    let (mut b, r) = f.div_rem(&a0);
    debug_assert!(r.is_zero());
    let (c0, r) = fp.div_rem(&a0);
    debug_assert!(r.is_zero());
    let mut d = &c0 - &b.derivative();
    let mut out = Vec::new();
    let mut mult = 1usize;
    while !b.is_constant() {
        let factor = Polynomial::gcd(&b, &d);
        if !factor.is_constant() {
            out.push((factor.monic(), mult));
        }
        let (b_next, r) = b.div_rem(&factor);
        debug_assert!(r.is_zero());
        let (c_next, r) = d.div_rem(&factor);
        debug_assert!(r.is_zero());
        b = b_next;
        d = &c_next - &b.derivative();
        mult += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn visible_factorizations() {
        // x^2 (x-1)
        let d = squarefree_decompose(&p("x^3 - x^2"));
        assert_eq!(d, vec![(p("x - 1"), 1), (p("x"), 2)]);
        // (x-2)^4
        let d = squarefree_decompose(&p("x^4 - 8*x^3 + 24*x^2 - 32*x + 16"));
        assert_eq!(d, vec![(p("x - 2"), 4)]);
    }

    #[test]
    fn groups_by_multiplicity() {
        // x (x-1)^2 (x+2): multiplicity-1 part x^2+2x, multiplicity-2 part x-1
        let d = squarefree_decompose(&p("x^4 - 3*x^2 + 2*x"));
        assert_eq!(d, vec![(p("x^2 + 2*x"), 1), (p("x - 1"), 2)]);
    }

    #[test]
    fn product_reconstructs_input() {
        let f = p("x^4 - 3*x^2 + 2*x");
        let d = squarefree_decompose(&f);
        let mut prod = Polynomial::one();
        for (factor, mult) in &d {
            for _ in 0..*mult {
                prod = &prod * factor;
            }
        }
        assert_eq!(prod, f.monic());
    }

    #[test]
    fn squarefree_input_passes_through() {
        let f = p("x^3 - x");
        assert_eq!(squarefree_decompose(&f), vec![(f.clone(), 1)]);
    }
}
