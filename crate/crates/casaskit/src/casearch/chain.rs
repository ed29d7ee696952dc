//! Common-root chain analysis: sign conditions and monotonicity.
//!
//! A chain assigns to each order `nu` a real value that is simultaneously a
//! root of `f` and of `f^(nu)`. When every higher derivative is nonnegative
//! at its chain point (or the chain is non-increasing), each point is a
//! maximal root of its derivative and the chain must be stationary; on a
//! real-rooted polynomial a valid non-stationary chain would contradict
//! that, so finding one is flagged.

use num_traits::Signed;

use crate::polycore::{GaussianRational, PolyError, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainVerdict {
    /// Some entry is not a common root; nothing was concluded.
    Gated,
    /// Hypotheses hold and the chain is constant.
    Stationary,
    /// Hypotheses hold but the chain is not constant — impossible for a
    /// real-rooted polynomial, so this flags an internal inconsistency.
    Contradiction,
    /// Entries are common roots but neither the sign condition nor
    /// monotonicity holds; conditions are reported without a conclusion.
    HypothesisNotMet,
}

#[derive(Clone, Debug)]
pub struct ChainEntryReport {
    pub order: usize,
    pub value: GaussianRational,
    pub common_root_ok: bool,
    /// `f^(s+nu)(x_nu) >= 0` for every `s = 1..n-nu-1`.
    pub sign_condition_ok: bool,
    /// Not larger than the previous chain entry.
    pub nonincreasing_ok: bool,
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub entries: Vec<ChainEntryReport>,
    pub verdict: ChainVerdict,
}

/// Checks a (possibly partial) chain `x_0, x_1, ...` of claimed common
/// roots of `f` and its derivatives, in order.
pub fn maximal_chain_check(
    p: &Polynomial,
    chain: &[GaussianRational],
) -> Result<ChainReport, PolyError> {
    if p.is_zero() || p.degree() < 1 {
        return Err(PolyError::Domain("chain check needs degree >= 1".into()));
    }
    let f = p.monic();
    let n = f.degree();
    if chain.is_empty() || chain.len() > n {
        return Err(PolyError::Domain(format!(
            "chain length must be in 1..={}",
            n
        )));
    }
    let mut entries = Vec::with_capacity(chain.len());
    for (nu, x) in chain.iter().enumerate() {
        let common_root_ok =
            f.eval(x).is_zero() && f.derive(nu).expect("nu < n").eval(x).is_zero();
        let mut sign_condition_ok = x.is_real();
        if sign_condition_ok {
            for s in 1..n.saturating_sub(nu) {
                let v = f.derive(s + nu).expect("s + nu <= n").eval(x);
                let ok = v.is_real() && !v.as_rational().unwrap().is_negative();
                if !ok {
                    sign_condition_ok = false;
                    break;
                }
            }
        }
        let nonincreasing_ok = if nu == 0 {
            true
        } else {
            let prev: &GaussianRational = &chain[nu - 1];
            x.is_real() && prev.is_real() && x.re <= prev.re
        };
        entries.push(ChainEntryReport {
            order: nu,
            value: x.clone(),
            common_root_ok,
            sign_condition_ok,
            nonincreasing_ok,
        });
    }
    let verdict = if entries.iter().any(|e| !e.common_root_ok) {
        ChainVerdict::Gated
    } else {
        let signs = entries.iter().all(|e| e.sign_condition_ok);
        let mono = entries.iter().all(|e| e.nonincreasing_ok);
        if signs || mono {
            if chain.iter().all(|x| x == &chain[0]) {
                ChainVerdict::Stationary
            } else {
                ChainVerdict::Contradiction
            }
        } else {
            ChainVerdict::HypothesisNotMet
        }
    };
    Ok(ChainReport { entries, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_polynomial;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_i64(n)
    }

    #[test]
    fn constant_chain_on_pure_power_is_stationary() {
        let f = Polynomial::from_roots(&[(g(2), 4)]);
        let rep = maximal_chain_check(&f, &[g(2), g(2), g(2), g(2)]).unwrap();
        assert_eq!(rep.verdict, ChainVerdict::Stationary);
        assert!(rep.entries.iter().all(|e| e.common_root_ok && e.sign_condition_ok));
    }

    #[test]
    fn partial_chain_reports_sign_conditions() {
        let f = parse_polynomial("x^4 - 3*x^2 + 2*x").unwrap();
        let rep = maximal_chain_check(&f, &[g(1), g(1)]).unwrap();
        assert!(rep.entries[0].common_root_ok);
        assert!(rep.entries[1].common_root_ok);
        // f''(1) = 6 >= 0, f'''(1) = 24 >= 0: signs hold on this prefix
        assert!(rep.entries.iter().all(|e| e.sign_condition_ok));
        assert_eq!(rep.verdict, ChainVerdict::Stationary);
    }

    #[test]
    fn non_common_entry_gates() {
        let f = parse_polynomial("x^3 - x").unwrap();
        // 1 is a root of f but not of f'
        let rep = maximal_chain_check(&f, &[g(1), g(1)]).unwrap();
        assert_eq!(rep.verdict, ChainVerdict::Gated);
        assert!(!rep.entries[1].common_root_ok);
    }
}
