//! Derived figures of merit: the violation ratio D, settings signatures,
//! noise and detection-efficiency thresholds, and the pseudotelepathy
//! game value. Everything except η_crit is exact rational arithmetic.

use crate::error::{Error, Result};
use crate::lhv::BellOperator;
use crate::pauli::Letter;
use num_rational::Ratio;

/// Exact rational used for D, V_crit and the game value; always reduced,
/// comparisons by cross-multiplication.
pub type Rational = Ratio<i64>;

/// The violation ratio D = q / (2p − q), with `bound` = 2p − q.
pub fn violation_ratio(q: i64, bound: i64) -> Result<Rational> {
    if bound <= 0 {
        return Err(Error::NoViolationRatio { bound });
    }
    Ok(Rational::new(q, bound))
}

/// Per-qubit counts of distinct non-identity letters across the terms.
/// A qubit appearing only as identity counts 0.
pub fn settings_signature(op: &BellOperator) -> Vec<u8> {
    let n = op.n();
    let mut seen = vec![[false; 3]; n];
    for term in op.terms() {
        for qubit in 0..n {
            match term.pauli.letter_at(qubit).expect("qubit in range") {
                Letter::I => {}
                Letter::X => seen[qubit][0] = true,
                Letter::Y => seen[qubit][1] = true,
                Letter::Z => seen[qubit][2] = true,
            }
        }
    }
    seen.iter()
        .map(|s| s.iter().filter(|&&b| b).count() as u8)
        .collect()
}

/// Critical visibility: the smallest V for which the white-noise-mixed
/// state still violates; equals 1/D.
pub fn v_crit(d: Rational) -> Result<Rational> {
    if d <= Rational::from_integer(1) {
        return Err(Error::InvalidArgument(format!(
            "no violation at D = {d}, critical visibility undefined"
        )));
    }
    Ok(d.recip())
}

/// Critical detection efficiency [2 + (log 2 / log D)] / 4.
///
/// The closed form holds for the odd-n star states and their optimal
/// inequality; callers gate wider use themselves.
pub fn eta_crit(d: Rational) -> Result<f64> {
    if d <= Rational::from_integer(1) {
        return Err(Error::InvalidArgument(format!(
            "no violation at D = {d}, critical efficiency undefined"
        )));
    }
    let df = *d.numer() as f64 / *d.denom() as f64;
    Ok((2.0 + std::f64::consts::LN_2 / df.ln()) / 4.0)
}

/// Classical winning probability p/q of the associated pseudotelepathy
/// game; the quantum team wins with certainty.
pub fn game_value(p: i64, q: i64) -> Result<Rational> {
    if p < 1 || q < 1 || p > q {
        return Err(Error::InvalidArgument(format!(
            "game value needs 1 ≤ p ≤ q, got p={p}, q={q}"
        )));
    }
    Ok(Rational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn violation_ratios_reduce() {
        assert_eq!(violation_ratio(21, 9).unwrap(), rat(7, 3));
        assert_eq!(violation_ratio(55, 19).unwrap(), rat(55, 19));
        assert_eq!(violation_ratio(6, 6).unwrap(), rat(1, 1));
        assert!(matches!(
            violation_ratio(4, 0),
            Err(Error::NoViolationRatio { bound: 0 })
        ));
    }

    #[test]
    fn v_crit_is_reciprocal() {
        assert_eq!(v_crit(rat(2, 1)).unwrap(), rat(1, 2));
        assert_eq!(v_crit(rat(55, 19)).unwrap(), rat(19, 55));
        assert_eq!(v_crit(rat(4, 1)).unwrap(), rat(1, 4));
        assert!(v_crit(rat(1, 1)).is_err());
    }

    #[test]
    fn eta_crit_values() {
        assert!((eta_crit(rat(2, 1)).unwrap() - 0.75).abs() < 1e-12);
        assert!((eta_crit(rat(4, 1)).unwrap() - 0.625).abs() < 1e-12);
        // Large-D asymptote is 1/2.
        let big = eta_crit(rat(1_000_000_000, 1)).unwrap();
        assert!(big > 0.5 && big < 0.52);
        assert!(eta_crit(rat(1, 1)).is_err());
    }

    #[test]
    fn eta_crit_decreases_in_d() {
        let mut last = 1.0;
        for num in 2..40 {
            let e = eta_crit(rat(num, 1)).unwrap();
            assert!(e < last && e > 0.5);
            last = e;
        }
    }

    #[test]
    fn game_values() {
        assert_eq!(game_value(3, 4).unwrap(), rat(3, 4));
        assert_eq!(game_value(10, 16).unwrap(), rat(5, 8));
        assert_eq!(game_value(7, 7).unwrap(), rat(1, 1));
        assert!(game_value(5, 4).is_err());
        assert!(game_value(0, 4).is_err());
    }
}
