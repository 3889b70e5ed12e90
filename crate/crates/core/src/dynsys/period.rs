//! Exact and numeric period detection.
//!
//! Symbolic periods hold for generic initial conditions: the symbolic orbit
//! divides by expressions that vanish on a measure-zero set of starts.

use super::system::{lag_names, DifferenceEquation};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, RationalFunction};

/// Default numeric tolerance.
pub const PERIOD_TOL: f64 = 1e-9;

/// Fresh symbol names `a, b, c, ...` (then `s26, s27, ...`).
pub fn fresh_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("s{i}")
            }
        })
        .collect()
}

/// Term budget for symbolic period search. Periodic recurrences keep their
/// iterates small; aperiodic ones jump from about 10^3 to 10^4 terms in one
/// step, and that step alone costs seconds.
pub const PERIOD_BUDGET: usize = 1000;

/// Smallest `p <= max_p` with `x_{j+p} = x_j` identically, for generic
/// initial conditions.
pub fn detect_period_symbolic(eq: &DifferenceEquation, max_p: usize) -> Result<Option<usize>> {
    detect_period_symbolic_with_budget(eq, max_p, PERIOD_BUDGET)
}

pub fn detect_period_symbolic_with_budget(
    eq: &DifferenceEquation,
    max_p: usize,
    budget: usize,
) -> Result<Option<usize>> {
    let k = eq.order();
    let names = fresh_names(k);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    // Extend the orbit one step at a time so that short periods stop early.
    let mut seq = eq
        .orbit_symbolic(&refs, 0, budget)?
        .sequence
        .expect("equation orbit");
    let ctx = seq[0].vars().clone();
    let params: Vec<RationalFunction> = (0..eq.params().len())
        .map(|i| RationalFunction::var(&ctx, k + i))
        .collect();
    for p in 1..=max_p {
        while seq.len() < p + k {
            let step = seq.len();
            let mut subs: Vec<RationalFunction> =
                (0..k).map(|j| seq[step - 1 - j].clone()).collect();
            subs.extend(params.iter().cloned());
            let v = eq.rhs().compose(&subs)?;
            let terms = v.num().len();
            if terms > budget {
                return Err(Error::ExpressionTooLarge { terms, budget });
            }
            seq.push(v);
        }
        if (0..k).all(|j| seq[p + j].equal(&seq[j])) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Smallest `p` such that the last `3p` entries of the float sequence repeat
/// with period `p` (relative tolerance `tol`). Periods up to `max_p` are
/// tried; the default is a quarter of the sequence length.
pub fn detect_period_numeric(
    eq: &DifferenceEquation,
    init: &[f64],
    n: usize,
    tol: f64,
    max_p: Option<usize>,
) -> Result<Option<usize>> {
    let seq = eq.sequence_float(init, n)?;
    Ok(period_of_sequence(&seq, tol, max_p))
}

pub fn period_of_sequence(seq: &[f64], tol: f64, max_p: Option<usize>) -> Option<usize> {
    let len = seq.len();
    let cap = max_p.unwrap_or(len / 4).min(len / 4);
    (1..=cap).find(|&p| {
        (len - 3 * p..len).all(|i| {
            let (a, b) = (seq[i], seq[i - p]);
            (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
        })
    })
}

/// One hit of [`scan_periodic`].
#[derive(Clone, Debug)]
pub struct PeriodicEquation {
    pub equation: DifferenceEquation,
    pub period: usize,
}

/// Brute-force scan over `x[n+1] = (c_0 + c_1 x[n] + ... + c_{k-1} x[n-k+2]) / x[n-k+1]`
/// with every `c_i` in `{0, 1}`. Reports the equations that are periodic
/// (symbolically, `p <= max_p`). No completeness claim beyond this family.
pub fn scan_periodic(k: usize, max_p: usize) -> Result<Vec<PeriodicEquation>> {
    let ctx = lag_names("x", k, &[]);
    let mut hits = Vec::new();
    for mask in 1u32..(1 << k) {
        let mut num = Polynomial::zero(&ctx);
        if mask & 1 == 1 {
            num = &num + &Polynomial::one(&ctx);
        }
        for i in 1..k {
            if mask >> i & 1 == 1 {
                num = &num + &Polynomial::var(&ctx, i - 1);
            }
        }
        let den = Polynomial::var(&ctx, k - 1);
        let rhs = RationalFunction::new(num, den)?;
        let eq = DifferenceEquation::new(k, rhs, Vec::new())?;
        // Numeric prefilter from a generic start before the symbolic check.
        let init: Vec<f64> = (0..k).map(|i| 1.0 + 0.37 * (i as f64 + 1.0)).collect();
        let seq = match eq.sequence_float(&init, 8 * max_p + k) {
            Ok(s) => s,
            Err(_) => continue,
        };
        if period_of_sequence(&seq, 1e-8, Some(max_p)).is_none() {
            continue;
        }
        if let Some(p) = detect_period_symbolic(&eq, max_p)? {
            hits.push(PeriodicEquation { equation: eq, period: p });
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lyness_period_five() {
        let eq = DifferenceEquation::parse("x[n+1] = (1+x[n])/x[n-1]", None).unwrap();
        assert_eq!(detect_period_symbolic(&eq, 10).unwrap(), Some(5));
        assert_eq!(
            detect_period_numeric(&eq, &[1.0, 1.0], 100, PERIOD_TOL, None).unwrap(),
            Some(5)
        );
    }

    #[test]
    fn trivial_periods() {
        let id = DifferenceEquation::parse("x[n+1] = x[n]", None).unwrap();
        assert_eq!(detect_period_symbolic(&id, 3).unwrap(), Some(1));
        let c = DifferenceEquation::parse("x[n+1] = 1", Some(1)).unwrap();
        assert_eq!(detect_period_numeric(&c, &[3.0], 20, PERIOD_TOL, None).unwrap(), Some(1));
    }

    #[test]
    fn scan_finds_lyness_family() {
        let hits = scan_periodic(2, 6).unwrap();
        assert!(hits.iter().any(|h| h.period == 5));
    }
}
