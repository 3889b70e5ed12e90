//! Fitting a numeric orbit tail to a cycle form.

use serde::{Deserialize, Serialize};

use super::manifold::PeriodicManifold;
use crate::error::{Error, Result};

/// Largest allowed spread of a phase across the last three periods.
pub const DRIFT_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitCycle {
    pub period: usize,
    /// Averaged tail, starting at the phase used for the fit.
    pub observed: Vec<f64>,
    /// Fitted `φ` or `(φ, ψ)`.
    pub params: Vec<f64>,
    /// Cycle form evaluated at `params`.
    pub predicted: Vec<f64>,
    pub deviation: f64,
    pub drift: f64,
    /// `φψ > 1` when the form requires it.
    pub constraint_holds: bool,
}

/// Averages the last `3p` values of `seq` phase by phase, then fits the
/// cycle parameters from consecutive entries. Rotations are tried starting
/// from the last value; the first one within `DRIFT_TOL` wins, otherwise
/// the one with the smallest deviation.
pub fn extract_limit_cycle(seq: &[f64], m: &PeriodicManifold) -> Result<LimitCycle> {
    let p = m.period;
    if seq.len() < 3 * p {
        return Err(Error::InvalidArgument(format!(
            "need at least {} values for period {p}, got {}",
            3 * p,
            seq.len()
        )));
    }
    let tail = &seq[seq.len() - 3 * p..];
    let mut avg = vec![0.0; p];
    let mut drift: f64 = 0.0;
    for j in 0..p {
        let vals = [tail[j], tail[j + p], tail[j + 2 * p]];
        avg[j] = vals.iter().sum::<f64>() / 3.0;
        let spread = vals.iter().cloned().fold(f64::MIN, f64::max) - vals.iter().cloned().fold(f64::MAX, f64::min);
        drift = drift.max(spread);
    }
    if !(drift <= DRIFT_TOL) {
        return Err(Error::NotConverged { drift });
    }
    let nparams = m.params.len();
    let mut best: Option<LimitCycle> = None;
    for r in 0..p {
        let s = (p - 1 + r) % p;
        let observed: Vec<f64> = (0..p).map(|i| avg[(s + i) % p]).collect();
        let params = observed[..nparams].to_vec();
        let Some(predicted) = m.eval(&params) else { continue };
        let deviation = predicted
            .iter()
            .zip(&observed)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let cand = LimitCycle {
            period: p,
            constraint_holds: m.constraint_holds(&params),
            observed,
            params,
            predicted,
            deviation,
            drift,
        };
        let good = cand.deviation <= DRIFT_TOL && cand.constraint_holds;
        if good {
            return Ok(cand);
        }
        if best.as_ref().map_or(true, |b| cand.deviation < b.deviation) {
            best = Some(cand);
        }
    }
    best.ok_or(Error::DivisionByZero { step: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::manifold::{equation, manifold};

    #[test]
    fn two_cycle_from_printed_start() {
        let eq = equation(1).unwrap();
        let seq = eq.sequence_float(&[11.0, 25.0, 34.0], 1000).unwrap();
        let c = extract_limit_cycle(&seq, &manifold(1).unwrap()).unwrap();
        assert!((c.params[0] - 0.9348089961).abs() < 1e-8, "{c:?}");
        assert!(c.deviation <= 1e-8);
    }

    #[test]
    fn short_or_drifting_input() {
        let m = manifold(1).unwrap();
        assert!(extract_limit_cycle(&[0.5, 0.5], &m).is_err());
        let seq = [0.1, 0.9, 0.2, 0.8, 0.3, 0.7];
        assert!(matches!(extract_limit_cycle(&seq, &m), Err(Error::NotConverged { .. })));
    }
}
