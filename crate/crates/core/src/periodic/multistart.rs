//! Multistart simplex descent on a smoothed objective.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::norm::SmoothedObjective;
use crate::certify::semi::LOG10_RANGE;
use crate::certify::SemiVerdict;
use crate::optimize::nelder_mead;
use crate::poly::scalar::{from_f64, to_f64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalMin {
    pub start: Vec<f64>,
    pub point: Vec<f64>,
    pub value: f64,
    /// Exact value at `point`, computed when the float value is below `-tol`.
    pub exact: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultistartReport {
    pub objective: String,
    pub verdict: SemiVerdict,
    pub seed: u64,
    pub starts: usize,
    pub tol: f64,
    pub minima: Vec<LocalMin>,
    pub worst_value: f64,
    pub worst_point: Vec<f64>,
}

/// Minimizes `obj` from `starts` log-uniform points of `[1e-3, 1e3]^k`,
/// searching in log coordinates inside that box. Evidence iff every local
/// minimum is `>= -tol`; a float minimum below `-tol` is re-evaluated exactly
/// and the exact value decides.
pub fn multistart_certify(obj: &SmoothedObjective, starts: usize, tol: f64, seed: u64) -> MultistartReport {
    let k = obj.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let us: Vec<Vec<f64>> = (0..starts.max(1))
        .map(|_| (0..k).map(|_| rng.gen_range(LOG10_RANGE.0..LOG10_RANGE.1)).collect())
        .collect();
    let minima: Vec<LocalMin> = us
        .par_iter()
        .map(|u0| {
            let f = |u: &[f64]| {
                if u.iter().any(|&v| !(LOG10_RANGE.0..=LOG10_RANGE.1).contains(&v)) {
                    return f64::NAN;
                }
                let x: Vec<f64> = u.iter().map(|&v| 10f64.powf(v)).collect();
                obj.eval_f64(&x).unwrap_or(f64::NAN)
            };
            let m = nelder_mead(f, u0, 0.5);
            let point: Vec<f64> = m.x.iter().map(|&v| 10f64.powf(v)).collect();
            let exact = (m.value < -tol)
                .then(|| {
                    let q: Vec<_> = point.iter().map(|&v| from_f64(v)).collect();
                    obj.eval_exact(&q).map(|v| to_f64(&v))
                })
                .flatten();
            LocalMin {
                start: u0.iter().map(|&v| 10f64.powf(v)).collect(),
                point,
                value: m.value,
                exact,
            }
        })
        .collect();
    let decisive = |m: &LocalMin| m.exact.unwrap_or(m.value);
    let worst = minima
        .iter()
        .min_by(|a, b| decisive(a).total_cmp(&decisive(b)))
        .expect("at least one start");
    let worst_value = decisive(worst);
    MultistartReport {
        objective: obj.label(),
        verdict: if worst_value >= -tol {
            SemiVerdict::Evidence
        } else {
            SemiVerdict::Fail
        },
        seed,
        starts: starts.max(1),
        tol,
        worst_point: worst.point.clone(),
        worst_value,
        minima,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::norm::{build_smoothed_objective, residual_norm, ResidualKind};

    #[test]
    fn trivial_objective_is_evidence() {
        let n = residual_norm(1, ResidualKind::Simple).unwrap();
        let o = build_smoothed_objective(&n, 0, 2, 2).unwrap();
        let r = multistart_certify(&o, 4, 1e-6, 1);
        assert_eq!(r.verdict, SemiVerdict::Evidence);
        assert_eq!(r.minima.len(), 4);
    }

    #[test]
    fn negative_cell_fails_with_exact_witness() {
        let n = residual_norm(1, ResidualKind::Simple).unwrap();
        let o = build_smoothed_objective(&n, 0, 0, 4)
            .unwrap()
            .perturbed(&crate::poly::scalar::ratio(1, 100));
        let r = multistart_certify(&o, 8, 1e-6, 3);
        assert_eq!(r.verdict, SemiVerdict::Fail);
        let w = r.minima.iter().find(|m| m.exact.is_some()).unwrap();
        assert!(w.exact.unwrap() < -1e-3);
    }
}
