//! Sampling plus local minimization: evidence, not proof.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::objective::ContractionObjective;
use crate::optimize::nelder_mead;
use crate::poly::Polynomial;

/// Sample coordinates are `10^u` with `u` uniform in this range.
pub const LOG10_RANGE: (f64, f64) = (-3.0, 3.0);
pub const DEFAULT_EPSILON: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemiVerdict {
    Evidence,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemiEvidence {
    pub verdict: SemiVerdict,
    pub seed: u64,
    pub samples: usize,
    pub starts: usize,
    pub epsilon: f64,
    /// Median `|numerator|` over the samples.
    pub scale: f64,
    pub worst_value: f64,
    pub worst_point: Vec<f64>,
    pub minima: Vec<f64>,
}

pub fn log_uniform_point(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    (0..k)
        .map(|_| 10f64.powf(rng.gen_range(LOG10_RANGE.0..LOG10_RANGE.1)))
        .collect()
}

pub fn prove_positive_semirigorous(
    obj: &ContractionObjective,
    samples: usize,
    starts: usize,
    epsilon: f64,
    seed: u64,
) -> SemiEvidence {
    semirigorous_polynomial(&obj.numerator, samples, starts, epsilon, seed)
}

/// Checks `p >= -epsilon * scale` on log-uniform samples and at the ends of
/// `starts` simplex descents run in log coordinates.
pub fn semirigorous_polynomial(
    p: &Polynomial,
    samples: usize,
    starts: usize,
    epsilon: f64,
    seed: u64,
) -> SemiEvidence {
    let k = p.nvars();
    let f = p.compile::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<f64>> = (0..samples).map(|_| log_uniform_point(&mut rng, k)).collect();
    let vals: Vec<f64> = pts.par_iter().map(|x| f.eval(x)).collect();
    let mut mags: Vec<f64> = vals.iter().map(|v| v.abs()).collect();
    mags.sort_by(f64::total_cmp);
    let scale = if mags.is_empty() { 0.0 } else { mags[mags.len() / 2] };

    let start_pts: Vec<Vec<f64>> = (0..starts)
        .map(|_| {
            (0..k)
                .map(|_| rng.gen_range(LOG10_RANGE.0..LOG10_RANGE.1))
                .collect()
        })
        .collect();
    let runs: Vec<(Vec<f64>, f64)> = start_pts
        .par_iter()
        .map(|u0| {
            let m = nelder_mead(
                |u: &[f64]| {
                    if u.iter().any(|&v| v < LOG10_RANGE.0 || v > LOG10_RANGE.1) {
                        return f64::NAN;
                    }
                    let x: Vec<f64> = u.iter().map(|&v| 10f64.powf(v)).collect();
                    f.eval(&x)
                },
                u0,
                0.5,
            );
            (m.x.iter().map(|&v| 10f64.powf(v)).collect(), m.value)
        })
        .collect();

    let mut worst_value = f64::INFINITY;
    let mut worst_point = Vec::new();
    for (x, v) in pts.iter().zip(&vals).chain(runs.iter().map(|(x, v)| (x, v))) {
        if *v < worst_value || worst_point.is_empty() {
            worst_value = *v;
            worst_point = x.clone();
        }
    }
    if worst_point.is_empty() {
        worst_value = 0.0;
    }
    let ok = worst_value.is_finite() && worst_value >= -epsilon * scale;
    SemiEvidence {
        verdict: if ok { SemiVerdict::Evidence } else { SemiVerdict::Fail },
        seed,
        samples,
        starts,
        epsilon,
        scale,
        worst_value,
        worst_point,
        minima: runs.into_iter().map(|(_, v)| v).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars;

    #[test]
    fn zero_polynomial_is_evidence() {
        let p = Polynomial::zero(&vars(&["x", "y"]));
        let e = semirigorous_polynomial(&p, 100, 3, DEFAULT_EPSILON, 1);
        assert_eq!(e.verdict, SemiVerdict::Evidence);
        assert_eq!(e.worst_value, 0.0);
    }

    #[test]
    fn negative_region_is_found() {
        let ctx = vars(&["x"]);
        let x = Polynomial::var(&ctx, 0);
        // (x - 1)^2 - 1/100 dips below zero near 1
        let p = &(&(&x - &Polynomial::one(&ctx)) * &(&x - &Polynomial::one(&ctx)))
            - &Polynomial::constant(&ctx, crate::poly::scalar::ratio(1, 100));
        let e = semirigorous_polynomial(&p, 1000, 5, DEFAULT_EPSILON, 2);
        assert_eq!(e.verdict, SemiVerdict::Fail);
        assert!((e.worst_point[0] - 1.0).abs() < 0.1);
    }
}
