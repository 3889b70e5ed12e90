use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::objective::build_objective;
use super::replay::replay;
use super::rigorous::{prove_positive_rigorous, Positivity, DEFAULT_BOX_BUDGET};
use super::semi::{log_uniform_point, prove_positive_semirigorous, SemiEvidence, SemiVerdict};
use crate::dynsys::{System, Transformation};
use crate::equilibria::fixed_points::DEDUP_TOL;
use crate::equilibria::stability::local_stability;
use crate::equilibria::{diagonal_equilibria, positive_fixed_points, FixedPoint, Verdict};
use crate::error::{Error, Result};
use crate::poly::rational::CompiledRational;
use crate::poly::scalar::{from_f64, pow2_inv, ratio, simplest_within, to_f64};
use crate::poly::Scalar;

/// Orbit segments sampled by the contraction prefilter for each `r`.
pub const PREFILTER_SEGMENTS: usize = 200;
/// Orbit tails must settle this closely to be called convergent.
pub const SETTLE_TOL: f64 = 1e-9;
/// Limits from different starts must agree this closely.
pub const AGREE_TOL: f64 = 1e-6;

/// Common limit of `k2` random float orbits of length `k1`, if they all
/// settle and agree.
pub fn conjecture_global(map: &Transformation, k1: usize, k2: usize, seed: u64) -> Option<Vec<f64>> {
    if k1 < 2 || k2 == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut limits: Vec<Vec<f64>> = Vec::with_capacity(k2);
    for _ in 0..k2 {
        let init: Vec<f64> = (0..map.dim())
            .map(|_| 10f64.powf(rng.gen_range(-2.0..2.0)))
            .collect();
        let orbit = map.orbit_float(&init, k1 - 1).ok()?;
        let n = orbit.states.len();
        let (a, b) = (&orbit.states[n - 1], &orbit.states[n - 2]);
        if a.iter().zip(b).any(|(x, y)| (x - y).abs() > SETTLE_TOL) {
            return None;
        }
        limits.push(a.clone());
    }
    let first = &limits[0];
    limits
        .iter()
        .all(|l| l.iter().zip(first).all(|(x, y)| (x - y).abs() <= AGREE_TOL))
        .then(|| first.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofMode {
    Rigorous,
    SemiRigorous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertVerdict {
    Proved,
    Evidence,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GsOptions {
    pub max_r: usize,
    pub mode: ProofMode,
    #[serde(with = "crate::serde_scalar")]
    pub alpha: Scalar,
    pub seed: u64,
    pub samples: usize,
    pub starts: usize,
    pub epsilon: f64,
    pub box_budget: usize,
    pub segments: usize,
}

impl Default for GsOptions {
    fn default() -> Self {
        GsOptions {
            max_r: 6,
            mode: ProofMode::SemiRigorous,
            alpha: ratio(101, 100),
            seed: 0,
            samples: 10_000,
            starts: 20,
            epsilon: super::semi::DEFAULT_EPSILON,
            box_budget: DEFAULT_BOX_BUDGET,
            segments: PREFILTER_SEGMENTS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prefilter {
    pub segments: usize,
    /// Largest `α|Tʳx - x̄|² / |x - x̄|²` seen; infinite if an orbit failed.
    pub worst_ratio: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "prover", rename_all = "snake_case")]
pub enum Outcome {
    Rigorous {
        result: Positivity,
        /// Result of the independent exact replay, when there was a proof.
        replayed: Option<std::result::Result<(), String>>,
    },
    Semi(SemiEvidence),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub r: usize,
    pub prefilter: Prefilter,
    pub outcome: Option<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: ProofMode,
    pub system: String,
    pub fixed_point: Vec<f64>,
    #[serde(with = "crate::serde_scalar::vec")]
    pub fixed_point_rational: Vec<Scalar>,
    /// Whether `fixed_point_rational` is the fixed point itself rather than
    /// an approximation.
    pub fixed_point_exact: bool,
    pub spectral_radius: f64,
    pub r: Option<usize>,
    #[serde(with = "crate::serde_scalar")]
    pub alpha: Scalar,
    pub verdict: CertVerdict,
    pub options: GsOptions,
    pub attempts: Vec<Attempt>,
}

struct Target {
    map: Transformation,
    coords: Vec<f64>,
    exact_coords: Vec<Scalar>,
    exact: bool,
}

fn locate(system: &System, seed: u64) -> Result<Target> {
    let map = system.to_map();
    match system {
        System::Equation(eq) => {
            let d = diagonal_equilibria(eq)?;
            let pos: Vec<_> = d.roots.iter().filter(|r| r.positive).collect();
            if pos.len() != 1 {
                return Err(Error::NoStableFixedPoint(format!(
                    "{} positive equilibria",
                    pos.len()
                )));
            }
            let (q, exact) = match pos[0].witness.rational_value() {
                Some(q) => (q, true),
                None => {
                    let w = pos[0].witness.refined(&pow2_inv(100));
                    ((&w.lo + &w.hi) / Scalar::from_integer(2.into()), false)
                }
            };
            Ok(Target {
                coords: vec![pos[0].value; eq.order()],
                exact_coords: vec![q; eq.order()],
                exact,
                map,
            })
        }
        System::Map(m) => {
            let s = positive_fixed_points(m, 200, seed, DEDUP_TOL)?;
            if s.points.len() != 1 {
                return Err(Error::NoStableFixedPoint(format!(
                    "{} positive fixed points found",
                    s.points.len()
                )));
            }
            let coords = s.points[0].coords.clone();
            let bound = BigInt::from(1_000_000);
            let snapped: Vec<Scalar> =
                coords.iter().map(|&c| simplest_within(&from_f64(c), &bound)).collect();
            let fixed = m
                .components()
                .iter()
                .zip(&snapped)
                .all(|(c, q)| c.eval(&snapped).is_ok_and(|v| &v == q));
            let (exact_coords, exact) = if fixed {
                (snapped, true)
            } else {
                (coords.iter().map(|&c| from_f64(c)).collect(), false)
            };
            Ok(Target {
                map,
                coords,
                exact_coords,
                exact,
            })
        }
    }
}

fn prefilter(map: &Transformation, xbar: &[f64], r: usize, alpha: f64, segments: usize, seed: u64) -> Prefilter {
    let fs: Vec<CompiledRational<f64>> = map.components().iter().map(|c| c.compile()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (r as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let dist = |x: &[f64]| -> f64 { x.iter().zip(xbar).map(|(a, b)| (a - b) * (a - b)).sum() };
    let mut worst = 0.0f64;
    for _ in 0..segments {
        let x0 = log_uniform_point(&mut rng, map.dim());
        let mut x = x0.clone();
        let mut ok = true;
        for _ in 0..r {
            match fs.iter().map(|f| f.eval(&x)).collect::<Option<Vec<f64>>>() {
                Some(y) if y.iter().all(|v| v.is_finite()) => x = y,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        let ratio = if ok { alpha * dist(&x) / dist(&x0) } else { f64::INFINITY };
        worst = worst.max(ratio);
    }
    Prefilter {
        segments,
        worst_ratio: worst,
        passed: worst <= 1.0,
    }
}

/// Searches `r = 1..=max_r` for a contraction certificate of the unique
/// positive fixed point.
///
/// A point whose linearization is marginal passes the precondition; the
/// search then fails for every `r` because no contraction exists.
pub fn prove_global_stability(system: &System, opts: &GsOptions) -> Result<Certificate> {
    if opts.max_r == 0 {
        return Err(Error::InvalidArgument("max-r must be at least 1".into()));
    }
    if opts.alpha <= ratio(1, 1) {
        return Err(Error::InvalidArgument("alpha must exceed 1".into()));
    }
    let t = locate(system, opts.seed)?;
    let fp = FixedPoint::new(&t.map, t.coords.clone(), None);
    let rep = local_stability(&t.map, &fp)?;
    if rep.verdict == Verdict::Unstable {
        return Err(Error::NoStableFixedPoint(format!(
            "spectral radius {} at the positive fixed point",
            rep.spectral_radius
        )));
    }
    let alpha_f = to_f64(&opts.alpha);
    let mut attempts = Vec::new();
    let mut found = None;
    for r in 1..=opts.max_r {
        let pf = prefilter(&t.map, &t.coords, r, alpha_f, opts.segments, opts.seed);
        if !pf.passed {
            attempts.push(Attempt { r, prefilter: pf, outcome: None });
            continue;
        }
        let obj = build_objective(&t.map, &t.exact_coords, t.exact, r, &opts.alpha)?;
        let (outcome, verdict) = match opts.mode {
            ProofMode::Rigorous => {
                let result = prove_positive_rigorous(&obj, opts.box_budget);
                let replayed = match &result {
                    Positivity::Proved(p) => Some(replay(&obj.numerator, p)),
                    _ => None,
                };
                let ok = matches!(replayed, Some(Ok(())));
                (Outcome::Rigorous { result, replayed }, ok.then_some(CertVerdict::Proved))
            }
            ProofMode::SemiRigorous => {
                let e = prove_positive_semirigorous(&obj, opts.samples, opts.starts, opts.epsilon, opts.seed);
                let ok = e.verdict == SemiVerdict::Evidence;
                (Outcome::Semi(e), ok.then_some(CertVerdict::Evidence))
            }
        };
        attempts.push(Attempt {
            r,
            prefilter: pf,
            outcome: Some(outcome),
        });
        if let Some(v) = verdict {
            found = Some((r, v));
            break;
        }
    }
    Ok(Certificate {
        kind: opts.mode,
        system: match system {
            System::Equation(e) => e.to_string(),
            System::Map(m) => m.to_string(),
        },
        fixed_point: t.coords,
        fixed_point_rational: t.exact_coords,
        fixed_point_exact: t.exact,
        spectral_radius: rep.spectral_radius,
        r: found.map(|f| f.0),
        alpha: opts.alpha.clone(),
        verdict: found.map_or(CertVerdict::Fail, |f| f.1),
        options: opts.clone(),
        attempts,
    })
}

impl Certificate {
    /// Theorem-style paragraph; it states nothing absent from the JSON form.
    pub fn theorem(&self) -> String {
        let point = self
            .fixed_point
            .iter()
            .map(|v| format!("{v:.10}"))
            .collect::<Vec<_>>()
            .join(", ");
        match (self.verdict, self.r) {
            (CertVerdict::Fail, _) | (_, None) => format!(
                "No contraction certificate was found for {} at ({point}) with alpha = {} and r <= {}. \
                 This does not show that the fixed point is unstable.",
                self.system, self.alpha, self.options.max_r
            ),
            (v, Some(r)) => {
                let how = match v {
                    CertVerdict::Proved => format!(
                        "proved rigorously by interval branch and bound, replayed in exact rational arithmetic"
                    ),
                    _ => format!(
                        "established semi-rigorously from {} samples and {} local minimizations (seed {}, tolerance {:e})",
                        self.options.samples, self.options.starts, self.options.seed, self.options.epsilon
                    ),
                };
                format!(
                    "Theorem. Every orbit of {} with positive initial conditions converges to the fixed point ({point}). \
                     Proof: with T the map of the system, r = {r} and alpha = {}, the inequality \
                     alpha*|T^{r}(x) - xbar|^2 <= |x - xbar|^2 holds for all positive x; this was {how}.",
                    self.system, self.alpha
                )
            }
        }
    }
}
