//! Numeric fixed points by damped Newton from many starts.
//!
//! Completeness is not guaranteed: a fixed point whose basin of attraction
//! under Newton misses every start is not found.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::diagonal::{diagonal_equilibria, ExactWitness};
use crate::dynsys::{DifferenceEquation, Transformation};
use crate::error::Result;
use crate::linalg::solve;
use crate::poly::polynomial::CompiledPoly;
use crate::poly::Polynomial;

/// Newton stops after this many iterations per start.
pub const MAX_ITER: usize = 200;
/// Step halvings allowed per iteration.
pub const MAX_HALVINGS: usize = 60;
/// Accepted fixed points satisfy `|T(x) - x|_inf <= RESIDUAL_BOUND`.
pub const RESIDUAL_BOUND: f64 = 1e-8;
/// Default deduplication radius (infinity norm).
pub const DEDUP_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub coords: Vec<f64>,
    pub exact_witness: Option<ExactWitness>,
    pub positive: bool,
    pub residual: f64,
}

impl FixedPoint {
    pub fn new(map: &Transformation, coords: Vec<f64>, exact_witness: Option<ExactWitness>) -> Self {
        let residual = residual(map, &coords).unwrap_or(f64::INFINITY);
        FixedPoint {
            positive: coords.iter().all(|&c| c > 0.0),
            coords,
            exact_witness,
            residual,
        }
    }
}

/// Output of the multistart search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPointSearch {
    pub points: Vec<FixedPoint>,
    /// Set when some solution has a singular `DT - I` (for example a curve of
    /// fixed points); the list then holds deduplicated samples of it.
    pub degenerate: bool,
    pub attempts: usize,
    pub seed: u64,
    pub complete: bool,
}

/// `|T(x) - x|_inf`, or `None` where `T` is undefined.
pub fn residual(map: &Transformation, x: &[f64]) -> Option<f64> {
    let y = map.eval_f64(x)?;
    Some(y.iter().zip(x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// The cleared system `N_i(x) - x_i D_i(x) = 0`. It has the fixed points of
/// `T` among its zeros but no poles, which widens Newton's basins near
/// vanishing denominators.
struct Compiled {
    comps: Vec<CompiledPoly<f64>>,
    jac: Vec<Vec<CompiledPoly<f64>>>,
}

impl Compiled {
    fn new(map: &Transformation) -> Self {
        let ctx = map.vars().clone();
        let cleared: Vec<Polynomial> = map
            .components()
            .iter()
            .enumerate()
            .map(|(i, c)| c.num() - &(&Polynomial::var(&ctx, i) * c.den()))
            .collect();
        Compiled {
            comps: cleared.iter().map(|p| p.compile()).collect(),
            jac: cleared
                .iter()
                .map(|p| (0..map.dim()).map(|j| p.derivative(j).compile()).collect())
                .collect(),
        }
    }

    fn g(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.comps
            .iter()
            .map(|f| Some(f.eval(x)).filter(|v| v.is_finite()))
            .collect()
    }

    fn dg(&self, x: &[f64]) -> Option<Vec<Vec<f64>>> {
        self.jac
            .iter()
            .map(|row| row.iter().map(|e| Some(e.eval(x)).filter(|v| v.is_finite())).collect())
            .collect()
    }
}

fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Newton from one start; returns the point and whether `DT - I` was
/// singular there.
fn newton(c: &Compiled, map: &Transformation, start: Vec<f64>) -> Option<(Vec<f64>, bool)> {
    let mut x = start;
    let mut gx = c.g(&x)?;
    let mut r = norm_inf(&gx);
    for _ in 0..MAX_ITER {
        if r == 0.0 {
            break;
        }
        let j = c.dg(&x)?;
        let rhs: Vec<f64> = gx.iter().map(|v| -v).collect();
        let Some(step) = solve(&j, &rhs) else {
            let fixed = residual(map, &x).is_some_and(|m| m <= RESIDUAL_BOUND);
            return fixed.then_some((x, true));
        };
        if norm_inf(&step) <= 1e-15 * (1.0 + norm_inf(&x)) {
            break;
        }
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let y: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a + t * s).collect();
            if let Some(gy) = c.g(&y) {
                let ry = norm_inf(&gy);
                if ry < r {
                    x = y;
                    gx = gy;
                    r = ry;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted || norm_inf(&x) > 1e12 {
            break;
        }
    }
    if !residual(map, &x).is_some_and(|m| m <= RESIDUAL_BOUND) {
        return None;
    }
    let singular = c
        .dg(&x)
        .map(|j| solve(&j, &vec![1.0; x.len()]).is_none())
        .unwrap_or(true);
    Some((x, singular))
}

/// Start `i` of the multistart: cycles through positive log-uniform,
/// symmetric uniform, wide symmetric uniform and signed log-uniform draws.
fn draw_start(rng: &mut ChaCha8Rng, k: usize, i: usize) -> Vec<f64> {
    (0..k)
        .map(|_| match i % 4 {
            0 => 10f64.powf(rng.gen_range(-2.0..2.0)),
            1 => rng.gen_range(-10.0..10.0),
            2 => rng.gen_range(-100.0..100.0),
            _ => {
                let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                s * 10f64.powf(rng.gen_range(-1.0..3.0))
            }
        })
        .collect()
}

/// Multistart damped Newton on `T(x) - x`, deduplicated within `tol`.
pub fn fixed_points_numeric(
    map: &Transformation,
    attempts: usize,
    seed: u64,
    tol: f64,
) -> Result<FixedPointSearch> {
    let k = map.dim();
    let compiled = Compiled::new(map);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<Vec<f64>> = (0..attempts).map(|i| draw_start(&mut rng, k, i)).collect();
    let found: Vec<Option<(Vec<f64>, bool)>> = starts
        .into_par_iter()
        .map(|s| newton(&compiled, map, s))
        .collect();
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut degenerate = false;
    for (x, singular) in found.into_iter().flatten() {
        // Re-check independently of the solver.
        match residual(map, &x) {
            Some(r) if r <= RESIDUAL_BOUND => {}
            _ => continue,
        }
        degenerate |= singular;
        if !points
            .iter()
            .any(|p| p.iter().zip(&x).all(|(a, b)| (a - b).abs() <= tol))
        {
            points.push(x);
        }
    }
    points.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(FixedPointSearch {
        points: points
            .into_iter()
            .map(|c| FixedPoint::new(map, c, None))
            .collect(),
        degenerate,
        attempts,
        seed,
        complete: false,
    })
}

/// [`fixed_points_numeric`] restricted to points with all coordinates
/// positive.
pub fn positive_fixed_points(
    map: &Transformation,
    attempts: usize,
    seed: u64,
    tol: f64,
) -> Result<FixedPointSearch> {
    let mut s = fixed_points_numeric(map, attempts, seed, tol)?;
    s.points.retain(|p| p.positive);
    Ok(s)
}

/// Positive equilibria of an equation, read off the diagonal with exact
/// witnesses, as fixed points of its companion map.
pub fn equation_fixed_points(eq: &DifferenceEquation) -> Result<Vec<FixedPoint>> {
    let d = diagonal_equilibria(eq)?;
    let map = eq.targem();
    Ok(d.roots
        .into_iter()
        .map(|r| FixedPoint::new(&map, vec![r.value; eq.order()], Some(r.witness)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_has_no_fixed_point() {
        let t = Transformation::parse("x+1", None).unwrap();
        let s = fixed_points_numeric(&t, 30, 1, DEDUP_TOL).unwrap();
        assert!(s.points.is_empty());
    }

    #[test]
    fn identity_is_degenerate() {
        let t = Transformation::parse("x, y", None).unwrap();
        let s = fixed_points_numeric(&t, 5, 1, DEDUP_TOL).unwrap();
        assert_eq!(s.points.len(), 5);
        assert!(s.degenerate);
    }

    #[test]
    fn halving_map() {
        let t = Transformation::parse("x/2", None).unwrap();
        let s = fixed_points_numeric(&t, 10, 3, DEDUP_TOL).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!(s.points[0].coords[0].abs() < 1e-12);
        assert!(!s.degenerate);
    }
}
