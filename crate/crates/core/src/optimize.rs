//! Derivative-free local minimization (Nelder-Mead simplex descent).

/// Stop when the simplex diameter falls below this.
pub const SIMPLEX_TOL: f64 = 1e-9;
/// Evaluation cap per minimization, restarts included.
pub const MAX_EVALS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

/// Minimizes `f` from `start` with initial simplex edge `step`, restarting
/// from the best vertex until a restart no longer improves the value.
///
/// Non-finite values are treated as `+inf`, so `f` may encode box
/// constraints by returning `NaN` outside the feasible set.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(f: F, start: &[f64], step: f64) -> Minimum {
    let mut best = Minimum {
        x: start.to_vec(),
        value: clean(f(start)),
        evals: 1,
    };
    let mut step = step;
    loop {
        let before = best.value;
        let run = simplex_run(&f, &best.x, step, MAX_EVALS - best.evals);
        best.evals += run.evals;
        if run.value <= best.value {
            best.x = run.x;
            best.value = run.value;
        }
        if best.evals >= MAX_EVALS || !(best.value < before) {
            return best;
        }
        step = (step * 0.5).max(1e-6);
    }
}

fn clean(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

fn simplex_run<F: Fn(&[f64]) -> f64>(f: &F, start: &[f64], step: f64, budget: usize) -> Minimum {
    let n = start.len();
    let mut evals = 0;
    let eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        clean(f(x))
    };
    let mut pts: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p, &mut evals)).collect();
    while evals < budget {
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = idx.iter().map(|&i| pts[i].clone()).collect();
        vals = idx.iter().map(|&i| vals[i]).collect();
        let diam = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if diam < SIMPLEX_TOL {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| pts[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let xr = along(1.0);
        let fr = eval(&xr, &mut evals);
        if fr < vals[0] {
            let xe = along(2.0);
            let fe = eval(&xe, &mut evals);
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
        } else {
            let (xc, fc) = if fr < vals[n] {
                let xc = along(0.5);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = along(-0.5);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc < vals[n].min(fr) {
                pts[n] = xc;
                vals[n] = fc;
            } else {
                for i in 1..=n {
                    let p: Vec<f64> = pts[i]
                        .iter()
                        .zip(&pts[0])
                        .map(|(a, b)| b + 0.5 * (a - b))
                        .collect();
                    vals[i] = eval(&p, &mut evals);
                    pts[i] = p;
                }
            }
        }
    }
    let i = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    Minimum {
        x: pts[i].clone(),
        value: vals[i],
        evals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let m = nelder_mead(f, &[-1.2, 1.0], 0.5);
        assert!((m.x[0] - 1.0).abs() < 1e-4 && (m.x[1] - 1.0).abs() < 1e-4, "{m:?}");
    }

    #[test]
    fn respects_nan_walls() {
        let f = |x: &[f64]| if x[0] < 2.0 { f64::NAN } else { x[0] };
        let m = nelder_mead(f, &[3.0], 0.5);
        assert!(m.x[0] >= 2.0 && m.value < 2.001);
    }
}
