//! Jacobian eigenvalues and the local stability verdict.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fixed_points::FixedPoint;
use crate::dynsys::Transformation;
use crate::error::{Error, Result};

/// Spectral radii within this distance of 1 are reported as marginal.
pub const STABILITY_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Stable,
    Unstable,
    Marginal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub point: FixedPoint,
    /// `(re, im)` pairs, sorted by decreasing real part then imaginary part.
    pub eigenvalues: Vec<(f64, f64)>,
    pub spectral_radius: f64,
    pub verdict: Verdict,
}

pub fn verdict_for(rho: f64, margin: f64) -> Verdict {
    if rho < 1.0 - margin {
        Verdict::Stable
    } else if rho <= 1.0 + margin {
        Verdict::Marginal
    } else {
        Verdict::Unstable
    }
}

/// Float Jacobian of `map` at `x`.
pub fn jacobian_at(map: &Transformation, x: &[f64]) -> Result<Vec<Vec<f64>>> {
    map.jacobian()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, e)| {
                    let v: f64 = e
                        .eval(x)
                        .map_err(|_| Error::JacobianSingularEvaluation { row: i, col: j })?;
                    if v.is_finite() {
                        Ok(v)
                    } else {
                        Err(Error::JacobianSingularEvaluation { row: i, col: j })
                    }
                })
                .collect()
        })
        .collect()
}

pub fn local_stability(map: &Transformation, fp: &FixedPoint) -> Result<StabilityReport> {
    local_stability_with_margin(map, fp, STABILITY_MARGIN)
}

pub fn local_stability_with_margin(
    map: &Transformation,
    fp: &FixedPoint,
    margin: f64,
) -> Result<StabilityReport> {
    let j = jacobian_at(map, &fp.coords)?;
    let mut eig = eigenvalues(&j);
    eig.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    let rho = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(StabilityReport {
        point: fp.clone(),
        eigenvalues: eig.iter().map(|z| (z.re, z.im)).collect(),
        spectral_radius: rho,
        verdict: verdict_for(rho, margin),
    })
}

/// Characteristic polynomial `det(zI - A)` by Faddeev-LeVerrier, as monic
/// coefficients from the leading term down.
pub fn characteristic_polynomial(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut coeffs = vec![1.0];
    let mut m = vec![vec![0.0; n]; n];
    let mut c = 1.0;
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s: f64 = (0..n).map(|l| a[i][l] * m[l][j]).sum();
                if i == j {
                    s += c;
                }
                next[i][j] = s;
            }
        }
        m = next;
        let trace: f64 = (0..n)
            .map(|i| (0..n).map(|l| a[i][l] * m[l][i]).sum::<f64>())
            .sum();
        c = -trace / k as f64;
        coeffs.push(c);
    }
    coeffs
}

/// All complex roots of a monic polynomial (leading term first) by
/// Durand-Kerner iteration followed by Newton polishing.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let eval = |z: Complex64| coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let bound = 1.0 + coeffs[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * bound.min(2.0)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-300, 0.0);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-16 {
            break;
        }
    }
    let deriv: Vec<f64> = coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (n - i) as f64)
        .collect();
    let eval_d = |w: Complex64| deriv.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c);
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = eval_d(*zi);
            if d.norm() == 0.0 {
                break;
            }
            let s = eval(*zi) / d;
            if !s.re.is_finite() || !s.im.is_finite() || s.norm() > 1e-6 * (1.0 + zi.norm()) {
                break;
            }
            *zi -= s;
        }
        // Snap numerically real roots onto the axis.
        if zi.im.abs() <= 1e-12 * (1.0 + zi.re.abs()) {
            zi.im = 0.0;
        }
    }
    z
}

pub fn eigenvalues(a: &[Vec<f64>]) -> Vec<Complex64> {
    polynomial_roots(&characteristic_polynomial(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_of_known_roots() {
        // (z - 0.5)(z^2 + 1)
        let roots = polynomial_roots(&[1.0, -0.5, 1.0, -0.5]);
        let mut mods: Vec<f64> = roots.iter().map(|z| z.norm()).collect();
        mods.sort_by(f64::total_cmp);
        assert!((mods[0] - 0.5).abs() < 1e-12);
        assert!((mods[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_matrix() {
        let a = vec![vec![0.0, -1.0], vec![1.0, 0.0]];
        let e = eigenvalues(&a);
        for z in e {
            assert!((z.norm() - 1.0).abs() < 1e-12 && z.re.abs() < 1e-12);
        }
    }

    #[test]
    fn halving_is_stable() {
        let t = Transformation::parse("x/2", None).unwrap();
        let fp = FixedPoint::new(&t, vec![0.0], None);
        let r = local_stability(&t, &fp).unwrap();
        assert_eq!(r.verdict, Verdict::Stable);
        assert!((r.spectral_radius - 0.5).abs() < 1e-14);
    }

    #[test]
    fn verdict_margins() {
        assert_eq!(verdict_for(1.0 - 1e-7, 1e-6), Verdict::Marginal);
        assert_eq!(verdict_for(0.9, 1e-6), Verdict::Stable);
        assert_eq!(verdict_for(1.1, 1e-6), Verdict::Unstable);
    }

    #[test]
    fn singular_entry_is_reported() {
        let t = Transformation::parse("1/x", None).unwrap();
        let fp = FixedPoint::new(&t, vec![0.0], None);
        assert!(matches!(
            local_stability(&t, &fp),
            Err(Error::JacobianSingularEvaluation { row: 0, col: 0 })
        ));
    }
}
