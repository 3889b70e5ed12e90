//! Invariant search over the ansatz `P(x[n], ..., x[n-k+1]) / (x[n] ⋯ x[n-k+1])`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Invariant;
use crate::dynsys::DifferenceEquation;
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::poly::monomial::monomials_up_to;
use crate::poly::{Monomial, Polynomial, Scalar};

/// Held-out parameter values checked after interpolation.
pub const HELD_OUT: usize = 3;
/// Minimum number of parameter samples.
pub const MIN_SAMPLES: usize = 8;
const SEED: u64 = 0x1_1a55;

/// `x[n] ⋯ x[n-k+1]` in the equation's context.
pub fn lag_product(eq: &DifferenceEquation) -> Polynomial {
    let ctx = eq.rhs().vars().clone();
    let e: Vec<u32> = (0..ctx.len()).map(|i| u32::from(i < eq.order())).collect();
    Polynomial::monomial(&ctx, Monomial::new(e), Scalar::one())
}

/// `P̃ x[n-k+1] - P D^(dd-1) N` where `P̃ = D^dd P(N/D, x[n], ..., x[n-k+2])`.
///
/// Zero iff `P / ∏x` is invariant, given `dd >= max(1, deg_{x[n]} P)`.
pub fn cleared_identity(eq: &DifferenceEquation, p: &Polynomial, dd: u32) -> Polynomial {
    let k = eq.order();
    let ctx = eq.rhs().vars().clone();
    let n = eq.rhs().num();
    let d = eq.rhs().den();
    let pow_table = |q: &Polynomial| {
        let mut t = vec![Polynomial::one(&ctx)];
        for i in 1..=dd as usize {
            let next = &t[i - 1] * q;
            t.push(next);
        }
        t
    };
    let np = pow_table(n);
    let dp = pow_table(d);
    let mut shifted = Polynomial::zero(&ctx);
    for (m, c) in p.terms() {
        let ex = m.exponents();
        let e0 = ex[0];
        let mut moved = ex.to_vec();
        moved[..k - 1].copy_from_slice(&ex[1..k]);
        moved[k - 1] = 0;
        let t = &(&np[e0 as usize] * &dp[(dd - e0) as usize]).mul_monomial(&Monomial::new(moved), c);
        shifted = &shifted + t;
    }
    let last = Polynomial::var(&ctx, k - 1);
    &(&shifted * &last) - &(&(p * &dp[dd as usize - 1]) * n)
}

fn ansatz(k: usize, nparams: usize, d: u32) -> Vec<Monomial> {
    let mut ms: Vec<Monomial> = monomials_up_to(k, d)
        .into_iter()
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e.extend(std::iter::repeat(0).take(nparams));
            Monomial::new(e)
        })
        .collect();
    ms.reverse();
    ms
}

/// Nullspace of the cleared identity over a parameter-free equation, with
/// the columns that are identically zero (invariant by themselves) removed.
fn solve_instance(eq: &DifferenceEquation, basis: &[Monomial], d: u32) -> (Vec<usize>, Vec<Vec<Scalar>>) {
    let ctx = eq.rhs().vars().clone();
    let columns: Vec<Polynomial> = basis
        .iter()
        .map(|m| cleared_identity(eq, &Polynomial::monomial(&ctx, m.clone(), Scalar::one()), d))
        .collect();
    let kept: Vec<usize> = (0..basis.len()).filter(|&j| !columns[j].is_zero()).collect();
    let mut rows: BTreeMap<Monomial, Vec<Scalar>> = BTreeMap::new();
    for (jj, &j) in kept.iter().enumerate() {
        for (m, c) in columns[j].terms() {
            rows.entry(m.clone()).or_insert_with(|| vec![Scalar::zero(); kept.len()])[jj] = c.clone();
        }
    }
    let a: Vec<Vec<Scalar>> = rows.into_values().collect();
    let null = nullspace(&a, kept.len());
    (kept, null)
}

/// Invariants `P / ∏x` with `deg P <= d`, excluding the constant one.
///
/// With a parameter the coefficients are interpolated from instances at
/// random rational values, checked at `HELD_OUT` further values, then the
/// result is verified symbolically.
pub fn find_invariant(eq: &DifferenceEquation, d: u32) -> Result<Vec<Invariant>> {
    if d == 0 {
        return Err(Error::InvalidArgument("ansatz degree must be at least 1".into()));
    }
    let k = eq.order();
    let np = eq.params().len();
    let basis = ansatz(k, np, d);
    let ctx = eq.rhs().vars().clone();
    let trivial = lag_product(eq);
    let raw: Vec<Polynomial> = match np {
        0 => {
            let (kept, null) = solve_instance(eq, &basis, d);
            null.iter()
                .map(|v| {
                    Polynomial::from_terms(&ctx, kept.iter().zip(v).map(|(&j, c)| (basis[j].clone(), c.clone())))
                })
                .collect()
        }
        1 => interpolate(eq, &basis, d)?,
        _ => {
            return Err(Error::InvalidArgument(
                "invariant search supports at most one parameter".into(),
            ))
        }
    };
    let mut out = Vec::new();
    for p in raw {
        if p.is_zero() || p == trivial {
            continue;
        }
        let p = super::display::friendly_shift(eq, &p).unwrap_or(p);
        let inv = Invariant::new(eq, normalize(&p), d)?;
        if !super::verify_invariant(eq, &inv) {
            return Err(Error::InterpolationMismatch);
        }
        out.push(inv);
    }
    Ok(out)
}

/// Divides by the rational content and makes the leading coefficient positive.
fn normalize(p: &Polynomial) -> Polynomial {
    let mut c = p.content();
    if p.leading().is_some_and(|(_, lc)| *lc < Scalar::zero()) {
        c = -c;
    }
    p.scale(&c.recip())
}

fn sample_values(count: usize) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out: Vec<Scalar> = Vec::new();
    while out.len() < count {
        let v = Scalar::new(rng.gen_range(2..10_000).into(), rng.gen_range(1..100).into());
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn interpolate(eq: &DifferenceEquation, basis: &[Monomial], d: u32) -> Result<Vec<Polynomial>> {
    let name = eq.params()[0].clone();
    let k = eq.order();
    let n = MIN_SAMPLES.max(basis.len());
    let values = sample_values(n + HELD_OUT);
    let solved: Vec<(Vec<usize>, Vec<Vec<Scalar>>)> = values
        .par_iter()
        .map(|v| {
            let inst = eq.instantiate(&[(name.as_str(), v.clone())])?;
            let lag_basis: Vec<Monomial> = basis.iter().map(|m| Monomial::new(m.exponents()[..k].to_vec())).collect();
            Ok(solve_instance(&inst, &lag_basis, d))
        })
        .collect::<Result<_>>()?;
    let shape = (&solved[0].0, solved[0].1.len());
    if solved.iter().any(|(kept, null)| (kept, null.len()) != shape) {
        return Err(Error::InterpolationMismatch);
    }
    let kept = solved[0].0.clone();
    let dim = solved[0].1.len();
    let ctx = eq.rhs().vars().clone();
    let mut out = Vec::new();
    for b in 0..dim {
        let mut p = Polynomial::zero(&ctx);
        for (jj, &j) in kept.iter().enumerate() {
            let ys: Vec<Scalar> = solved[..n].iter().map(|(_, null)| null[b][jj].clone()).collect();
            let coeffs = newton_interpolate(&values[..n], &ys);
            for (h, hv) in values[n..].iter().enumerate() {
                if eval_uni(&coeffs, hv) != solved[n + h].1[b][jj] {
                    return Err(Error::InterpolationMismatch);
                }
            }
            for (e, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut ex = basis[j].exponents().to_vec();
                ex[k] = e as u32;
                p = &p + &Polynomial::monomial(&ctx, Monomial::new(ex), c.clone());
            }
        }
        out.push(p);
    }
    Ok(out)
}

/// Monomial-basis coefficients of the interpolating polynomial.
fn newton_interpolate(xs: &[Scalar], ys: &[Scalar]) -> Vec<Scalar> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut coeffs = vec![Scalar::zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Scalar::zero(); n];
        for e in 0..n {
            if coeffs[e].is_zero() {
                continue;
            }
            if e + 1 < n {
                next[e + 1] += &coeffs[e];
            }
            next[e] -= &coeffs[e] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

fn eval_uni(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::int;

    #[test]
    fn interpolation_recovers_cubic() {
        let xs: Vec<Scalar> = (1..6).map(int).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| x * x * x - int(2) * x + int(7)).collect();
        let c = newton_interpolate(&xs, &ys);
        assert_eq!(c, vec![int(7), int(-2), int(0), int(1)]);
    }

    #[test]
    fn ansatz_size() {
        assert_eq!(ansatz(2, 0, 3).len(), 10);
        assert_eq!(ansatz(3, 1, 4).len(), 35);
    }

    #[test]
    fn fibonacci_has_none() {
        let eq = DifferenceEquation::parse("x[n+1] = x[n]+x[n-1]", None).unwrap();
        for d in 1..=3 {
            assert!(find_invariant(&eq, d).unwrap().is_empty());
        }
    }
}
