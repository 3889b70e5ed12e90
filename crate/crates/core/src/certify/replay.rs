//! Independent re-check of a [`RigorousProof`] in exact rational interval
//! arithmetic. Shares no evaluation code with the float prover.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::rigorous::{Bound, RigorousProof};
use crate::poly::scalar::{from_f64, int};
use crate::poly::{Polynomial, Scalar};

#[derive(Clone, Debug)]
struct Iv {
    lo: Scalar,
    hi: Scalar,
}

impl Iv {
    fn point(x: Scalar) -> Iv {
        Iv { lo: x.clone(), hi: x }
    }

    fn add(&self, o: &Iv) -> Iv {
        Iv {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn mul(&self, o: &Iv) -> Iv {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        Iv {
            lo: c.iter().min().unwrap().clone(),
            hi: c.iter().max().unwrap().clone(),
        }
    }

    fn scale(&self, c: &Scalar) -> Iv {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Iv { lo: b, hi: a }
        } else {
            Iv { lo: a, hi: b }
        }
    }

    fn mag(&self) -> Scalar {
        self.lo.abs().max(self.hi.abs())
    }
}

type Terms = Vec<(Vec<u32>, Scalar)>;

fn terms_of(p: &Polynomial) -> Terms {
    p.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect()
}

fn chart_terms(p: &Terms, degree: u32, chart: usize) -> Terms {
    p.iter()
        .map(|(e, c)| {
            let total: u32 = e.iter().sum();
            let mut e = e.clone();
            if chart > 0 {
                e[chart - 1] = degree - total;
            }
            (e, c.clone())
        })
        .collect()
}

fn derive(t: &Terms, i: usize) -> Terms {
    t.iter()
        .filter(|(e, _)| e[i] > 0)
        .map(|(e, c)| {
            let mut e2 = e.clone();
            e2[i] -= 1;
            (e2, c * Scalar::from_integer(e[i].into()))
        })
        .collect()
}

fn monomial_at(e: &[u32], x: &[Scalar]) -> Scalar {
    e.iter()
        .zip(x)
        .fold(int(1), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
}

/// Enclosure on a box with non-negative corners, term by term.
fn range(t: &Terms, lo: &[Scalar], hi: &[Scalar]) -> Iv {
    let mut acc = Iv::point(int(0));
    for (e, c) in t {
        let m = Iv {
            lo: monomial_at(e, lo),
            hi: monomial_at(e, hi),
        };
        acc = acc.add(&m.scale(c));
    }
    acc
}

fn value(t: &Terms, x: &[Scalar]) -> Scalar {
    t.iter().map(|(e, c)| c * monomial_at(e, x)).sum()
}

fn mean_value(t: &Terms, grad: &[Terms], lo: &[Scalar], hi: &[Scalar]) -> Iv {
    let two = int(2);
    let mid: Vec<Scalar> = lo.iter().zip(hi).map(|(a, b)| (a + b) / &two).collect();
    let mut acc = Iv::point(value(t, &mid));
    for (i, g) in grad.iter().enumerate() {
        let d = Iv {
            lo: &lo[i] - &mid[i],
            hi: &hi[i] - &mid[i],
        };
        acc = acc.add(&range(g, lo, hi).mul(&d));
    }
    acc
}

type Key = (usize, Vec<u64>, Vec<u64>);

fn key(chart: usize, lo: &[f64], hi: &[f64]) -> Key {
    (
        chart,
        lo.iter().map(|x| x.to_bits()).collect(),
        hi.iter().map(|x| x.to_bits()).collect(),
    )
}

/// Replays the ball certificate and every leaf; `Err` names the first
/// failing item.
pub fn replay(numerator: &Polynomial, proof: &RigorousProof) -> Result<(), String> {
    let p = terms_of(numerator);
    let k = numerator.nvars();
    let center = &proof.ball.center;
    if center.len() != k {
        return Err("ball center has wrong dimension".into());
    }
    if proof.degree != numerator.total_degree() {
        return Err("proof degree does not match the numerator".into());
    }
    if !value(&p, center).is_zero() || (0..k).any(|i| !value(&derive(&p, i), center).is_zero()) {
        return Err("numerator or gradient does not vanish at the center".into());
    }
    let rho = &proof.ball.rho;
    let blo: Vec<Scalar> = center
        .iter()
        .map(|c| {
            let v = c - rho;
            if v.is_negative() {
                int(0)
            } else {
                v
            }
        })
        .collect();
    let bhi: Vec<Scalar> = center.iter().map(|c| c + rho).collect();

    // Phase 1: C H Cᵀ diagonally dominant over the whole ball.
    let c: Vec<Vec<Scalar>> = proof
        .ball
        .congruence
        .iter()
        .map(|row| row.iter().map(|&v| from_f64(v)).collect())
        .collect();
    let h: Vec<Vec<Iv>> = (0..k)
        .map(|a| (0..k).map(|b| range(&derive(&derive(&p, a), b), &blo, &bhi)).collect())
        .collect();
    for i in 0..k {
        let mut off = int(0);
        let mut diag = Iv::point(int(0));
        for j in 0..k {
            let mut m = Iv::point(int(0));
            for a in 0..k {
                for b in 0..k {
                    m = m.add(&h[a][b].scale(&(&c[i][a] * &c[j][b])));
                }
            }
            if i == j {
                diag = m;
            } else {
                off += m.mag();
            }
        }
        if diag.lo - off <= int(0) {
            return Err(format!("Gershgorin row {i} fails on the ball"));
        }
    }

    // Phase 2: walk the bisection tree of each chart.
    let leaves: HashMap<Key, Bound> = proof
        .leaves
        .iter()
        .map(|l| (key(l.chart, &l.lo, &l.hi), l.bound))
        .collect();
    if leaves.len() != proof.leaves.len() {
        return Err("duplicate leaves".into());
    }
    let mut todo: Vec<(usize, Vec<f64>, Vec<f64>, Bound)> = Vec::new();
    for chart in 0..=k {
        let mut stack = vec![(vec![0.0; k], vec![1.0; k])];
        while let Some((lo, hi)) = stack.pop() {
            if let Some(b) = leaves.get(&key(chart, &lo, &hi)) {
                todo.push((chart, lo, hi, *b));
                continue;
            }
            let mut w = 0;
            for i in 1..k {
                if hi[i] - lo[i] > hi[w] - lo[w] {
                    w = i;
                }
            }
            if hi[w] - lo[w] < 1e-18 {
                return Err(format!("chart {chart} is not covered near {lo:?}"));
            }
            let m = 0.5 * (lo[w] + hi[w]);
            let (mut l2, mut h1) = (lo.clone(), hi.clone());
            h1[w] = m;
            l2[w] = m;
            stack.push((l2, hi));
            stack.push((lo, h1));
        }
    }
    if todo.len() != proof.leaves.len() {
        return Err("proof has leaves outside the bisection tree".into());
    }
    let charts: Vec<(Terms, Vec<Terms>)> = (0..=k)
        .map(|j| {
            let t = chart_terms(&p, proof.degree, j);
            let g = (0..k).map(|i| derive(&t, i)).collect();
            (t, g)
        })
        .collect();
    todo.par_iter().try_for_each(|(chart, lo, hi, bound)| {
        let lo: Vec<Scalar> = lo.iter().map(|&v| from_f64(v)).collect();
        let hi: Vec<Scalar> = hi.iter().map(|&v| from_f64(v)).collect();
        let ok = match bound {
            Bound::InBall => in_ball(*chart, &lo, &hi, &blo, &bhi),
            Bound::Naive => range(&charts[*chart].0, &lo, &hi).lo.is_positive(),
            Bound::MeanValue => {
                mean_value(&charts[*chart].0, &charts[*chart].1, &lo, &hi).lo.is_positive()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(format!("leaf in chart {chart} at {lo:?} fails its {bound:?} check"))
        }
    })
}

fn in_ball(chart: usize, lo: &[Scalar], hi: &[Scalar], blo: &[Scalar], bhi: &[Scalar]) -> bool {
    let k = lo.len();
    let (xlo, xhi): (Vec<Scalar>, Vec<Scalar>) = if chart == 0 {
        (lo.to_vec(), hi.to_vec())
    } else {
        let slot = chart - 1;
        if !lo[slot].is_positive() {
            return false;
        }
        (0..k)
            .map(|i| {
                if i == slot {
                    (int(1) / &hi[slot], int(1) / &lo[slot])
                } else {
                    (&lo[i] / &hi[slot], &hi[i] / &lo[slot])
                }
            })
            .unzip()
    };
    (0..k).all(|i| xlo[i] >= blo[i] && xhi[i] <= bhi[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::rigorous::{prove_polynomial_positive, Positivity};
    use crate::poly::vars;

    #[test]
    fn replays_and_rejects_tampering() {
        let ctx = vars(&["x", "y"]);
        let x = &Polynomial::var(&ctx, 0) - &Polynomial::one(&ctx);
        let y = &Polynomial::var(&ctx, 1) - &Polynomial::one(&ctx);
        // x^2 + xy + y^2 around (1, 1)
        let p = &(&(&x * &x) + &(&x * &y)) + &(&y * &y);
        let Positivity::Proved(proof) = prove_polynomial_positive(&p, &[int(1), int(1)], true, 100_000)
        else {
            panic!("not proved")
        };
        replay(&p, &proof).unwrap();
        let mut bad = proof.clone();
        bad.leaves.pop();
        assert!(replay(&p, &bad).is_err());
        let shifted = &p - &Polynomial::constant(&ctx, crate::poly::scalar::ratio(1, 1000));
        assert!(replay(&shifted, &proof).is_err());
    }
}
