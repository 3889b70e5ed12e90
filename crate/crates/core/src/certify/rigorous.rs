//! Rigorous positivity of a contraction numerator on the closed orthant.
//!
//! Phase 1 shows the Hessian is positive definite on a small box around the
//! fixed point, where the numerator and its gradient vanish exactly. Phase 2
//! homogenizes the numerator and covers the rest of the orthant, points at
//! infinity included, by the `k + 1` projective charts in which one
//! homogeneous coordinate is the largest and equals 1. Each chart is the unit
//! cube and is searched by interval branch and bound.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::objective::ContractionObjective;
use crate::linalg::{cholesky, invert_lower};
use crate::poly::polynomial::CompiledPoly;
use crate::poly::scalar::{int, ratio, to_f64};
use crate::poly::{Interval, Monomial, Polynomial, Scalar};

pub const DEFAULT_BOX_BUDGET: usize = 1_000_000;
/// First ball radius tried is `2^-RHO_FIRST_BITS`, the largest power of two
/// not above `1e-2`.
pub const RHO_FIRST_BITS: u32 = 7;
pub const RHO_RETRIES: u32 = 10;
/// Boxes narrower than this that still straddle zero stop the search.
pub const MIN_WIDTH: f64 = 1.0 / (1u64 << 40) as f64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallCertificate {
    #[serde(with = "crate::serde_scalar::vec")]
    pub center: Vec<Scalar>,
    #[serde(with = "crate::serde_scalar")]
    pub rho: Scalar,
    /// Lower-triangular `C` with `C H Cᵀ` diagonally dominant on the ball.
    pub congruence: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// The box maps into the Phase 1 ball.
    InBall,
    /// Termwise enclosure on a non-negative box.
    Naive,
    /// Mean-value form around the box midpoint.
    MeanValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Leaf {
    pub chart: usize,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub bound: Bound,
}

/// Ball certificate plus the leaves of the bisection tree of every chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigorousProof {
    pub degree: u32,
    pub ball: BallCertificate,
    pub leaves: Vec<Leaf>,
    pub boxes: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Positivity {
    Proved(RigorousProof),
    Refuted { point: Vec<f64>, value: f64 },
    Unknown { reason: String, boxes: usize },
}

/// Chart `j` of the homogenized polynomial. Chart 0 sets the homogenizing
/// coordinate to 1 (the affine unit cube); chart `j >= 1` sets `x_j = 1` and
/// puts the homogenizing coordinate `s` in slot `j - 1`. The affine point is
/// then `x_i = y_i / s` and `x_j = 1 / s`.
pub fn chart_polynomial(p: &Polynomial, chart: usize) -> Polynomial {
    if chart == 0 {
        return p.clone();
    }
    let d = p.total_degree();
    let slot = chart - 1;
    let mut names: Vec<String> = p.vars().to_vec();
    names[slot] = "s".into();
    let ctx = crate::poly::vars(&names);
    Polynomial::from_terms(
        &ctx,
        p.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e[slot] = d - m.degree();
            (Monomial::new(e), c.clone())
        }),
    )
}

/// Affine enclosure of a chart box, or `None` if it reaches infinity.
fn affine_box(chart: usize, b: &[Interval]) -> Option<Vec<Interval>> {
    if chart == 0 {
        return Some(b.to_vec());
    }
    let slot = chart - 1;
    let s = b[slot];
    if s.lo <= 0.0 {
        return None;
    }
    (0..b.len())
        .map(|i| {
            let top = if i == slot { Interval::point(1.0) } else { b[i] };
            top.checked_div(&s)
        })
        .collect()
}

struct Chart {
    q: CompiledPoly<Interval>,
    grad: Vec<CompiledPoly<Interval>>,
}

enum Decision {
    Leaf(Bound),
    Negative(Vec<f64>, f64),
    Split,
}

struct Ball {
    inner: Vec<Interval>,
}

fn decide(chart: usize, c: &Chart, b: &[Interval], ball: &Ball) -> Decision {
    if let Some(x) = affine_box(chart, b) {
        if x.iter().zip(&ball.inner).all(|(xi, bi)| xi.is_subset_of(bi)) {
            return Decision::Leaf(Bound::InBall);
        }
    }
    if c.q.eval(b).lo > 0.0 {
        return Decision::Leaf(Bound::Naive);
    }
    let mid: Vec<Interval> = b.iter().map(|i| Interval::point(i.mid())).collect();
    let fc = c.q.eval(&mid);
    let mut mv = fc;
    for (i, g) in c.grad.iter().enumerate() {
        mv = mv + g.eval(b) * (b[i] - mid[i]);
    }
    if mv.lo > 0.0 {
        return Decision::Leaf(Bound::MeanValue);
    }
    if fc.hi < 0.0 {
        return Decision::Negative(mid.iter().map(|i| i.lo).collect(), fc.mid());
    }
    Decision::Split
}

/// Bisects the widest side (lowest index on ties) at its midpoint.
pub fn split_box(b: &[Interval]) -> (Vec<Interval>, Vec<Interval>) {
    let mut w = 0;
    for i in 1..b.len() {
        if b[i].width() > b[w].width() {
            w = i;
        }
    }
    let m = b[w].mid();
    let mut left = b.to_vec();
    let mut right = b.to_vec();
    left[w] = Interval::new(b[w].lo, m);
    right[w] = Interval::new(m, b[w].hi);
    (left, right)
}

fn chart_to_affine(chart: usize, y: &[f64]) -> Vec<f64> {
    if chart == 0 {
        return y.to_vec();
    }
    let slot = chart - 1;
    let s = y[slot];
    (0..y.len())
        .map(|i| if i == slot { 1.0 / s } else { y[i] / s })
        .collect()
}

/// Exact spot checks that catch a negative numerator before any search.
fn spot_check(p: &Polynomial, center: &[Scalar]) -> Option<(Vec<f64>, f64)> {
    let k = center.len();
    let mut points: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..k {
        for f in [ratio(1, 2), int(2)] {
            let mut x = center.to_vec();
            x[i] = &x[i] * &f;
            if x[i].is_zero() {
                x[i] = f.clone();
            }
            points.push(x);
        }
    }
    let grid = [ratio(1, 10), int(1), int(10)];
    if k <= 4 {
        let mut idx = vec![0usize; k];
        loop {
            points.push(idx.iter().map(|&i| grid[i].clone()).collect());
            let mut d = 0;
            while d < k && idx[d] == 2 {
                idx[d] = 0;
                d += 1;
            }
            if d == k {
                break;
            }
            idx[d] += 1;
        }
    }
    points.into_iter().find_map(|x| {
        let v = p.eval(&x);
        v.is_negative()
            .then(|| (x.iter().map(to_f64).collect(), to_f64(&v)))
    })
}

/// Phase 1: the largest admissible ball, or a reason for failure.
fn phase_one(p: &Polynomial, center: &[Scalar]) -> Result<(BallCertificate, Ball), String> {
    let k = center.len();
    let xf: Vec<f64> = center.iter().map(to_f64).collect();
    let hess: Vec<Vec<Polynomial>> = (0..k)
        .map(|a| (0..k).map(|b| p.derivative(a).derivative(b)).collect())
        .collect();
    let h0: Vec<Vec<f64>> = hess
        .iter()
        .map(|row| row.iter().map(|h| h.eval::<f64>(&xf)).collect())
        .collect();
    let l = cholesky(&h0).ok_or("Hessian at the fixed point is not positive definite")?;
    let c = invert_lower(&l);
    let hc: Vec<Vec<CompiledPoly<Interval>>> = hess
        .iter()
        .map(|row| row.iter().map(|h| h.compile()).collect())
        .collect();
    for step in 0..RHO_RETRIES {
        let rho = crate::poly::scalar::pow2_inv(RHO_FIRST_BITS + step);
        let lo: Vec<Scalar> = center
            .iter()
            .map(|x| {
                let v = x - &rho;
                if v.is_negative() {
                    int(0)
                } else {
                    v
                }
            })
            .collect();
        let hi: Vec<Scalar> = center.iter().map(|x| x + &rho).collect();
        let outer: Vec<Interval> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| {
                Interval::new(
                    Interval::from_scalar(a).lo.max(0.0),
                    Interval::from_scalar(b).hi,
                )
            })
            .collect();
        let h: Vec<Vec<Interval>> = hc
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&outer)).collect())
            .collect();
        if gershgorin_ok(&c, &h) {
            let inner = lo
                .iter()
                .zip(&hi)
                .map(|(a, b)| {
                    let ia = Interval::from_scalar(a).hi;
                    let ib = Interval::from_scalar(b).lo;
                    Interval::new(ia, ib.max(ia))
                })
                .collect();
            return Ok((
                BallCertificate {
                    center: center.to_vec(),
                    rho,
                    congruence: c,
                },
                Ball { inner },
            ));
        }
    }
    Err("Hessian not provably positive definite on any trial ball".into())
}

fn gershgorin_ok(c: &[Vec<f64>], h: &[Vec<Interval>]) -> bool {
    let k = c.len();
    let m: Vec<Vec<Interval>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut acc = Interval::point(0.0);
                    for a in 0..k {
                        for b in 0..k {
                            acc = acc + Interval::point(c[i][a]) * h[a][b] * Interval::point(c[j][b]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    (0..k).all(|i| {
        let off: f64 = (0..k).filter(|&j| j != i).map(|j| m[i][j].mag()).sum();
        m[i][i].lo - off > 0.0
    })
}

/// Proves `obj.numerator > 0` on the closed orthant minus the fixed point.
pub fn prove_positive_rigorous(obj: &ContractionObjective, box_budget: usize) -> Positivity {
    prove_polynomial_positive(&obj.numerator, &obj.fixed_point, obj.exact, box_budget)
}

/// [`prove_positive_rigorous`] for a bare polynomial with a known zero.
pub fn prove_polynomial_positive(
    p: &Polynomial,
    center: &[Scalar],
    exact: bool,
    box_budget: usize,
) -> Positivity {
    let unknown = |reason: &str, boxes| Positivity::Unknown {
        reason: reason.to_string(),
        boxes,
    };
    if let Some((point, value)) = spot_check(p, center) {
        return Positivity::Refuted { point, value };
    }
    if !exact {
        return unknown("fixed point is not known exactly", 0);
    }
    let v = p.eval(center);
    if v.is_negative() {
        return Positivity::Refuted {
            point: center.iter().map(to_f64).collect(),
            value: to_f64(&v),
        };
    }
    if !v.is_zero() || (0..center.len()).any(|i| !p.derivative(i).eval(center).is_zero()) {
        return unknown("numerator or its gradient does not vanish at the fixed point", 0);
    }
    let (cert, ball) = match phase_one(p, center) {
        Ok(b) => b,
        Err(reason) => return unknown(&reason, 0),
    };
    let k = center.len();
    let charts: Vec<Chart> = (0..=k)
        .map(|j| {
            let q = chart_polynomial(p, j);
            Chart {
                grad: (0..k).map(|i| q.derivative(i).compile()).collect(),
                q: q.compile(),
            }
        })
        .collect();
    let unit = vec![Interval::new(0.0, 1.0); k];
    let mut frontier: Vec<(usize, Vec<Interval>)> = (0..=k).map(|j| (j, unit.clone())).collect();
    let mut leaves = Vec::new();
    let mut boxes = 0;
    while !frontier.is_empty() {
        boxes += frontier.len();
        if boxes > box_budget {
            return unknown("box budget exhausted", boxes);
        }
        let decisions: Vec<Decision> = frontier
            .par_iter()
            .map(|(j, b)| decide(*j, &charts[*j], b, &ball))
            .collect();
        let mut next = Vec::new();
        for ((j, b), d) in frontier.into_iter().zip(decisions) {
            match d {
                Decision::Leaf(bound) => leaves.push(Leaf {
                    chart: j,
                    lo: b.iter().map(|i| i.lo).collect(),
                    hi: b.iter().map(|i| i.hi).collect(),
                    bound,
                }),
                Decision::Negative(y, value) => {
                    let point = if j > 0 && y[j - 1] <= 0.0 { y } else { chart_to_affine(j, &y) };
                    return Positivity::Refuted { point, value };
                }
                Decision::Split => {
                    if b.iter().all(|i| i.width() < MIN_WIDTH) {
                        let y: Vec<f64> = b.iter().map(|i| i.mid()).collect();
                        return unknown(
                            &format!("search stalled near chart {j} point {y:?}; the numerator may vanish there"),
                            boxes,
                        );
                    }
                    let (l, r) = split_box(&b);
                    next.push((j, l));
                    next.push((j, r));
                }
            }
        }
        frontier = next;
    }
    leaves.sort_by(|a, b| {
        a.chart.cmp(&b.chart).then_with(|| {
            a.lo.iter()
                .zip(&b.lo)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    Positivity::Proved(RigorousProof {
        degree: p.total_degree(),
        ball: cert,
        leaves,
        boxes,
    })
}
