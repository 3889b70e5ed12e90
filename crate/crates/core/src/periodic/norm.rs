//! Residual norms vanishing on a periodic manifold, and smoothed objectives
//! `v(Tᵃx) - v(Tᵇx)`.

use serde::{Deserialize, Serialize};

use super::factored::{compose_polynomial, Factored};
use super::manifold::{equation, PeriodicManifold};
use crate::dynsys::Transformation;
use crate::error::{Error, Result};
use crate::poly::parse::parse_rational_in;
use crate::poly::{Polynomial, RationalFunction, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualKind {
    Euclidean,
    Simple,
    FixedPointResidual,
}

impl std::str::FromStr for ResidualKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(ResidualKind::Euclidean),
            "simple" => Ok(ResidualKind::Simple),
            "fixed_point_residual" | "fixed-point-residual" | "residual" => {
                Ok(ResidualKind::FixedPointResidual)
            }
            other => Err(Error::UnsupportedKind(other.into())),
        }
    }
}

/// One or more non-negative functions on the companion state.
///
/// Euclidean and simple norms are polynomials; the fixed-point residual
/// `|Tᵖx - x|²` is kept implicit and evaluated by iteration.
#[derive(Clone, Debug)]
pub struct ResidualNorm {
    pub id: usize,
    pub kind: ResidualKind,
    pub period: usize,
    pub map: Transformation,
    pub parts: Vec<Polynomial>,
    pub labels: Vec<String>,
}

const EUCLIDEAN: &str = "1+x^2+y^2+z^2-x-2*y-z+x*y-x*z+y*z";

pub fn residual_norm(id: usize, kind: ResidualKind) -> Result<ResidualNorm> {
    let eq = equation(id)?;
    let map = eq.targem();
    let period = super::manifold::manifold(id)?.period;
    let ctx = map.vars().clone();
    let names = ["x", "y", "z"];
    let poly = |text: &str| -> Result<Polynomial> {
        let mut t = text.to_string();
        for (i, n) in names.iter().enumerate() {
            t = replace_word(&t, n, &ctx[i]);
        }
        parse_rational_in(&ctx, &t)?
            .as_polynomial()
            .ok_or_else(|| Error::InvalidArgument("norm must be polynomial".into()))
    };
    let (parts, labels) = match kind {
        ResidualKind::Euclidean if id == 1 => (vec![poly(EUCLIDEAN)?], vec!["v".to_string()]),
        ResidualKind::Simple if id == 1 => (
            vec![poly("(x+y-1)^2")?, poly("(y+z-1)^2")?],
            vec!["v_xy".to_string(), "v_yz".to_string()],
        ),
        ResidualKind::FixedPointResidual => (Vec::new(), vec![format!("w_{period}")]),
        other => {
            return Err(Error::UnsupportedKind(format!(
                "{other:?} norm is only defined for conjecture 1"
            )))
        }
    };
    Ok(ResidualNorm {
        id,
        kind,
        period,
        map,
        parts,
        labels,
    })
}

fn replace_word(text: &str, from: &str, to: &str) -> String {
    let mut out = String::new();
    let chars: Vec<char> = text.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        let alone = (i == 0 || !chars[i - 1].is_alphanumeric())
            && chars.get(i + 1).map_or(true, |n| !n.is_alphanumeric());
        if alone && c.to_string() == from {
            out.push_str(to);
        } else {
            out.push(c);
        }
    }
    out
}

impl ResidualNorm {
    pub fn part_count(&self) -> usize {
        self.labels.len()
    }

    pub fn eval_f64(&self, part: usize, x: &[f64]) -> Option<f64> {
        match self.kind {
            ResidualKind::FixedPointResidual => {
                let mut y = x.to_vec();
                for _ in 0..self.period {
                    y = self.map.eval_f64(&y)?;
                }
                Some(y.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum())
            }
            _ => Some(self.parts[part].eval(x)),
        }
    }

    pub fn eval_exact(&self, part: usize, x: &[Scalar]) -> Option<Scalar> {
        match self.kind {
            ResidualKind::FixedPointResidual => {
                let o = self.map.orbit_exact(x, self.period).ok()?;
                let y = o.last_state();
                Some(y.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum())
            }
            _ => Some(self.parts[part].eval(x)),
        }
    }

    /// The norm as a rational function of the state.
    pub fn symbolic(&self, part: usize) -> Result<RationalFunction> {
        match self.kind {
            ResidualKind::FixedPointResidual => {
                let tp = self.map.power(self.period)?;
                let ctx = self.map.vars().clone();
                let mut acc = RationalFunction::constant(&ctx, Scalar::from_integer(0.into()));
                for (i, c) in tp.components().iter().enumerate() {
                    let d = c - &RationalFunction::var(&ctx, i);
                    acc = &acc + &(&d * &d);
                }
                Ok(acc)
            }
            _ => Ok(RationalFunction::from_poly(self.parts[part].clone())),
        }
    }

    /// True if the norm is identically zero on every phase of the cycle.
    pub fn vanishes_on(&self, m: &PeriodicManifold) -> Result<bool> {
        let k = self.map.dim();
        for part in 0..self.part_count() {
            let v = self.symbolic(part)?;
            for phase in 0..m.period {
                let state: Vec<RationalFunction> =
                    (0..k).map(|i| m.cycle[(phase + i) % m.period].clone()).collect();
                if !v.compose(&state)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `F = v(Tᵃx) - v(Tᵇx)` for one part of a norm.
#[derive(Clone, Debug)]
pub struct SmoothedObjective {
    pub norm: ResidualNorm,
    pub part: usize,
    pub a: usize,
    pub b: usize,
    /// Constant subtracted from `F`; zero unless perturbed.
    pub shift: Scalar,
    /// Cleared form, present for polynomial norms.
    pub cleared: Option<Factored>,
}

pub fn build_smoothed_objective(
    norm: &ResidualNorm,
    part: usize,
    a: usize,
    b: usize,
) -> Result<SmoothedObjective> {
    if a > b {
        return Err(Error::InvalidArgument(format!("offsets need a <= b, got {a} > {b}")));
    }
    if part >= norm.part_count() {
        return Err(Error::InvalidArgument(format!("norm has no part {part}")));
    }
    let cleared = match norm.kind {
        ResidualKind::FixedPointResidual => None,
        _ => {
            let v = &norm.parts[part];
            let at = |r: usize| -> Result<Factored> {
                let tr = norm.map.power(r)?;
                let args: Vec<Factored> = tr.components().iter().map(Factored::from_rational).collect();
                Ok(compose_polynomial(v, &args))
            };
            let f = if a == b {
                Factored::poly(Polynomial::zero(norm.map.vars()))
            } else {
                at(a)?.sub(&at(b)?).reduce()
            };
            if !f.denominator_nonnegative() {
                return Err(Error::IndefiniteDenominator);
            }
            Some(f)
        }
    };
    Ok(SmoothedObjective {
        norm: norm.clone(),
        part,
        a,
        b,
        shift: Scalar::from_integer(0.into()),
        cleared,
    })
}

impl SmoothedObjective {
    pub fn dim(&self) -> usize {
        self.norm.map.dim()
    }

    /// `F - c`.
    pub fn perturbed(&self, c: &Scalar) -> SmoothedObjective {
        let mut out = self.clone();
        out.shift = &self.shift + c;
        out.cleared = self.cleared.as_ref().map(|f| {
            let mut g = f.clone();
            g.num = &f.num - &f.denominator().scale(c);
            g
        });
        out
    }

    /// Float value by iterating the map; `None` at a pole or on overflow.
    pub fn eval_f64(&self, x: &[f64]) -> Option<f64> {
        let shift = crate::poly::scalar::to_f64(&self.shift);
        if self.a == self.b {
            return Some(-shift);
        }
        let mut y = x.to_vec();
        for _ in 0..self.a {
            y = self.norm.map.eval_f64(&y)?;
        }
        let va = self.norm.eval_f64(self.part, &y)?;
        for _ in self.a..self.b {
            y = self.norm.map.eval_f64(&y)?;
        }
        let vb = self.norm.eval_f64(self.part, &y)?;
        let f = va - vb - shift;
        f.is_finite().then_some(f)
    }

    pub fn eval_exact(&self, x: &[Scalar]) -> Option<Scalar> {
        let o = self.norm.map.orbit_exact(x, self.b).ok()?;
        let va = self.norm.eval_exact(self.part, &o.states[self.a])?;
        let vb = self.norm.eval_exact(self.part, &o.states[self.b])?;
        Some(va - vb - &self.shift)
    }

    pub fn label(&self) -> String {
        format!("{}(T^{} x) - {}(T^{} x)", self.norm.labels[self.part], self.a, self.norm.labels[self.part], self.b)
    }
}
