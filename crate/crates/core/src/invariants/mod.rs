//! Rational invariants `P / (x[n] ⋯ x[n-k+1])`, their verification, and
//! the orbit bounds they imply.

pub mod display;
pub mod find;

use serde::{Deserialize, Serialize};

use crate::dynsys::DifferenceEquation;
use crate::error::{Error, Result};
use crate::poly::scalar::to_f64;
use crate::poly::{Monomial, Polynomial, Scalar};

pub use find::find_invariant;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Invariant {
    pub order: usize,
    pub degree: u32,
    pub params: Vec<String>,
    /// `P` over `x[n], ..., x[n-k+1]` followed by the parameters.
    #[serde(with = "crate::serde_poly")]
    pub numerator: Polynomial,
    pub factored: Option<String>,
}

impl Invariant {
    pub fn new(eq: &DifferenceEquation, numerator: Polynomial, degree: u32) -> Result<Self> {
        if numerator.vars()[..] != eq.rhs().vars()[..] {
            return Err(Error::ContextMismatch("invariant and equation contexts differ".into()));
        }
        Ok(Invariant {
            order: eq.order(),
            degree,
            params: eq.params().to_vec(),
            factored: display::factored(&numerator, eq.order()),
            numerator,
        })
    }

    pub fn denominator_text(&self) -> String {
        self.numerator.vars()[..self.order].join("*")
    }

    /// Parameters replaced by values; lag variables unchanged.
    pub fn instantiate(&self, values: &[(&str, Scalar)]) -> Result<Polynomial> {
        let ctx = self.numerator.vars();
        let k = self.order;
        let lag_ctx = crate::poly::vars(&ctx[..k]);
        let mut args: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(&lag_ctx, i)).collect();
        for name in &self.params {
            let v = values
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            args.push(Polynomial::constant(&lag_ctx, v.1.clone()));
        }
        Ok(self.numerator.substitute(&args))
    }
}

impl std::fmt::Display for Invariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator_text())
    }
}

/// Exact check that the shifted-minus-original cleared identity vanishes.
pub fn verify_invariant(eq: &DifferenceEquation, inv: &Invariant) -> bool {
    if inv.numerator.vars()[..] != eq.rhs().vars()[..] {
        return false;
    }
    let dd = inv.numerator.degree_in(0).max(1);
    find::cleared_identity(eq, &inv.numerator, dd).is_zero()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundednessCertificate {
    pub constant: f64,
    /// Per lag variable, `None` when this `P` gives no bound.
    pub upper: Vec<Option<f64>>,
    pub lower: Vec<Option<f64>>,
    /// Bounds valid for every term of the sequence.
    pub sequence_upper: Option<f64>,
    pub sequence_lower: Option<f64>,
}

/// Bounds from `P(x)/∏x = C` with every coefficient of `P` positive.
///
/// `init` is in sequence order (oldest first). The term `α x^(1+e_i)` gives
/// `x_i <= C/α`; a constant term `α₀` gives `∏x >= α₀/C`, hence lower bounds
/// once all other upper bounds are known.
pub fn boundedness_certificate(
    inv: &Invariant,
    values: &[(&str, Scalar)],
    init: &[f64],
) -> Result<BoundednessCertificate> {
    let k = inv.order;
    if init.len() != k || init.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::InvalidArgument(format!("need {k} positive initial values")));
    }
    let p = inv.instantiate(values)?;
    if !p.all_coefficients_positive() {
        return Err(Error::NotPositive);
    }
    let lags: Vec<f64> = init.iter().rev().cloned().collect();
    let c = p.eval::<f64>(&lags) / lags.iter().product::<f64>();
    let upper: Vec<Option<f64>> = (0..k)
        .map(|i| {
            let e: Vec<u32> = (0..k).map(|j| 1 + u32::from(j == i)).collect();
            let a = p.coefficient(&Monomial::new(e));
            (a > Scalar::from_integer(0.into())).then(|| c / to_f64(&a))
        })
        .collect();
    let a0 = to_f64(&p.coefficient(&Monomial::one(k)));
    let lower: Vec<Option<f64>> = (0..k)
        .map(|i| {
            if a0 <= 0.0 {
                return None;
            }
            let mut others = 1.0;
            for (j, u) in upper.iter().enumerate() {
                if j != i {
                    others *= (*u)?;
                }
            }
            Some(a0 / (c * others))
        })
        .collect();
    Ok(BoundednessCertificate {
        constant: c,
        sequence_upper: upper.iter().flatten().cloned().reduce(f64::min),
        sequence_lower: lower.iter().flatten().cloned().reduce(f64::max),
        upper,
        lower,
    })
}

/// `max |I_n - I_0| / |I_0|` along an `n`-step float orbit.
pub fn invariant_drift(
    eq: &DifferenceEquation,
    inv: &Invariant,
    values: &[(&str, Scalar)],
    init: &[f64],
    n: usize,
) -> Result<f64> {
    let p = inv.instantiate(values)?.compile::<f64>();
    let inst = eq.instantiate(values)?;
    let seq = inst.sequence_float(init, n)?;
    let k = inv.order;
    let value = |w: &[f64]| {
        let lags: Vec<f64> = w.iter().rev().cloned().collect();
        p.eval(&lags) / lags.iter().product::<f64>()
    };
    let i0 = value(&seq[..k]);
    Ok(seq
        .windows(k)
        .map(|w| (value(w) - i0).abs() / i0.abs())
        .fold(0.0, f64::max))
}
