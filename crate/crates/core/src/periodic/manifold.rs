//! The four third-order equations with periodic limits and their cycles.

use serde::{Deserialize, Serialize};

use crate::dynsys::DifferenceEquation;
use crate::error::{Error, Result};
use crate::poly::parse::parse_rational_in;
use crate::poly::{vars, RationalFunction};

pub const EQUATIONS: [&str; 4] = [
    "x[n+1] = x[n-1]/(x[n-1]+x[n-2])",
    "x[n+1] = (x[n]+x[n-2])/x[n-1]",
    "x[n+1] = (1+x[n-2])/x[n]",
    "x[n+1] = (1+x[n])/(x[n-1]+x[n-2])",
];

const PRINTED: [&[&str]; 4] = [
    &["phi", "1-phi"],
    &["phi", "psi", "(phi+psi^2)/(phi*psi-1)", "(phi^2+psi)/(phi*psi-1)"],
    &["phi", "psi", "(1+phi)/(phi*psi-1)", "phi*psi-1", "(1+psi)/(phi*psi-1)"],
    &["phi", "psi", "phi/psi", "1/phi", "1/psi", "phi/psi"],
];

/// Entry 3 of the printed six-cycle fails the recurrence; this one does not.
const SIX_CYCLE: [&str; 6] = ["phi", "psi", "psi/phi", "1/phi", "1/psi", "phi/psi"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicManifold {
    pub id: usize,
    pub period: usize,
    pub params: Vec<String>,
    /// Cycle entries as written, in the parameters.
    pub cycle_text: Vec<String>,
    #[serde(skip)]
    pub cycle: Vec<RationalFunction>,
    /// `φψ > 1` is required.
    pub needs_product_above_one: bool,
    /// Whether the printed form satisfied the recurrence.
    pub printed_valid: bool,
    pub printed_text: Vec<String>,
}

pub fn equation(id: usize) -> Result<DifferenceEquation> {
    check_id(id)?;
    DifferenceEquation::parse(EQUATIONS[id - 1], None)
}

fn check_id(id: usize) -> Result<()> {
    if (1..=4).contains(&id) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("conjecture id {id} not in 1..4")))
    }
}

/// True if `c[j+3] = F(c[j+2], c[j+1], c[j])` for every `j`, indices mod `p`.
pub fn cycle_satisfies(eq: &DifferenceEquation, cycle: &[RationalFunction]) -> Result<bool> {
    let p = cycle.len();
    let k = eq.order();
    for j in 0..p {
        let subs: Vec<RationalFunction> = (0..k).map(|lag| cycle[(j + k - 1 - lag) % p].clone()).collect();
        let next = eq.rhs().compose(&subs)?;
        if !next.equal(&cycle[(j + k) % p]) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn manifold(id: usize) -> Result<PeriodicManifold> {
    check_id(id)?;
    let eq = equation(id)?;
    let params: Vec<String> = if id == 1 { vec!["phi".into()] } else { vec!["phi".into(), "psi".into()] };
    let ctx = vars(&params);
    let parse = |texts: &[&str]| -> Result<Vec<RationalFunction>> {
        texts.iter().map(|t| parse_rational_in(&ctx, t)).collect()
    };
    let printed = parse(PRINTED[id - 1])?;
    let printed_valid = cycle_satisfies(&eq, &printed)?;
    let texts: Vec<&str> = if printed_valid { PRINTED[id - 1].to_vec() } else { SIX_CYCLE.to_vec() };
    let cycle = if printed_valid { printed } else { parse(&texts)? };
    if !cycle_satisfies(&eq, &cycle)? {
        return Err(Error::InvalidArgument(format!("no valid cycle form for conjecture {id}")));
    }
    Ok(PeriodicManifold {
        id,
        period: cycle.len(),
        params,
        cycle_text: texts.iter().map(|s| s.to_string()).collect(),
        cycle,
        needs_product_above_one: id == 2 || id == 3,
        printed_valid,
        printed_text: PRINTED[id - 1].iter().map(|s| s.to_string()).collect(),
    })
}

impl PeriodicManifold {
    /// Cycle values at a parameter point; `None` at a pole.
    pub fn eval(&self, params: &[f64]) -> Option<Vec<f64>> {
        self.cycle.iter().map(|c| c.eval(params).ok()).collect()
    }

    /// First `k` entries starting at phase `j`: a state on the cycle.
    pub fn state(&self, params: &[f64], phase: usize, k: usize) -> Option<Vec<f64>> {
        let c = self.eval(params)?;
        Some((0..k).map(|i| c[(phase + i) % self.period]).collect())
    }

    pub fn constraint_holds(&self, params: &[f64]) -> bool {
        !self.needs_product_above_one || params[0] * params[1] > 1.0
    }
}
