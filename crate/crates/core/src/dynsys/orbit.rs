//! Orbits in exact, float and symbolic arithmetic.

use serde::{Deserialize, Serialize};

use super::system::{DifferenceEquation, Transformation};
use crate::error::{Error, Result};
use crate::poly::polynomial::vars;
use crate::poly::rational::CompiledRational;
use crate::poly::{RationalFunction, Scalar};

/// Float coordinates must stay within this magnitude range (zero allowed).
pub const FLOAT_RANGE: (f64, f64) = (1e-300, 1e300);

/// Default term budget for symbolic orbits.
pub const SYMBOLIC_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
    Symbolic,
}

/// An orbit in both views.
///
/// For an equation of order `k`, `sequence` holds `x_0, ..., x_{N+k-1}` and
/// `states[j]` is the window `(x_j, ..., x_{j+k-1})`. A bare map orbit has
/// no scalar sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit<T> {
    pub dim: usize,
    pub states: Vec<Vec<T>>,
    pub sequence: Option<Vec<T>>,
}

impl<T: Clone> Orbit<T> {
    fn from_sequence(k: usize, seq: Vec<T>) -> Self {
        let states = seq.windows(k).map(|w| w.to_vec()).collect();
        Orbit {
            dim: k,
            states,
            sequence: Some(seq),
        }
    }

    pub fn last_state(&self) -> &[T] {
        self.states.last().expect("orbit has at least its initial state")
    }

    /// Last `n` scalars of the sequence view.
    pub fn tail(&self, n: usize) -> Option<&[T]> {
        let s = self.sequence.as_ref()?;
        Some(&s[s.len().saturating_sub(n)..])
    }
}

fn check_init<T>(init: &[T], k: usize) -> Result<()> {
    if init.len() != k {
        return Err(Error::InvalidArgument(format!(
            "initial condition has {} entries, expected {k}",
            init.len()
        )));
    }
    Ok(())
}

fn no_params(params: &[String]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "parameters {params:?} must be instantiated for numeric orbits"
        )))
    }
}

fn check_float(v: f64, step: usize) -> Result<f64> {
    let a = v.abs();
    if !v.is_finite() || a > FLOAT_RANGE.1 || (a != 0.0 && a < FLOAT_RANGE.0) {
        return Err(Error::Overflow { step });
    }
    Ok(v)
}

impl DifferenceEquation {
    /// `N + k` floats starting from `init = (x_0, ..., x_{k-1})`.
    pub fn orbit_float(&self, init: &[f64], n: usize) -> Result<Orbit<f64>> {
        Ok(Orbit::from_sequence(self.order(), self.sequence_float(init, n)?))
    }

    /// The scalar sequence without building the state windows.
    pub fn sequence_float(&self, init: &[f64], n: usize) -> Result<Vec<f64>> {
        let k = self.order();
        check_init(init, k)?;
        no_params(self.params())?;
        let f: CompiledRational<f64> = self.rhs().compile();
        let mut seq = init.to_vec();
        seq.reserve(n);
        let mut point = vec![0.0; k];
        for step in k..k + n {
            for (j, p) in point.iter_mut().enumerate() {
                *p = seq[step - 1 - j];
            }
            let v = f.eval(&point).ok_or(Error::DivisionByZero { step: Some(step) })?;
            seq.push(check_float(v, step)?);
        }
        Ok(seq)
    }

    pub fn orbit_exact(&self, init: &[Scalar], n: usize) -> Result<Orbit<Scalar>> {
        let k = self.order();
        check_init(init, k)?;
        no_params(self.params())?;
        let f: CompiledRational<Scalar> = self.rhs().compile();
        let mut seq = init.to_vec();
        for step in k..k + n {
            let point: Vec<Scalar> = (0..k).map(|j| seq[step - 1 - j].clone()).collect();
            let v = f.eval(&point).ok_or(Error::DivisionByZero { step: Some(step) })?;
            seq.push(v);
        }
        Ok(Orbit::from_sequence(k, seq))
    }

    /// Orbit over fresh symbols `names` (one per initial entry); parameters
    /// stay symbolic and are appended to the context.
    pub fn orbit_symbolic(
        &self,
        names: &[&str],
        n: usize,
        budget: usize,
    ) -> Result<Orbit<RationalFunction>> {
        let k = self.order();
        check_init(names, k)?;
        let mut all: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        all.extend(self.params().iter().cloned());
        let ctx = vars(&all);
        let mut seq: Vec<RationalFunction> =
            (0..k).map(|i| RationalFunction::var(&ctx, i)).collect();
        let params: Vec<RationalFunction> = (0..self.params().len())
            .map(|i| RationalFunction::var(&ctx, k + i))
            .collect();
        for step in k..k + n {
            let mut subs: Vec<RationalFunction> =
                (0..k).map(|j| seq[step - 1 - j].clone()).collect();
            subs.extend(params.iter().cloned());
            let v = self.rhs().compose(&subs).map_err(|e| match e {
                Error::ZeroDenominator => Error::DivisionByZero { step: Some(step) },
                other => other,
            })?;
            let terms = v.num().len();
            if terms > budget {
                return Err(Error::ExpressionTooLarge { terms, budget });
            }
            seq.push(v);
        }
        Ok(Orbit::from_sequence(k, seq))
    }
}

impl Transformation {
    /// `N + 1` states starting from `init`.
    pub fn orbit_float(&self, init: &[f64], n: usize) -> Result<Orbit<f64>> {
        let k = self.dim();
        check_init(init, k)?;
        no_params(self.params())?;
        let fs: Vec<CompiledRational<f64>> =
            self.components().iter().map(|c| c.compile()).collect();
        let mut states = vec![init.to_vec()];
        for step in 1..=n {
            let x = &states[step - 1];
            let mut y = Vec::with_capacity(k);
            for f in &fs {
                let v = f.eval(x).ok_or(Error::DivisionByZero { step: Some(step) })?;
                y.push(check_float(v, step)?);
            }
            states.push(y);
        }
        Ok(Orbit {
            dim: k,
            states,
            sequence: None,
        })
    }

    pub fn orbit_exact(&self, init: &[Scalar], n: usize) -> Result<Orbit<Scalar>> {
        let k = self.dim();
        check_init(init, k)?;
        no_params(self.params())?;
        let fs: Vec<CompiledRational<Scalar>> =
            self.components().iter().map(|c| c.compile()).collect();
        let mut states = vec![init.to_vec()];
        for step in 1..=n {
            let x = &states[step - 1];
            let y = fs
                .iter()
                .map(|f| f.eval(x).ok_or(Error::DivisionByZero { step: Some(step) }))
                .collect::<Result<Vec<_>>>()?;
            states.push(y);
        }
        Ok(Orbit {
            dim: k,
            states,
            sequence: None,
        })
    }

    pub fn orbit_symbolic(
        &self,
        names: &[&str],
        n: usize,
        budget: usize,
    ) -> Result<Orbit<RationalFunction>> {
        let k = self.dim();
        check_init(names, k)?;
        let named: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let t = self.rename(&named);
        let ctx = t.vars().clone();
        let mut states = vec![(0..k).map(|i| RationalFunction::var(&ctx, i)).collect::<Vec<_>>()];
        for step in 1..=n {
            let y = t.apply_symbolic(&states[step - 1]).map_err(|e| match e {
                Error::ZeroDenominator => Error::DivisionByZero { step: Some(step) },
                other => other,
            })?;
            if let Some(terms) = y.iter().map(|c| c.num().len()).max() {
                if terms > budget {
                    return Err(Error::ExpressionTooLarge { terms, budget });
                }
            }
            states.push(y);
        }
        Ok(Orbit {
            dim: k,
            states,
            sequence: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::int;

    #[test]
    fn fibonacci() {
        let eq = DifferenceEquation::parse("x[n+1] = x[n] + x[n-1]", None).unwrap();
        let o = eq.orbit_exact(&[int(1), int(1)], 10).unwrap();
        let seq: Vec<String> = o.sequence.unwrap().iter().map(|v| v.to_string()).collect();
        assert_eq!(seq.join(","), "1,1,2,3,5,8,13,21,34,55,89,144");
    }

    #[test]
    fn map_view_matches_windows() {
        let eq = DifferenceEquation::parse("x[n+1] = (1+x[n])/x[n-1]", None).unwrap();
        let eo = eq.orbit_exact(&[int(2), int(3)], 12).unwrap();
        let mo = eq.targem().orbit_exact(&[int(2), int(3)], 12).unwrap();
        assert_eq!(eo.states, mo.states);
    }

    #[test]
    fn division_by_zero_reports_step() {
        let eq = DifferenceEquation::parse("x[n+1] = 1/(x[n]-1)", None).unwrap();
        assert_eq!(
            eq.orbit_exact(&[int(2)], 5).unwrap_err(),
            Error::DivisionByZero { step: Some(2) }
        );
    }

    #[test]
    fn float_overflow() {
        let eq = DifferenceEquation::parse("x[n+1] = x[n]^2", None).unwrap();
        assert!(matches!(eq.orbit_float(&[10.0], 20), Err(Error::Overflow { .. })));
    }

    #[test]
    fn symbolic_budget() {
        let eq = DifferenceEquation::parse("x[n+1] = x[n]^2 + x[n-1]", None).unwrap();
        assert!(matches!(
            eq.orbit_symbolic(&["a", "b"], 10, 50),
            Err(Error::ExpressionTooLarge { .. })
        ));
    }
}
