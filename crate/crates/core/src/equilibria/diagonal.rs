use serde::{Deserialize, Serialize};

use super::univariate::UniPoly;
use crate::dynsys::DifferenceEquation;
use crate::error::{Error, Result};
use crate::poly::polynomial::vars;
use crate::poly::scalar::{pow2_inv, to_f64};
use crate::poly::{Polynomial, Scalar};

/// A real root of an exact polynomial, isolated in `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactWitness {
    pub polynomial: UniPoly,
    #[serde(with = "crate::serde_scalar")]
    pub lo: Scalar,
    #[serde(with = "crate::serde_scalar")]
    pub hi: Scalar,
}

impl ExactWitness {
    /// Narrows the isolating interval below `width`.
    pub fn refined(&self, width: &Scalar) -> ExactWitness {
        let (lo, hi) = self.polynomial.refine(&self.lo, &self.hi, width);
        ExactWitness {
            polynomial: self.polynomial.clone(),
            lo,
            hi,
        }
    }

    /// Float value from an interval narrower than one ulp.
    pub fn value(&self) -> f64 {
        let r = self.refined(&pow2_inv(124));
        to_f64(&((&r.lo + &r.hi) / Scalar::from_integer(2.into())))
    }

    /// The root as an exact rational, when it is one.
    pub fn rational_value(&self) -> Option<Scalar> {
        let sf = self.polynomial.squarefree();
        // A rational root makes a linear factor; test the candidates found by
        // refining to a tiny interval and snapping to a simple fraction.
        let r = self.refined(&pow2_inv(40));
        let guess = crate::poly::scalar::simplest_within(&r.hi, &num_bigint::BigInt::from(1u64 << 20));
        let lo_ok = guess > self.lo && guess <= self.hi;
        (lo_ok && num_traits::Zero::is_zero(&sf.eval(&guess))).then_some(guess)
    }
}

/// Result of [`diagonal_equilibria`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalEquilibria {
    /// Primitive integer polynomial whose real roots are the equilibria.
    pub polynomial: UniPoly,
    pub roots: Vec<DiagonalRoot>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalRoot {
    pub witness: ExactWitness,
    pub value: f64,
    pub positive: bool,
}

/// Substitutes `x̄` for every lag, clears denominators and isolates the real
/// roots of the resulting polynomial.
///
/// The common factor of numerator and denominator is removed first, so a
/// value that makes `F` a removable `0/0` is not reported.
pub fn diagonal_equilibria(eq: &DifferenceEquation) -> Result<DiagonalEquilibria> {
    if !eq.params().is_empty() {
        return Err(Error::InvalidArgument(format!(
            "parameters {:?} must be instantiated",
            eq.params()
        )));
    }
    let ctx = vars(&["x"]);
    let xbar = Polynomial::var(&ctx, 0);
    let subs: Vec<Polynomial> = (0..eq.order()).map(|_| xbar.clone()).collect();
    let n = UniPoly::from_polynomial(&eq.rhs().num().substitute(&subs));
    let d = UniPoly::from_polynomial(&eq.rhs().den().substitute(&subs));
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let g = n.gcd(&d);
    let (n, d) = if g.degree().unwrap_or(0) > 0 {
        (n.div_rem(&g).0, d.div_rem(&g).0)
    } else {
        (n, d)
    };
    let x = UniPoly::new(vec![Scalar::from_integer(0.into()), Scalar::from_integer(1.into())]);
    let p = x.mul(&d).sub(&n);
    if p.is_zero() {
        return Err(Error::DegenerateEquation);
    }
    let p = p.primitive();
    let roots = p
        .isolate_real_roots()
        .into_iter()
        .map(|(lo, hi)| {
            let witness = ExactWitness {
                polynomial: p.clone(),
                lo,
                hi,
            };
            let value = witness.value();
            DiagonalRoot {
                positive: is_positive_root(&witness),
                witness,
                value,
            }
        })
        .collect();
    Ok(DiagonalEquilibria { polynomial: p, roots })
}

/// Decides the sign of an isolated root exactly by narrowing its interval
/// until it no longer straddles zero.
fn is_positive_root(w: &ExactWitness) -> bool {
    let zero = Scalar::from_integer(0.into());
    if w.polynomial.eval(&zero) == zero && w.lo < zero && zero <= w.hi {
        return false;
    }
    let mut w = w.clone();
    let mut bits = 8;
    while w.lo < zero && w.hi > zero {
        w = w.refined(&pow2_inv(bits));
        bits *= 2;
    }
    w.lo >= zero
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::ratio;

    #[test]
    fn linear_third_order_quadratic() {
        let eq = DifferenceEquation::parse(
            "x[n+1] = (17+5*x[n]+24*x[n-1]+16*x[n-2])/(23+4*x[n]+19*x[n-1]+2*x[n-2])",
            None,
        )
        .unwrap();
        let d = diagonal_equilibria(&eq).unwrap();
        assert_eq!(d.polynomial.to_string(), "25*x^2-22*x-17");
        let pos: Vec<_> = d.roots.iter().filter(|r| r.positive).collect();
        assert_eq!(pos.len(), 1);
        assert!((pos[0].value - (11.0 + 546f64.sqrt()) / 25.0).abs() < 1e-14);
    }

    #[test]
    fn removable_zero_is_dropped() {
        let eq = DifferenceEquation::parse("x[n+1] = x[n-1]/(x[n-1]+x[n-2])", None).unwrap();
        let d = diagonal_equilibria(&eq).unwrap();
        assert_eq!(d.polynomial.to_string(), "2*x-1");
        assert_eq!(d.roots[0].witness.rational_value(), Some(ratio(1, 2)));
    }

    #[test]
    fn root_near_interval_edge_is_positive() {
        let eq = DifferenceEquation::parse("x[n+1] = (1+x[n]+x[n-1])/3", None).unwrap();
        let d = diagonal_equilibria(&eq).unwrap();
        assert_eq!(d.roots.len(), 1);
        assert!(d.roots[0].positive);
        assert_eq!(d.roots[0].witness.rational_value(), Some(crate::poly::scalar::int(1)));
    }

    #[test]
    fn degenerate_identity() {
        let eq = DifferenceEquation::parse("x[n+1] = x[n]", None).unwrap();
        assert_eq!(diagonal_equilibria(&eq).unwrap_err(), Error::DegenerateEquation);
    }
}
