use serde::{Deserialize, Serialize};

use crate::dynsys::Transformation;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, RationalFunction, Scalar};

/// `|x - x̄|² - α|Tʳ(x) - x̄|²` with its denominator cleared.
///
/// The rational objective equals `numerator / denominator_root²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionObjective {
    pub r: usize,
    #[serde(with = "crate::serde_scalar")]
    pub alpha: Scalar,
    #[serde(with = "crate::serde_scalar::vec")]
    pub fixed_point: Vec<Scalar>,
    /// False when `fixed_point` is only a high-precision approximation.
    pub exact: bool,
    #[serde(with = "crate::serde_poly")]
    pub numerator: Polynomial,
    #[serde(with = "crate::serde_poly")]
    pub denominator_root: Polynomial,
}

/// Smallest product of the given denominators that each one divides,
/// found by trial division only.
pub fn common_denominator(dens: &[&Polynomial]) -> Polynomial {
    let mut l = Polynomial::one(dens[0].vars());
    for d in dens {
        if l.div_exact(d).is_some() {
            continue;
        }
        l = if d.div_exact(&l).is_some() {
            (*d).clone()
        } else {
            &l * *d
        };
    }
    l
}

/// Builds the contraction objective for `map` at `fp` after `r` steps.
pub fn build_objective(
    map: &Transformation,
    fp: &[Scalar],
    exact: bool,
    r: usize,
    alpha: &Scalar,
) -> Result<ContractionObjective> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    if !map.params().is_empty() {
        return Err(Error::InvalidArgument(format!(
            "parameters {:?} must be instantiated",
            map.params()
        )));
    }
    if fp.len() != map.dim() {
        return Err(Error::InvalidArgument("fixed point has wrong dimension".into()));
    }
    let ctx = map.vars().clone();
    let tr = map.power(r)?;
    let dens: Vec<&Polynomial> = tr.components().iter().map(|c| c.den()).collect();
    let l = common_denominator(&dens);
    let l2 = &l * &l;
    let mut dist = Polynomial::zero(&ctx);
    let mut image = Polynomial::zero(&ctx);
    for (i, c) in tr.components().iter().enumerate() {
        let xi = &Polynomial::var(&ctx, i) - &Polynomial::constant(&ctx, fp[i].clone());
        dist = &dist + &(&xi * &xi);
        let cof = l.div_exact(c.den()).ok_or(Error::NotPerfectSquare)?;
        let yi = &(c.num() * &cof) - &l.scale(&fp[i]);
        image = &image + &(&yi * &yi);
    }
    let numerator = &(&l2 * &dist) - &image.scale(alpha);

    // Independent check through rational-function arithmetic.
    let mut rf = RationalFunction::constant(&ctx, Scalar::from_integer(0.into()));
    for (i, c) in tr.components().iter().enumerate() {
        let bar = RationalFunction::constant(&ctx, fp[i].clone());
        let xi = &RationalFunction::var(&ctx, i) - &bar;
        let yi = c - &bar;
        rf = &(&rf + &(&xi * &xi)) - &(&yi * &yi).scale(alpha);
    }
    let claimed = RationalFunction::new(numerator.clone(), l2)?;
    if !rf.equal(&claimed) {
        return Err(Error::NotPerfectSquare);
    }
    Ok(ContractionObjective {
        r,
        alpha: alpha.clone(),
        fixed_point: fp.to_vec(),
        exact,
        numerator,
        denominator_root: l,
    })
}

impl ContractionObjective {
    /// Float value of the rational objective `numerator / root²`.
    pub fn value_f64(&self, x: &[f64]) -> f64 {
        let d: f64 = self.denominator_root.eval(x);
        self.numerator.eval::<f64>(x) / (d * d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::{int, ratio};

    #[test]
    fn averaging_map_in_one_dimension() {
        let t = Transformation::parse("(1+x)/2", None).unwrap();
        let o = build_objective(&t, &[int(1)], true, 1, &ratio(101, 100)).unwrap();
        // (x-1)^2 (1 - alpha/4), times the cleared constant
        let x = o.numerator.vars().clone();
        let xm1 = &Polynomial::var(&x, 0) - &Polynomial::one(&x);
        let want = (&xm1 * &xm1).scale(&(int(1) - ratio(101, 400)));
        let q = o.numerator.div_exact(&want).unwrap();
        assert!(q.as_constant().is_some_and(|c| c > int(0)));
    }

    #[test]
    fn vanishes_at_fixed_point() {
        let t = Transformation::parse("y, (1+x+y)/3", None).unwrap();
        for r in 1..4 {
            let o = build_objective(&t, &[int(1), int(1)], true, r, &ratio(101, 100)).unwrap();
            assert_eq!(o.numerator.eval(&[int(1), int(1)]), int(0));
        }
    }

    #[test]
    fn shared_denominators_are_not_repeated() {
        let t = Transformation::parse("y, (1+y)/x", None).unwrap();
        let o = build_objective(&t, &[int(2), int(2)], false, 2, &ratio(101, 100)).unwrap();
        assert!(o.denominator_root.total_degree() <= 2);
    }
}
