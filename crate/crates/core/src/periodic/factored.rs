//! Rational functions whose denominator is kept as a list of factor powers,
//! so that a cleared denominator can be shown non-negative by inspection.

use num_traits::{One, Signed};

use crate::poly::{Polynomial, RationalFunction, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Factored {
    pub num: Polynomial,
    /// Primitive factors with positive leading coefficient, each listed once.
    pub den: Vec<(Polynomial, u32)>,
}

/// `f = c * g` with `g` primitive and leading coefficient positive.
fn normalize(f: &Polynomial) -> (Scalar, Polynomial) {
    let mut c = f.content();
    if f.leading().is_some_and(|(_, lc)| lc.is_negative()) {
        c = -c;
    }
    (c.clone(), f.scale(&c.recip()))
}

impl Factored {
    pub fn poly(p: Polynomial) -> Self {
        Factored { num: p, den: Vec::new() }
    }

    pub fn from_rational(rf: &RationalFunction) -> Self {
        let d = rf.den();
        if let Some(c) = d.as_constant() {
            return Factored::poly(rf.num().scale(&c.recip()));
        }
        let (c, g) = normalize(d);
        Factored {
            num: rf.num().scale(&c.recip()),
            den: vec![(g, 1)],
        }
    }

    /// The cleared denominator as one polynomial.
    pub fn denominator(&self) -> Polynomial {
        let mut out = Polynomial::one(self.num.vars());
        for (f, e) in &self.den {
            out = &out * &f.pow(*e);
        }
        out
    }

    fn exponent_of(&self, f: &Polynomial) -> u32 {
        self.den.iter().find(|(g, _)| g == f).map_or(0, |(_, e)| *e)
    }

    fn lift(&self, target: &[(Polynomial, u32)]) -> Polynomial {
        let mut n = self.num.clone();
        for (f, e) in target {
            let missing = e - self.exponent_of(f);
            if missing > 0 {
                n = &n * &f.pow(missing);
            }
        }
        n
    }

    fn common(&self, other: &Factored) -> Vec<(Polynomial, u32)> {
        let mut out = self.den.clone();
        for (f, e) in &other.den {
            match out.iter_mut().find(|(g, _)| g == f) {
                Some((_, k)) => *k = (*k).max(*e),
                None => out.push((f.clone(), *e)),
            }
        }
        out
    }

    pub fn add(&self, other: &Factored) -> Factored {
        let den = self.common(other);
        Factored {
            num: &self.lift(&den) + &other.lift(&den),
            den,
        }
    }

    pub fn sub(&self, other: &Factored) -> Factored {
        let den = self.common(other);
        Factored {
            num: &self.lift(&den) - &other.lift(&den),
            den,
        }
    }

    pub fn mul(&self, other: &Factored) -> Factored {
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, k)) => *k += e,
                None => den.push((f.clone(), *e)),
            }
        }
        Factored {
            num: &self.num * &other.num,
            den,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Factored {
        Factored {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Cancels listed factors that divide the numerator.
    pub fn reduce(&self) -> Factored {
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for (f, e) in &self.den {
            let mut e = *e;
            while e > 0 {
                match num.div_exact(f) {
                    Some(q) => {
                        num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                den.push((f.clone(), e));
            }
        }
        Factored { num, den }
    }

    /// True if every factor is raised to an even power or has only positive
    /// coefficients, so the denominator cannot be negative on the orthant.
    pub fn denominator_nonnegative(&self) -> bool {
        self.den
            .iter()
            .all(|(f, e)| e % 2 == 0 || f.all_coefficients_positive())
    }

    /// `∏ f^(e/2)` when every exponent is even.
    pub fn denominator_root(&self) -> Option<Polynomial> {
        if self.den.iter().any(|(_, e)| e % 2 == 1) {
            return None;
        }
        let mut out = Polynomial::one(self.num.vars());
        for (f, e) in &self.den {
            out = &out * &f.pow(e / 2);
        }
        Some(out)
    }
}

/// `p(args)` with the arguments' denominators kept factored.
pub fn compose_polynomial(p: &Polynomial, args: &[Factored]) -> Factored {
    let ctx = args[0].num.vars().clone();
    let mut acc = Factored::poly(Polynomial::zero(&ctx));
    for (m, c) in p.terms() {
        let mut t = Factored::poly(Polynomial::constant(&ctx, Scalar::one()));
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                t = t.mul(&args[i]);
            }
        }
        acc = acc.add(&t.scale(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsys::Transformation;

    #[test]
    fn sum_over_shared_factor() {
        let t = Transformation::parse("1/(x+y), 2/(x+y), x/(2*x+2)", None).unwrap();
        let a = Factored::from_rational(&t.components()[0]);
        let b = Factored::from_rational(&t.components()[1]);
        let c = Factored::from_rational(&t.components()[2]);
        let s = a.add(&b);
        assert_eq!(s.den.len(), 1);
        let s = s.add(&c);
        assert_eq!(s.den.len(), 2);
        let rf = &(&t.components()[0] + &t.components()[1]) + &t.components()[2];
        let back = RationalFunction::new(s.num.clone(), s.denominator()).unwrap();
        assert!(back.equal(&rf));
    }
}
