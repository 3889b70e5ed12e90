//! Rational functions as normalized numerator/denominator pairs.
//!
//! Normalization removes the common rational content, the common monomial
//! factor, and makes the leading coefficient of the denominator positive. No
//! general multivariate gcd is computed; equality is decided by
//! cross-multiplication instead. Composition additionally tries exact
//! division by the factors it introduced, which keeps iterated maps small.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::polynomial::{same_vars, CompiledPoly, Polynomial, Vars};
use super::scalar::{rational_gcd, Ring, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds the normalized pair `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !same_vars(num.vars(), den.vars()) {
            return Err(Error::ContextMismatch(
                "numerator and denominator contexts differ".into(),
            ));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let one = Polynomial::one(p.vars());
        Self::normalized(p, one)
    }

    pub fn constant(vars: &Vars, c: Scalar) -> Self {
        Self::from_poly(Polynomial::constant(vars, c))
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::from_poly(Polynomial::var(vars, i))
    }

    fn normalized(mut num: Polynomial, mut den: Polynomial) -> Self {
        if num.is_zero() {
            let vars = den.vars().clone();
            return RationalFunction {
                num,
                den: Polynomial::one(&vars),
            };
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        if !g.is_one() {
            num = num.div_monomial(&g).expect("gcd divides");
            den = den.div_monomial(&g).expect("gcd divides");
        }
        let mut c = rational_gcd(&num.content(), &den.content());
        if den.leading().map(|(_, lc)| lc.is_negative()).unwrap_or(false) {
            c = -c;
        }
        if !c.is_one() {
            let inv = c.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn term_count(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.num.uses_var(i) || self.den.uses_var(i)
    }

    /// Equality as rational functions: `a.num * b.den == b.num * a.den`.
    pub fn equal(&self, other: &RationalFunction) -> bool {
        if self == other {
            return true;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if self.den == other.den {
            return RationalFunction::new(self.num.clone(), other.num.clone());
        }
        if self.num == other.num {
            return RationalFunction::new(other.den.clone(), self.den.clone());
        }
        RationalFunction::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn pow(&self, n: u32) -> RationalFunction {
        Self::normalized(self.num.pow(n), self.den.pow(n))
    }

    pub fn scale(&self, c: &Scalar) -> RationalFunction {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Partial derivative by the quotient rule.
    pub fn differentiate(&self, i: usize) -> RationalFunction {
        if self.den.as_constant().is_some() {
            return Self::normalized(self.num.derivative(i), self.den.clone());
        }
        let dn = self.num.derivative(i);
        let dd = self.den.derivative(i);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(top, self.den.pow(2))
    }

    /// Substitutes `subs[i]` for variable `i`, then cancels any of the
    /// substituted numerators or denominators that divide both sides.
    pub fn compose(&self, subs: &[RationalFunction]) -> Result<RationalFunction> {
        let raw = self.compose_raw(subs)?;
        let mut candidates: Vec<&Polynomial> = Vec::new();
        for s in subs {
            for p in [&s.num, &s.den] {
                if p.as_constant().is_none() && !p.is_monomial() && !candidates.contains(&p) {
                    candidates.push(p);
                }
            }
        }
        Ok(raw.cancel_factors(&candidates))
    }

    /// Substitution without the factor-cancellation pass.
    pub fn compose_raw(&self, subs: &[RationalFunction]) -> Result<RationalFunction> {
        if subs.len() != self.nvars() {
            return Err(Error::InvalidArgument(format!(
                "composition needs {} substitutions, got {}",
                self.nvars(),
                subs.len()
            )));
        }
        let target = match subs.first() {
            Some(s) => s.vars().clone(),
            None => self.vars().clone(),
        };
        if subs.iter().any(|s| !same_vars(s.vars(), &target)) {
            return Err(Error::ContextMismatch(
                "substitutions live in different contexts".into(),
            ));
        }
        // Homogenize each variable to a common exponent so that the
        // substituted denominators cancel between numerator and denominator.
        let exps: Vec<u32> = (0..self.nvars())
            .map(|i| self.num.degree_in(i).max(self.den.degree_in(i)))
            .collect();
        let mut num_pows = Vec::with_capacity(subs.len());
        let mut den_pows = Vec::with_capacity(subs.len());
        for (s, &e) in subs.iter().zip(&exps) {
            num_pows.push(power_table(&s.num, e));
            den_pows.push(if s.den.is_one() {
                Vec::new()
            } else {
                power_table(&s.den, e)
            });
        }
        let apply = |p: &Polynomial| -> Polynomial {
            let mut out = Polynomial::zero(&target);
            for (m, c) in p.terms() {
                let mut t = Polynomial::constant(&target, c.clone());
                for (i, &k) in m.exponents().iter().enumerate() {
                    if k > 0 {
                        t = &t * &num_pows[i][k as usize];
                    }
                    let rest = (exps[i] - k) as usize;
                    if rest > 0 && !den_pows[i].is_empty() {
                        t = &t * &den_pows[i][rest];
                    }
                }
                out = &out + &t;
            }
            out
        };
        let num = apply(&self.num);
        let den = apply(&self.den);
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    /// Divides numerator and denominator by every candidate that exactly
    /// divides both, repeatedly.
    pub fn cancel_factors(&self, candidates: &[&Polynomial]) -> RationalFunction {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for &f in candidates {
            if f.as_constant().is_some() || f.total_degree() > den.total_degree() {
                continue;
            }
            loop {
                let Some(d) = den.div_exact(f) else { break };
                let Some(n) = num.div_exact(f) else { break };
                num = n;
                den = d;
            }
        }
        Self::normalized(num, den)
    }

    pub fn eval<R: Ring>(&self, point: &[R]) -> Result<R> {
        let n = self.num.eval(point);
        let d = self.den.eval(point);
        n.checked_div(&d).ok_or(Error::DivisionByZero { step: None })
    }

    pub fn compile<R: Ring>(&self) -> CompiledRational<R> {
        CompiledRational {
            num: self.num.compile(),
            den: self.den.compile(),
        }
    }

    pub fn remap(&self, new_vars: &Vars, map: &[usize]) -> RationalFunction {
        Self::normalized(self.num.remap(new_vars, map), self.den.remap(new_vars, map))
    }
}

fn power_table(p: &Polynomial, e: u32) -> Vec<Polynomial> {
    let mut row = vec![Polynomial::one(p.vars())];
    for k in 1..=e as usize {
        let next = &row[k - 1] * p;
        row.push(next);
    }
    row
}

/// Pre-converted numerator and denominator for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledRational<R> {
    pub num: CompiledPoly<R>,
    pub den: CompiledPoly<R>,
}

impl<R: Ring> CompiledRational<R> {
    pub fn eval(&self, point: &[R]) -> Option<R> {
        self.num.eval(point).checked_div(&self.den.eval(point))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        self.num.write_terms(f)?;
        write!(f, ")")?;
        if !self.den.is_one() {
            write!(f, "/(")?;
            self.den.write_terms(f)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        combine(self, o, false)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        combine(self, o, true)
    }
}

fn combine(a: &RationalFunction, b: &RationalFunction, subtract: bool) -> RationalFunction {
    let b_num = if subtract { -&b.num } else { b.num.clone() };
    if a.den == b.den {
        return RationalFunction::normalized(&a.num + &b_num, a.den.clone());
    }
    if let Some(c) = b.den.as_constant() {
        let top = &a.num + &(&b_num * &a.den).scale(&c.recip());
        return RationalFunction::normalized(top, a.den.clone());
    }
    if let Some(c) = a.den.as_constant() {
        let top = &(&a.num * &b.den).scale(&c.recip()) + &b_num;
        return RationalFunction::normalized(top, b.den.clone());
    }
    RationalFunction::normalized(
        &(&a.num * &b.den) + &(&b_num * &a.den),
        &a.den * &b.den,
    )
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.num {
            return RationalFunction::normalized(self.num.clone(), o.den.clone());
        }
        if self.num == o.den {
            return RationalFunction::normalized(o.num.clone(), self.den.clone());
        }
        RationalFunction::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
