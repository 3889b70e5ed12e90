//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::scalar::{rational_gcd, Ring, Scalar};

/// Ordered list of variable names shared by every polynomial in a context.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// A polynomial over an ordered variable context.
///
/// Terms are kept in a map keyed by graded-lex monomial order, zero
/// coefficients are never stored. Binary operations require both operands to
/// share the same variable names and panic otherwise.
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, <Scalar as One>::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), i), <Scalar as One>::one());
        p
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.nvars(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(vars: &Vars, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(<Scalar as Zero>::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(<Scalar as Zero>::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[i]).max().unwrap_or(0)
    }

    /// Greatest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exponents()[i] > 0)
    }

    /// True when every stored coefficient is positive.
    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ctx(&self, other: &Polynomial) {
        assert!(
            same_vars(&self.vars, &other.vars),
            "polynomial contexts differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Positive rational gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> Scalar {
        self.terms
            .values()
            .fold(<Scalar as Zero>::zero(), |g, c| rational_gcd(&g, c))
    }

    /// Gcd of all monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars()),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(Polynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut p = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e > 0 {
                p.add_term(m.with_exponent(i, e - 1), c * Scalar::from_integer(e.into()));
            }
        }
        p
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.check_ctx(divisor);
        let (lm, lc) = divisor.leading()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        if divisor.len() == 1 {
            let q = self.div_monomial(lm)?;
            return Some(q.scale(&(<Scalar as One>::one() / lc)));
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        // In an exact division the leading term of the running remainder is
        // always divisible by the divisor's leading term.
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(lm)?;
            let qc = rc / lc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
            if quot.len() > self.len() * 8 + 256 {
                return None;
            }
        }
        Some(quot)
    }

    /// Substitutes polynomial `args[i]` for variable `i`; all `args` share the
    /// target context.
    pub fn substitute(&self, args: &[Polynomial]) -> Polynomial {
        assert_eq!(args.len(), self.nvars(), "substitution arity mismatch");
        let target = args
            .first()
            .map(|a| a.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(args.len());
        for (i, a) in args.iter().enumerate() {
            let d = self.degree_in(i) as usize;
            let mut row = vec![Polynomial::one(&target)];
            for k in 1..=d {
                let next = &row[k - 1] * a;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Moves into `new_vars`, sending variable `i` to index `map[i]`.
    pub fn remap(&self, new_vars: &Vars, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars());
        let n = new_vars.len();
        let mut p = Self::zero(new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &k) in m.exponents().iter().enumerate() {
                e[map[i]] += k;
            }
            p.add_term(Monomial::new(e), c.clone());
        }
        p
    }

    pub fn eval<R: Ring>(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.nvars(), "evaluation point has wrong length");
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = R::from_scalar(c);
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = t.mul(&x.powu(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn compile<R: Ring>(&self) -> CompiledPoly<R> {
        CompiledPoly {
            nvars: self.nvars(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let pw = m
                        .exponents()
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| (i, e))
                        .collect();
                    (R::from_scalar(c), pw)
                })
                .collect(),
        }
    }

    pub(crate) fn write_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !a.is_one() {
                factors.push(a.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f)
    }
}

/// A polynomial with coefficients pre-converted to a ring for repeated
/// evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly<R> {
    nvars: usize,
    terms: Vec<(R, Vec<(usize, u32)>)>,
}

impl<R: Ring> CompiledPoly<R> {
    pub fn eval(&self, point: &[R]) -> R {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = R::zero();
        for (c, pw) in &self.terms {
            let mut t = c.clone();
            for &(i, e) in pw {
                t = t.mul(&point[i].powu(e));
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

impl CompiledPoly<f64> {
    /// Sum of absolute term values; a scale for judging cancellation error.
    pub fn abs_sum(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, pw)| {
                pw.iter()
                    .fold(c.abs(), |t, &(i, e)| t * point[i].abs().powi(e as i32))
            })
            .sum()
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        self.check_ctx(o);
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.check_ctx(o);
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.check_ctx(o);
        let mut p = Polynomial::zero(&self.vars);
        if self.is_zero() || o.is_zero() {
            return p;
        }
        let mut acc: std::collections::HashMap<Monomial, Scalar> =
            std::collections::HashMap::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(<Scalar as Zero>::zero) += ca * cb;
            }
        }
        p.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        p
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, o: Polynomial) -> Polynomial {
                (&self).$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::{int, ratio};

    fn xy() -> (Vars, Polynomial, Polynomial) {
        let v = vars(&["x", "y"]);
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        (v, x, y)
    }

    #[test]
    fn arithmetic_and_printing() {
        let (v, x, y) = xy();
        let one = Polynomial::one(&v);
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p.to_string(), "x^2-1");
        let q = &(&x * &y).scale(&ratio(3, 2)) - &y.pow(2);
        assert_eq!(q.to_string(), "3/2*x*y-y^2");
        assert_eq!(Polynomial::zero(&v).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let (v, x, y) = xy();
        let one = Polynomial::one(&v);
        let a = &(&x + &one) * &(&y + &one);
        assert_eq!(a.div_exact(&(&y + &one)), Some(&x + &one));
        assert_eq!(a.div_exact(&(&x + &y)), None);
        let m = &x * &y;
        assert_eq!((&m * &a).div_exact(&m), Some(a.clone()));
    }

    #[test]
    fn derivative_and_content() {
        let (_, x, y) = xy();
        let p = &(&x.pow(3).scale(&int(4)) + &(&x * &y).scale(&int(6))) + &y.scale(&int(2));
        assert_eq!(p.derivative(0).to_string(), "12*x^2+6*y");
        assert_eq!(p.content(), int(2));
        assert_eq!(p.total_degree(), 3);
        assert_eq!(p.degree_in(1), 1);
    }

    #[test]
    fn substitution_composes() {
        let (v, x, y) = xy();
        let p = &x.pow(2) + &y;
        let one = Polynomial::one(&v);
        let s = p.substitute(&[&x + &one, &x * &y]);
        assert_eq!(s.to_string(), "x^2+x*y+2*x+1");
    }

    #[test]
    fn remap_moves_variables() {
        let (_, x, y) = xy();
        let p = &x.pow(2) + &y;
        let w = vars(&["a", "b", "c"]);
        assert_eq!(p.remap(&w, &[2, 0]).to_string(), "c^2+a");
    }

    #[test]
    fn evaluation_modes_agree() {
        let (_, x, y) = xy();
        let p = &(&x.pow(2).scale(&ratio(1, 3)) - &y) + &Polynomial::constant(x.vars(), int(5));
        let exact: Scalar = p.eval(&[int(3), int(2)]);
        assert_eq!(exact, int(6));
        let fl: f64 = p.compile::<f64>().eval(&[3.0, 2.0]);
        assert!((fl - 6.0).abs() < 1e-12);
    }
}
