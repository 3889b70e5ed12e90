//! Univariate polynomials over the rationals and Sturm root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::scalar::{int, ratio, to_f64};
use crate::poly::{Polynomial, Scalar};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Scalar>);

fn zero() -> Scalar {
    <Scalar as Zero>::zero()
}

fn one() -> Scalar {
    <Scalar as One>::one()
}

impl UniPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        UniPoly(c)
    }

    /// Reads a one-variable polynomial.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        assert_eq!(p.nvars(), 1, "univariate polynomial expected");
        let d = p.total_degree() as usize;
        let mut c = vec![zero(); d + 1];
        for (m, v) in p.terms() {
            c[m.exponents()[0] as usize] = v.clone();
        }
        UniPoly::new(c)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.0.last().cloned().unwrap_or_else(zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0.iter().rev().fold(zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly(Vec::new());
        }
        let mut c = vec![zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.0.len().max(o.0.len());
        let get = |v: &Vec<Scalar>, i: usize| v.get(i).cloned().unwrap_or_else(zero);
        UniPoly::new((0..n).map(|i| get(&self.0, i) - get(&o.0, i)).collect())
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading();
        let mut r = self.0.clone();
        let mut q = vec![zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().expect("nonempty") / &lc;
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|v| v.is_zero()) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        UniPoly(self.0.iter().map(|c| c / &lc).collect())
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().expect("nonzero").is_negative() {
            g = -g;
        }
        UniPoly(ints.into_iter().map(|c| Scalar::from_integer(c / &g)).collect())
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(UniPoly(r.0.iter().map(|c| -c).collect()));
        }
        seq
    }

    /// Cauchy bound: every real root lies in `(-b, b)`.
    pub fn root_bound(&self) -> Scalar {
        let lc = self.leading().abs();
        let m = self.0[..self.0.len() - 1]
            .iter()
            .map(|c| c.abs() / &lc)
            .fold(zero(), |a, b| if b > a { b } else { a });
        m + one()
    }

    /// Isolating intervals `(lo, hi]` of all distinct real roots, in
    /// increasing order. Each interval contains exactly one root.
    pub fn isolate_real_roots(&self) -> Vec<(Scalar, Scalar)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sf = self.squarefree();
        let seq = sf.sturm_sequence();
        let b = sf.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = count_in(&seq, &lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push((lo, hi));
                continue;
            }
            // Split off-centre if the midpoint happens to be a root.
            let mut mid = (&lo + &hi) / int(2);
            let mut j = 3;
            while sf.eval(&mid).is_zero() {
                mid = &lo + (&hi - &lo) * (ratio(1, 2) + Scalar::new(BigInt::one(), BigInt::one() << j));
                j += 1;
            }
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Shrinks an isolating interval of a simple root of `self` below `width`.
    pub fn refine(&self, lo: &Scalar, hi: &Scalar, width: &Scalar) -> (Scalar, Scalar) {
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        if lo == hi {
            return (lo, hi);
        }
        let sf = self.squarefree();
        let mut slo = sf.eval(&lo).signum();
        if slo.is_zero() {
            return (lo.clone(), lo);
        }
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / int(2);
            let s = sf.eval(&mid).signum();
            if s.is_zero() {
                return (mid.clone(), mid);
            }
            if s == slo {
                lo = mid;
                slo = s;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            let body = match i {
                0 => a.to_string(),
                _ => {
                    let v = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if a.is_one() {
                        v
                    } else {
                        format!("{a}*{v}")
                    }
                }
            };
            parts.push((sign, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (sign, body)) in parts.into_iter().enumerate() {
            if idx > 0 || sign == "-" {
                s.push_str(sign);
            }
            s.push_str(&body);
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("x"))
    }
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use crate::poly::parse::{parse_expr, Symbol};
        use crate::poly::polynomial::vars;
        let text = String::deserialize(d)?;
        let ctx = vars(&["x"]);
        let e = parse_expr(&text).map_err(serde::de::Error::custom)?;
        let f = e
            .to_rational(&ctx, &|s| (s == &Symbol::Plain("x".into())).then_some(0))
            .map_err(serde::de::Error::custom)?;
        let p = f
            .as_polynomial()
            .ok_or_else(|| serde::de::Error::custom("not a polynomial"))?;
        Ok(UniPoly::from_polynomial(&p))
    }
}

fn sign_changes(seq: &[UniPoly], x: &Scalar) -> usize {
    let mut prev = 0i8;
    let mut n = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if prev != 0 && s != prev {
                n += 1;
            }
            prev = s;
        }
    }
    n
}

/// Distinct roots in `(lo, hi]` (Sturm's theorem).
fn count_in(seq: &[UniPoly], lo: &Scalar, hi: &Scalar) -> usize {
    sign_changes(seq, lo).saturating_sub(sign_changes(seq, hi))
}
