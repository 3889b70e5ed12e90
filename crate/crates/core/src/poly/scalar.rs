//! Exact rational scalars and the small ring abstraction used by evaluators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::Interval;
use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical reduced form.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational literal: `{text}`"),
    };
    let t = text.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Scalar::new(p, q))
}

pub fn to_f64(q: &Scalar) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact value of a finite float.
pub fn from_f64(x: f64) -> Scalar {
    Scalar::from_float(x).expect("finite float")
}

/// `2^-bits`.
pub fn pow2_inv(bits: u32) -> Scalar {
    Scalar::new(BigInt::one(), BigInt::one() << bits)
}

/// Rounds `q` to the grid `2^-bits`, keeping exact arithmetic cheap.
pub fn round_dyadic(q: &Scalar, bits: u32) -> Scalar {
    let scale = BigInt::one() << bits;
    let scaled = q * Scalar::from_integer(scale.clone());
    Scalar::new(scaled.round().to_integer(), scale)
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions).
pub fn simplest_within(x: &Scalar, max_den: &BigInt) -> Scalar {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    loop {
        let (a, r) = num.div_mod_floor(&den);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > max_den {
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        if r.is_zero() {
            break;
        }
        num = std::mem::replace(&mut den, r);
    }
    if k1.is_zero() {
        return x.round();
    }
    Scalar::new(h1, k1)
}

/// Gcd of two rationals: gcd of numerators over lcm of denominators.
pub fn rational_gcd(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let n = a.numer().gcd(b.numer());
    let d = a.denom().lcm(b.denom());
    Scalar::new(n, d)
}

/// Commutative ring operations needed to evaluate polynomials in different
/// arithmetic modes.
pub trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_scalar(q: &Scalar) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `None` when the divisor is (or may be) zero.
    fn checked_div(&self, other: &Self) -> Option<Self>;

    fn powu(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_scalar(q: &Scalar) -> Self {
        q.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_scalar(q: &Scalar) -> Self {
        to_f64(q)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        (*other != 0.0).then(|| self / other)
    }
    fn powu(&self, n: u32) -> Self {
        self.powi(n as i32)
    }
}

impl Ring for Interval {
    fn zero() -> Self {
        Interval::point(0.0)
    }
    fn one() -> Self {
        Interval::point(1.0)
    }
    fn from_scalar(q: &Scalar) -> Self {
        Interval::from_scalar(q)
    }
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn sub(&self, other: &Self) -> Self {
        *self - *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn checked_div(&self, other: &Self) -> Option<Self> {
        self.checked_div(other)
    }
    fn powu(&self, n: u32) -> Self {
        self.powu(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_scalar("101/100").unwrap(), ratio(101, 100));
        assert_eq!(parse_scalar("-4/8").unwrap(), ratio(-1, 2));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn continued_fraction_snaps_to_simple_values() {
        let x = from_f64(0.5 + 1e-17);
        assert_eq!(simplest_within(&x, &BigInt::from(1000)), ratio(1, 2));
        let third = from_f64(1.0 / 3.0);
        assert_eq!(simplest_within(&third, &BigInt::from(1000)), ratio(1, 3));
    }

    #[test]
    fn rational_gcd_matches_definition() {
        assert_eq!(rational_gcd(&ratio(1, 2), &ratio(1, 3)), ratio(1, 6));
        assert_eq!(rational_gcd(&int(2), &int(4)), int(2));
    }
}
