//! Closed float intervals with outward rounding.
//!
//! Every arithmetic result is widened by one unit in the last place on each
//! side (`next_down` / `next_up`). Round-to-nearest is off by at most half an
//! ulp, so the widened result always encloses the true real value.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::scalar::{from_f64, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval with lo > hi: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Tightest float enclosure of an exact rational.
    pub fn from_scalar(q: &Scalar) -> Self {
        let f = super::scalar::to_f64(q);
        if !f.is_finite() {
            return Interval::entire();
        }
        let exact = from_f64(f);
        let lo = if &exact <= q { f } else { f.next_down() };
        let hi = if &exact >= q { f } else { f.next_up() };
        Interval { lo, hi }
    }

    pub fn entire() -> Self {
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    fn outward(lo: f64, hi: f64) -> Interval {
        let lo = if lo.is_nan() { f64::NEG_INFINITY } else { lo.next_down() };
        let hi = if hi.is_nan() { f64::INFINITY } else { hi.next_up() };
        Interval { lo, hi }
    }

    pub fn checked_div(&self, other: &Interval) -> Option<Interval> {
        if other.contains_zero() {
            return None;
        }
        let c = [
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        ];
        Some(Self::outward(min4(c), max4(c)))
    }

    /// Integer power; even powers are non-negative.
    pub fn powu(&self, n: u32) -> Interval {
        match n {
            0 => Interval::point(1.0),
            1 => *self,
            _ => {
                let a = pow_up(self.lo.abs(), n);
                let b = pow_up(self.hi.abs(), n);
                let a_lo = pow_down(self.lo.abs(), n);
                let b_lo = pow_down(self.hi.abs(), n);
                if n % 2 == 0 {
                    if self.contains_zero() {
                        Interval { lo: 0.0, hi: a.max(b) }
                    } else {
                        Interval {
                            lo: a_lo.min(b_lo),
                            hi: a.max(b),
                        }
                    }
                } else {
                    let lo = if self.lo < 0.0 { -a } else { a_lo };
                    let hi = if self.hi < 0.0 { -b_lo } else { b };
                    Interval { lo, hi }
                }
            }
        }
    }
}

// |x|^n rounded up / down by repeated outward multiplication.
fn pow_up(x: f64, n: u32) -> f64 {
    let mut acc = 1.0f64;
    for _ in 0..n {
        acc = (acc * x).next_up();
    }
    acc
}

fn pow_down(x: f64, n: u32) -> f64 {
    let mut acc = 1.0f64;
    for _ in 0..n {
        acc = (acc * x).next_down().max(0.0);
    }
    acc
}

fn min4(c: [f64; 4]) -> f64 {
    c.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max4(c: [f64; 4]) -> f64 {
    c.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::outward(self.lo + o.lo, self.hi + o.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::outward(self.lo - o.hi, self.hi - o.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        // 0 * inf would produce NaN; treat an exact zero factor as absorbing.
        let prod = |a: f64, b: f64| if a == 0.0 || b == 0.0 { 0.0 } else { a * b };
        let c = [
            prod(self.lo, o.lo),
            prod(self.lo, o.hi),
            prod(self.hi, o.lo),
            prod(self.hi, o.hi),
        ];
        Interval::outward(min4(c), max4(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::ratio;
    use proptest::prelude::*;

    #[test]
    fn encloses_non_representable_rationals() {
        let third = ratio(1, 3);
        let iv = Interval::from_scalar(&third);
        assert!(from_f64(iv.lo) <= third && third <= from_f64(iv.hi));
        assert!(iv.width() > 0.0);
        let half = Interval::from_scalar(&ratio(1, 2));
        assert_eq!(half, Interval::point(0.5));
    }

    #[test]
    fn even_power_is_non_negative() {
        let iv = Interval::new(-2.0, 1.0).powu(2);
        assert_eq!(iv.lo, 0.0);
        assert!(iv.hi >= 4.0);
        let odd = Interval::new(-2.0, 1.0).powu(3);
        assert!(odd.lo <= -8.0 && odd.hi >= 1.0);
    }

    #[test]
    fn division_by_interval_containing_zero_fails() {
        assert!(Interval::point(1.0)
            .checked_div(&Interval::new(-1.0, 1.0))
            .is_none());
    }

    proptest! {
        #[test]
        fn arithmetic_encloses_exact_result(a in -1e6f64..1e6, b in -1e6f64..1e6, c in 0.1f64..1e3) {
            let (qa, qb, qc) = (from_f64(a), from_f64(b), from_f64(c));
            let (ia, ib, ic) = (Interval::point(a), Interval::point(b), Interval::point(c));
            let checks = [
                (ia + ib, &qa + &qb),
                (ia - ib, &qa - &qb),
                (ia * ib, &qa * &qb),
                (ia.checked_div(&ic).unwrap(), &qa / &qc),
                (ia.powu(3), &qa * &qa * &qa),
            ];
            for (iv, exact) in checks {
                prop_assert!(from_f64(iv.lo) <= exact && exact <= from_f64(iv.hi));
            }
        }
    }
}
