use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::arith::{rat_to_f64, Rational};

/// Closed interval of reals with `f64` endpoints. Arithmetic rounds
/// outward (at most one ulp per operation, none when the operation is
/// exact); library transcendental functions are widened by
/// `TRANSCENDENTAL_ULPS`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

const TRANSCENDENTAL_ULPS: u32 = 4;

fn down(x: f64, n: u32) -> f64 {
    (0..n).fold(x, |v, _| v.next_down())
}

fn up(x: f64, n: u32) -> f64 {
    (0..n).fold(x, |v, _| v.next_up())
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// The single float `x`, taken as exact.
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Encloses a rational; conversion may round, so widen.
    pub fn from_rational(r: &Rational) -> Self {
        let x = rat_to_f64(r);
        if BigRational::from_float(x).as_ref() == Some(r) {
            return Interval::point(x);
        }
        Interval {
            lo: down(x, 2),
            hi: up(x, 2),
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    fn outward(lo: f64, hi: f64, ulps: u32) -> Interval {
        Interval {
            lo: down(lo, ulps),
            hi: up(hi, ulps),
        }
    }

    pub fn exp(&self) -> Interval {
        Self::outward(self.lo.exp(), self.hi.exp(), TRANSCENDENTAL_ULPS).clamp_nonnegative()
    }

    /// Natural log of a positive interval.
    pub fn ln(&self) -> Interval {
        assert!(self.lo > 0.0, "log of nonpositive interval");
        Self::outward(self.lo.ln(), self.hi.ln(), TRANSCENDENTAL_ULPS)
    }

    /// `self^n`, by repeated multiplication (negative `n` through the
    /// reciprocal).
    pub fn powi(&self, n: i32) -> Interval {
        if n < 0 {
            return Interval::point(1.0) / self.powi(-n);
        }
        let mut acc = Interval::point(1.0);
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    /// `self^e` for a positive interval and real exponent.
    pub fn powf(&self, e: f64) -> Interval {
        (self.ln() * Interval::point(e)).exp()
    }

    fn clamp_nonnegative(self) -> Interval {
        Interval {
            lo: self.lo.max(0.0),
            hi: self.hi,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

// Directed rounding from error-free transformations: `true = computed + err`
// exactly, so each endpoint moves one ulp only when the rounding went the
// wrong way.

fn round_lo(v: f64, err: f64) -> f64 {
    if err < 0.0 {
        v.next_down()
    } else {
        v
    }
}

fn round_hi(v: f64, err: f64) -> f64 {
    if err > 0.0 {
        v.next_up()
    } else {
        v
    }
}

/// `a + b = s + err` (Knuth's TwoSum).
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn sum_lo(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    round_lo(s, e)
}

fn sum_hi(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    round_hi(s, e)
}

/// `a b = p + err`.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `a / b = q + err` up to the sign of `err`.
fn quotient(a: f64, b: f64) -> (f64, f64) {
    let q = a / b;
    let r = (-q).mul_add(b, a);
    (q, if b > 0.0 { r } else { -r })
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval {
            lo: sum_lo(self.lo, o.lo),
            hi: sum_hi(self.hi, o.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        self + (-o)
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

fn hull_of(candidates: [(f64, f64); 4]) -> Interval {
    let lo = candidates
        .iter()
        .map(|&(v, e)| round_lo(v, e))
        .fold(f64::INFINITY, f64::min);
    let hi = candidates
        .iter()
        .map(|&(v, e)| round_hi(v, e))
        .fold(f64::NEG_INFINITY, f64::max);
    Interval { lo, hi }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        hull_of([
            two_prod(self.lo, o.lo),
            two_prod(self.lo, o.hi),
            two_prod(self.hi, o.lo),
            two_prod(self.hi, o.hi),
        ])
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        assert!(
            o.lo > 0.0 || o.hi < 0.0,
            "division by an interval containing 0"
        );
        hull_of([
            quotient(self.lo, o.lo),
            quotient(self.lo, o.hi),
            quotient(self.hi, o.lo),
            quotient(self.hi, o.hi),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn rational_enclosure() {
        let third = Interval::from_rational(&rat(1, 3));
        assert!(third.lo() < 1.0 / 3.0 + 1e-17 && third.hi() > 1.0 / 3.0 - 1e-17);
        assert!(third.width() > 0.0 && third.width() < 1e-15);
        assert_eq!(Interval::from_rational(&rat(3, 4)), Interval::point(0.75));
    }

    #[test]
    fn arithmetic_contains_exact_results() {
        let a = Interval::from_rational(&rat(1, 3));
        let b = Interval::from_rational(&rat(2, 7));
        // 1/3 + 2/7 = 13/21, 1/3 * 2/7 = 2/21, (1/3) / (2/7) = 7/6
        assert!((a + b).contains(13.0 / 21.0));
        assert!((a * b).contains(2.0 / 21.0));
        assert!((a / b).contains(7.0 / 6.0));
        assert!((a - b).contains(1.0 / 21.0));
        assert!((-a).contains(-1.0 / 3.0));
        assert!(Interval::point(1.0).exp().contains(std::f64::consts::E));
        assert!(Interval::point(2.0).powi(-2).contains(0.25));
    }

    #[test]
    fn set_operations() {
        let a = Interval::new(0.0, 2.0);
        let b = Interval::new(1.0, 3.0);
        assert_eq!(a.intersect(&b), Some(Interval::new(1.0, 2.0)));
        assert_eq!(a.hull(&b), Interval::new(0.0, 3.0));
        assert_eq!(a.intersect(&Interval::new(5.0, 6.0)), None);
    }

    #[test]
    fn exact_operations_stay_points() {
        let x = Interval::point(1.5) * Interval::point(2.0) + Interval::point(0.25);
        assert_eq!(x, Interval::point(3.25));
        assert_eq!(
            Interval::point(1.0) / Interval::point(4.0),
            Interval::point(0.25)
        );
        let third = Interval::point(1.0) / Interval::point(3.0);
        assert!(third.lo() < third.hi());
        let tiny = Interval::point(1.0) + Interval::point(1e-30);
        assert!(tiny.lo() == 1.0 && tiny.hi() > 1.0);
    }
}
