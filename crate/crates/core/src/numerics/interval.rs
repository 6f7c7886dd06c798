use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::rounding;
use crate::{Error, Result};

/// A closed real interval `[lo, hi]` with outward-rounded endpoints.
///
/// Every operation returns an interval containing the exact result of the
/// operation applied to any points of the operands.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Binary operations accepted by [`iv_basic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Panics unless `lo <= hi` (which also rejects NaN).
    pub fn new(lo: f64, hi: f64) -> Self {
        Self::try_new(lo, hi).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_new(lo: f64, hi: f64) -> Result<Self> {
        if lo <= hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::Domain(format!("invalid interval [{lo}, {hi}]")))
        }
    }

    pub const fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Exact enclosure of an integer. Integers beyond 2^53 get a one-step
    /// widening around the nearest double.
    pub fn from_int(v: i64) -> Self {
        const EXACT: i64 = 1 << 53;
        let x = v as f64;
        if (-EXACT..=EXACT).contains(&v) {
            Interval::point(x)
        } else {
            Interval::new(x.next_down(), x.next_up())
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Midpoint, rounded to nearest. Always lies inside the interval.
    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> f64 {
        rounding::sub(self.hi, self.lo).1
    }

    /// Upper bound on `max |x|` over the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
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

    /// Certified `x > 0` for every point.
    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    /// Certified `x < 0` for every point.
    pub fn is_negative(&self) -> bool {
        self.hi < 0.0
    }

    /// Strict separation: every point of `self` is below every point of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    /// `[mid - r, mid + r]` rounded outward.
    pub fn around(mid: f64, radius: f64) -> Interval {
        let r = radius.abs();
        Interval {
            lo: rounding::sub(mid, r).0,
            hi: rounding::add(mid, r).1,
        }
    }

    /// Widens both endpoints outward by `r >= 0`.
    pub fn inflate(&self, r: f64) -> Interval {
        let r = r.abs();
        Interval {
            lo: rounding::sub(self.lo, r).0,
            hi: rounding::add(self.hi, r).1,
        }
    }

    pub fn checked_div(&self, rhs: &Interval) -> Result<Interval> {
        if rhs.contains(0.0) {
            return Err(Error::Domain(format!(
                "division by an interval containing zero: {rhs}"
            )));
        }
        Ok(corners(self, rhs, rounding::div))
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::ONE.checked_div(self)
    }

    pub fn square(&self) -> Interval {
        let a = self.lo.abs().min(self.hi.abs());
        let b = self.mag();
        let hi = rounding::mul(b, b).1;
        if self.contains(0.0) {
            Interval { lo: 0.0, hi }
        } else {
            Interval {
                lo: rounding::mul(a, a).0,
                hi,
            }
        }
    }

    pub fn sqrt(&self) -> Result<Interval> {
        if !(self.lo >= 0.0) {
            return Err(Error::Domain(format!("square root of {self}")));
        }
        Ok(Interval {
            lo: rounding::sqrt(self.lo).0,
            hi: rounding::sqrt(self.hi).1,
        })
    }

    /// `x^(3/2)` for nonnegative `x`; monotone, so endpoints map to endpoints.
    pub fn pow_3_2(&self) -> Result<Interval> {
        if !(self.lo >= 0.0) {
            return Err(Error::Domain(format!("x^(3/2) of {self}")));
        }
        let root = self.sqrt()?;
        Ok(*self * root)
    }

    /// Real cube root of a nonnegative interval.
    ///
    /// The library `cbrt` is only a starting guess; each endpoint is then
    /// stepped until its cube is certified to sit on the correct side.
    pub fn cbrt(&self) -> Result<Interval> {
        if !(self.lo >= 0.0) || !self.hi.is_finite() {
            return Err(Error::Domain(format!("cube root of {self}")));
        }
        let cube_up = |c: f64| {
            let sq = rounding::mul(c, c).1;
            rounding::mul(sq, c).1
        };
        let cube_down = |c: f64| {
            let sq = rounding::mul(c, c).0;
            rounding::mul(sq, c).0
        };
        let mut lo = self.lo.cbrt();
        while lo > 0.0 && cube_up(lo) > self.lo {
            lo = lo.next_down();
        }
        let mut hi = self.hi.cbrt();
        while cube_down(hi) < self.hi {
            hi = hi.next_up();
        }
        Ok(Interval {
            lo: lo.max(0.0),
            hi,
        })
    }

    /// `self * k` for an exact scalar.
    pub fn scale(&self, k: f64) -> Interval {
        *self * Interval::point(k)
    }
}

fn corners(a: &Interval, b: &Interval, op: fn(f64, f64) -> (f64, f64)) -> Interval {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for x in [a.lo, a.hi] {
        for y in [b.lo, b.hi] {
            let (l, h) = op(x, y);
            lo = lo.min(l);
            hi = hi.max(h);
        }
    }
    Interval { lo, hi }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: rounding::add(self.lo, rhs.lo).0,
            hi: rounding::add(self.hi, rhs.hi).1,
        }
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: rounding::sub(self.lo, rhs.hi).0,
            hi: rounding::sub(self.hi, rhs.lo).1,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        corners(&self, &rhs, rounding::mul)
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

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

/// One certified binary operation.
pub fn iv_basic(a: Interval, b: Interval, op: BasicOp) -> Result<Interval> {
    match op {
        BasicOp::Add => Ok(a + b),
        BasicOp::Sub => Ok(a - b),
        BasicOp::Mul => Ok(a * b),
        BasicOp::Div => a.checked_div(&b),
    }
}

pub fn iv_sqrt(a: Interval) -> Result<Interval> {
    a.sqrt()
}

pub fn iv_pow_3_2(a: Interval) -> Result<Interval> {
    a.pow_3_2()
}
