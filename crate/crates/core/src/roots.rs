//! Certified root bracketing for `f(n)` and the scan for the maximum of `R(n)`.

use serde::Serialize;

use crate::bounds::{self, ZeroCase, ZeroWindow};
use crate::numerics::Interval;
use crate::par::{self, Execution};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub bisections: u32,
}

impl RootBracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn certified_sign(v: Interval, at: f64) -> Result<bool> {
    if v.is_positive() {
        Ok(true)
    } else if v.is_negative() {
        Ok(false)
    } else {
        Err(Error::Inconclusive(format!("sign of f({at}) = {v}")))
    }
}

/// Bisects `f` on `[lo, hi]` until the bracket is at most `width` wide,
/// requiring a certified sign at every evaluated point.
pub fn bracket_f_root(lo: f64, hi: f64, width: f64) -> Result<RootBracket> {
    if !(lo < hi) || !(width > 0.0) {
        return Err(Error::Domain(format!("bad bracket [{lo}, {hi}] / width {width}")));
    }
    let (mut a, mut b) = (lo, hi);
    let sign_a = certified_sign(bounds::comparison_f(a)?, a)?;
    let sign_b = certified_sign(bounds::comparison_f(b)?, b)?;
    if sign_a == sign_b {
        return Err(Error::Domain(format!("f has the same sign at {lo} and {hi}")));
    }
    let mut bisections = 0;
    while b - a > width {
        let mid = 0.5 * (a + b);
        if certified_sign(bounds::comparison_f(mid)?, mid)? == sign_a {
            a = mid;
        } else {
            b = mid;
        }
        bisections += 1;
    }
    Ok(RootBracket { lo: a, hi: b, bisections })
}

/// The default bracket: the root of `f` between 59 and 60, to 10⁻³.
pub fn f_root() -> Result<RootBracket> {
    bracket_f_root(59.0, 60.0, 1e-3)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RMaxScan {
    pub location: f64,
    pub value: Interval,
    pub samples: usize,
}

/// Evaluates `R` on `start, start + step, …, end` and returns the sample
/// whose enclosure midpoint is largest.
pub fn r_max_scan(start: f64, end: f64, step: f64, exec: Execution) -> Result<RMaxScan> {
    if !(start < end) || !(step > 0.0) {
        return Err(Error::Domain(format!("bad scan [{start}, {end}] step {step}")));
    }
    let count = ((end - start) / step).round() as usize + 1;
    let grid: Vec<f64> = (0..count).map(|i| start + i as f64 * step).collect();
    let values = par::map(exec, &grid, |&n| bounds::r_of_n(n));
    let mut best: Option<(f64, Interval)> = None;
    for (n, v) in grid.iter().zip(values) {
        let v = v?;
        if best.is_none_or(|(_, b)| v.mid() > b.mid()) {
            best = Some((*n, v));
        }
    }
    let (location, value) = best.expect("grid is non-empty");
    Ok(RMaxScan { location, value, samples: count })
}

/// The default scan over `[29, 30.5]` in steps of 10⁻³.
pub fn r_max(exec: Execution) -> Result<RMaxScan> {
    r_max_scan(29.0, 30.5, 1e-3, exec)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WindowRow {
    pub n: i64,
    pub window: ZeroWindow,
}

/// Zero windows of `f(n, ·)` for both parity cases of each `n` in range.
pub fn zero_windows(min_n: i64, max_n: i64, exec: Execution) -> Result<Vec<WindowRow>> {
    let cases: Vec<(i64, ZeroCase)> = (min_n..=max_n)
        .flat_map(|n| {
            ZeroCase::ALL
                .into_iter()
                .filter(move |c| c.n_is_even() == (n % 2 == 0))
                .map(move |c| (n, c))
        })
        .collect();
    par::map(exec, &cases, |&(n, case)| {
        bounds::zero_window(n, case).map(|window| WindowRow { n, window })
    })
    .into_iter()
    .collect()
}
