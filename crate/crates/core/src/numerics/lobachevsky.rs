//! Rigorous enclosures of the Lobachevsky function
//!
//! ```text
//! Λ(θ) = ½ Σ_{k≥1} sin(2kθ) / k²
//! ```
//!
//! Λ is odd and π-periodic. After reducing θ into [-π/2, π/2] the Fourier
//! series is summed to N terms in double-double precision and the result is
//! widened by three explicit error terms:
//!
//! * the series tail. Summation by parts against the bounded partial sums
//!   `|Σ sin(2kθ)| ≤ 1/|sin θ|` gives `|tail| ≤ 1/(2 (N+1)² |sin θ|)`; the
//!   cruder `1/(2N)` is used whenever it is smaller.
//! * a rounding budget per term: the argument `2kθ` is rounded once, the
//!   library sine is trusted to 8 ulp, and the division by k² is rounded once.
//! * the uncertainty of the reduced argument itself, through the modulus of
//!   continuity `|Λ(a) - Λ(b)| ≤ w (3 + |ln w|)` for `w = |a - b| ≤ 0.1`, which
//!   follows from `Λ'(θ) = -ln|2 sin θ|`.
//!
//! N is the smallest count for which the tail alone fits in half the requested
//! tolerance, capped at [`MAX_TERMS`].

use std::sync::OnceLock;

use super::constants::{pi_enclosure, pi_tail, PI_HI};
use super::rounding::{two_prod, two_sum};
use super::Interval;
use crate::par::{self, Execution};
use crate::{Error, Result};

/// Λ tolerance used whenever the caller does not choose one.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Upper limit on series terms for a single evaluation.
pub const MAX_TERMS: u64 = 1 << 24;

/// Terms per independently summed block. Blocks are fixed, so sequential and
/// parallel evaluation produce bit-identical sums.
const BLOCK: u64 = 1 << 15;

/// Max of Λ, attained at π/6 (0.50747080320...).
const LAMBDA_MAX: f64 = 0.507_470_804;

const U: f64 = f64::EPSILON / 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LobachevskyEval {
    pub theta: Interval,
    pub terms_used: u64,
    pub value: Interval,
}

/// Encloses Λ(θ) to within `tol` (plus rounding slop).
pub fn lobachevsky(theta: f64, tol: f64) -> Result<LobachevskyEval> {
    lobachevsky_interval(Interval::point(theta), tol, Execution::default())
}

/// Encloses Λ over every point of `theta`.
pub fn lobachevsky_interval(theta: Interval, tol: f64, exec: Execution) -> Result<LobachevskyEval> {
    if !theta.lo().is_finite() || !theta.hi().is_finite() {
        return Err(Error::Domain(format!("Λ of non-finite argument {theta}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("Λ tolerance must be positive, got {tol}")));
    }

    let reduced = reduce(theta);
    let t = reduced.mid();
    let spread = (t - reduced.lo()).max(reduced.hi() - t) * (1.0 + 4.0 * U);
    let global = Interval::new(-LAMBDA_MAX, LAMBDA_MAX);
    if spread > 0.1 {
        return Ok(LobachevskyEval {
            theta,
            terms_used: 0,
            value: global,
        });
    }

    let (series, terms_used) = series_at(t, tol, exec);
    let mut value = series.inflate(continuity_modulus(spread));

    // Near a zero of Λ the same modulus bounds |Λ| directly.
    let dist = t.abs() + spread;
    if dist < 0.1 {
        let e = continuity_modulus(dist);
        if let Some(v) = value.intersect(&Interval::new(-e, e)) {
            value = v;
        }
    }
    let value = value.intersect(&global).unwrap_or(value);

    Ok(LobachevskyEval {
        theta,
        terms_used,
        value,
    })
}

/// Shifts θ by a multiple of π towards [-π/2, π/2], carrying π in
/// double-double precision so the shift adds almost no width.
fn reduce(theta: Interval) -> Interval {
    let k = (theta.mid() / PI_HI).round();
    if k == 0.0 {
        return theta;
    }
    if !(k.abs() < 2f64.powi(60)) {
        // The multiple itself is too large to carry exactly.
        return theta - pi_enclosure().scale(k);
    }
    let (p, e) = two_prod(k, PI_HI);
    theta - Interval::point(p) - Interval::point(e) - pi_tail().scale(k)
}

/// `sup |Λ(a) - Λ(b)|` over `|a - b| ≤ w`, valid for `w ≤ 0.1`.
fn continuity_modulus(w: f64) -> f64 {
    if w == 0.0 {
        return 0.0;
    }
    // The constant 3 covers ln 2 + 1 + ln 2 with room for ln's rounding.
    w * (3.0 - w.ln()) * (1.0 + 1e-12)
}

/// Number of terms so that the tail of Σ sin(2kt)/k² is at most `tol`.
fn term_count(sin_lo: f64, tol: f64) -> u64 {
    let crude = (1.0 / tol).ceil();
    let dirichlet = if sin_lo > 0.0 {
        ((1.0 / (tol * sin_lo)).sqrt() * (1.0 + 1e-9)).ceil() - 1.0
    } else {
        f64::INFINITY
    };
    let n = crude.min(dirichlet).max(1.0);
    if n >= MAX_TERMS as f64 {
        MAX_TERMS
    } else {
        n as u64
    }
}

/// Bound on |Σ_{k>n} sin(2kt)/k²|.
fn tail_bound(n: u64, sin_lo: f64) -> f64 {
    let n = n as f64;
    let crude = 1.0 / n;
    if sin_lo > 0.0 {
        let d = 1.0 / ((n + 1.0) * (n + 1.0) * sin_lo);
        crude.min(d) * (1.0 + 1e-12)
    } else {
        crude * (1.0 + 1e-12)
    }
}

/// Enclosure of Λ(t) for a single double `t`.
fn series_at(t: f64, tol: f64, exec: Execution) -> (Interval, u64) {
    if t == 0.0 {
        return (Interval::ZERO, 0);
    }
    let sin_lo = t.sin().abs() * (1.0 - 8.0 * U) - f64::MIN_POSITIVE;
    let n = term_count(sin_lo, tol);

    let blocks: Vec<(u64, u64)> = (0..n.div_ceil(BLOCK))
        .map(|b| (b * BLOCK + 1, ((b + 1) * BLOCK).min(n)))
        .collect();
    let partials = par::map(exec, &blocks, |&(first, last)| block_sum(t, first, last));
    let sum = partials
        .into_iter()
        .fold(DoubleDouble::ZERO, |acc, p| acc.add_dd(p));

    let nf = n as f64;
    let harmonic = 1.0 + nf.ln();
    let rounding = 2.0
        * (2.0 * t.abs() * U * harmonic
            + 9.0 * U * 1.645
            + nf * 2f64.powi(-100) * (1.0 + sum.hi.abs()));
    let slop = tail_bound(n, sin_lo) + rounding;

    let total = Interval::point(sum.hi) + Interval::point(sum.lo);
    (total.inflate(slop).scale(0.5), n)
}

fn block_sum(t: f64, first: u64, last: u64) -> DoubleDouble {
    let mut acc = DoubleDouble::ZERO;
    for k in first..=last {
        let kf = k as f64;
        acc = acc.add_f64((2.0 * kf * t).sin() / (kf * kf));
    }
    acc
}

#[derive(Clone, Copy, Debug)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };

    fn add_f64(self, x: f64) -> Self {
        let (s, e) = two_sum(self.hi, x);
        let (hi, lo) = two_sum(s, e + self.lo);
        DoubleDouble { hi, lo }
    }

    fn add_dd(self, other: DoubleDouble) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let (hi, lo) = two_sum(s, e + self.lo + other.lo);
        DoubleDouble { hi, lo }
    }
}

static OCTAHEDRON: OnceLock<Interval> = OnceLock::new();

/// v₈ = 8 Λ(π/4) at [`DEFAULT_TOLERANCE`], computed once.
pub fn octahedron_volume() -> Interval {
    *OCTAHEDRON.get_or_init(|| {
        octahedron_volume_with_tol(DEFAULT_TOLERANCE, Execution::default())
            .expect("default tolerance is valid")
    })
}

/// Volume of the regular ideal hyperbolic octahedron, 8 Λ(π/4).
pub fn octahedron_volume_with_tol(tol: f64, exec: Execution) -> Result<Interval> {
    let quarter_pi = pi_enclosure().scale(0.25);
    let eval = lobachevsky_interval(quarter_pi, tol, exec)?;
    Ok(eval.value.scale(8.0))
}
