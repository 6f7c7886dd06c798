//! Volume lower bounds from Dehn filling, the Whitehead cover volumes they are
//! compared against, and the comparison functions `f(n)`, `f(n, m)`, `R(n)`.

use serde::Serialize;

use crate::context::Context;
use crate::cusp::{self, BaseFamily, SlopeSpec};
use crate::numerics::{four_pi_squared, pi_enclosure, two_pi, Interval};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FillingBound {
    pub slope: Option<SlopeSpec>,
    pub slope_length: Interval,
    /// Exact ℓ², when the slope came from a [`SlopeSpec`].
    pub slope_length_sq: Option<i64>,
    pub unfilled_volume: Interval,
    pub lower_bound: Interval,
    /// Whether ℓ > 2π is certified. Otherwise `lower_bound` is the vacuous
    /// `[0, unfilled_volume.hi]`.
    pub applicable: bool,
}

/// `(1 - 4π²/ℓ²)^{3/2}` for a certified `ℓ² > 4π²`.
fn fkp_factor(length_sq: Interval) -> Option<Interval> {
    let four_pi_sq = four_pi_squared();
    if !(length_sq.lo() > four_pi_sq.hi()) {
        return None;
    }
    let ratio = four_pi_sq.checked_div(&length_sq).ok()?;
    let base = Interval::ONE - ratio;
    let factor = base.pow_3_2().ok()?;
    factor.intersect(&Interval::new(0.0, 1.0))
}

fn filling_bound(
    unfilled: Interval,
    length: Interval,
    length_sq: Interval,
    applicable_length: bool,
) -> FillingBound {
    let certified = applicable_length
        .then(|| fkp_factor(length_sq))
        .flatten()
        .filter(|_| unfilled.lo() > 0.0)
        .map(|k| unfilled * k)
        .filter(|lb| lb.lo() > 0.0);
    let applicable = certified.is_some();
    let lower_bound = certified.unwrap_or_else(|| Interval::new(0.0, unfilled.hi().max(0.0)));
    FillingBound {
        slope: None,
        slope_length: length,
        slope_length_sq: None,
        unfilled_volume: unfilled,
        lower_bound,
        applicable,
    }
}

/// Dehn filling bound `vol(M(s)) ≥ (1 - (2π/ℓ)²)^{3/2} vol(M)`, valid when
/// the slope is longer than 2π.
pub fn fkp_lower_bound(unfilled_volume: Interval, slope_length: Interval) -> FillingBound {
    let long_enough = slope_length.lo() > two_pi().hi();
    filling_bound(
        unfilled_volume,
        slope_length,
        slope_length.square(),
        long_enough,
    )
}

/// The same bound for an exact slope, using its integer ℓ² directly.
pub fn slope_filling_bound(unfilled_volume: Interval, slope: &SlopeSpec) -> FillingBound {
    let sq = cusp::slope_length_squared(slope);
    let length = cusp::slope_length(slope);
    let mut b = filling_bound(unfilled_volume, length, Interval::from_int(sq), true);
    b.slope = Some(*slope);
    b.slope_length_sq = Some(sq);
    b
}

/// Splits a signed half-twist count into `(family, m)`: `r = 2m` fills `Ŵₙ`,
/// `r = 2m + 1` fills `W̄ₙ`.
pub fn split_half_twists(r: i64) -> (BaseFamily, i64) {
    let family = if r.rem_euclid(2) == 0 {
        BaseFamily::MinTwistBase
    } else {
        BaseFamily::HalfTwistBase
    };
    (family, r.div_euclid(2))
}

/// ℓ² written directly in the four parity cases of `(n, r)`.
pub fn chain_radicand(n: i64, r: i64) -> i64 {
    let (_, m) = split_half_twists(r);
    match (n % 2 == 0, r.rem_euclid(2) == 0) {
        (true, true) => n * n + 16 * m * m,
        (true, false) => n * n + 16 * m * m + 16 * m + 4,
        (false, true) => n * n + 16 * m * m + (1 + 8 * m),
        (false, false) => n * n + 16 * m * m + (1 - 8 * m),
    }
}

pub fn slope_for_chain(n: i64, r: i64) -> Result<SlopeSpec> {
    let (family, m) = split_half_twists(r);
    SlopeSpec::new(n, m, family)
}

/// Lower bound on the volume of the n-chain link with `r` signed half-twists.
pub fn chain_volume_lower_bound(ctx: &Context, n: i64, r: i64) -> Result<FillingBound> {
    let slope = slope_for_chain(n, r)?;
    debug_assert_eq!(cusp::slope_length_squared(&slope), chain_radicand(n, r));
    let unfilled = ctx.octahedron_volume().scale(n as f64);
    Ok(slope_filling_bound(unfilled, &slope))
}

/// `vol(W_{n-1}) = (n - 1) v₈`.
pub fn whitehead_cover_volume(ctx: &Context, n: i64) -> Result<Interval> {
    if n < 2 {
        return Err(Error::Domain(format!("W_(n-1) needs n >= 2, got {n}")));
    }
    Ok(ctx.octahedron_volume().scale((n - 1) as f64))
}

fn f_from_length_sq(n: f64, length_sq: Interval) -> Result<Interval> {
    let factor = fkp_factor(length_sq).ok_or_else(|| {
        Error::Domain(format!("slope length squared {length_sq} is not above 4π²"))
    })?;
    let n_iv = Interval::point(n);
    let ratio = n_iv.checked_div(&(n_iv - Interval::ONE))?;
    Ok(ratio * factor - Interval::ONE)
}

/// `f(n) = n/(n-1) (1 - 4π²/n²)^{3/2} - 1`, positive exactly where the
/// minimally twisted bound beats `(n - 1) v₈`.
pub fn comparison_f(n: f64) -> Result<Interval> {
    if !n.is_finite() || !(n > two_pi().hi()) {
        return Err(Error::Domain(format!("f(n) needs n > 2π, got {n}")));
    }
    f_from_length_sq(n, Interval::point(n).square())
}

/// `6π² + 2π √(9π² - 2)`, where `f` turns from increasing to decreasing.
pub fn f_critical_point() -> Interval {
    let pi = pi_enclosure();
    let pi_sq = pi.square();
    let root = (pi_sq.scale(9.0) - Interval::point(2.0))
        .sqrt()
        .expect("9π² - 2 is positive");
    pi_sq.scale(6.0) + pi.scale(2.0) * root
}

/// `f(n, m)`: the comparison function with the twisted slope length.
pub fn comparison_f_nm(n: i64, m: i64, family: BaseFamily) -> Result<Interval> {
    let slope = SlopeSpec::new(n, m, family)?;
    let sq = cusp::slope_length_squared(&slope);
    f_from_length_sq(n as f64, Interval::from_int(sq))
}

/// `R(n) = ½ √(π² / (1 - ((n-1)/n)^{2/3}) - n²/4)`, the half-width of the
/// zero window of `f(n, ·)`.
///
/// A certified negative radicand means `f(n, ·)` has no real zero; a radicand
/// straddling zero is inconclusive.
pub fn r_of_n(n: f64) -> Result<Interval> {
    if !n.is_finite() || !(n > 1.0) {
        return Err(Error::Domain(format!("R(n) needs n > 1, got {n}")));
    }
    let n_iv = Interval::point(n);
    let q = (n_iv - Interval::ONE).checked_div(&n_iv)?.square().cbrt()?;
    let gap = Interval::ONE - q;
    let radicand = pi_enclosure().square().checked_div(&gap)? - n_iv.square().scale(0.25);
    if radicand.hi() < 0.0 {
        return Err(Error::Domain(format!(
            "f({n}, ·) has no real zero: R(n)² = {radicand}"
        )));
    }
    if radicand.lo() < 0.0 {
        return Err(Error::Inconclusive(format!("sign of R({n})² = {radicand}")));
    }
    Ok(radicand.sqrt()?.scale(0.5))
}

/// Parity of `n` and of the half-twist count `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ZeroCase {
    EvenNEvenR,
    EvenNOddR,
    OddNEvenR,
    OddNOddR,
}

impl ZeroCase {
    pub const ALL: [ZeroCase; 4] = [
        ZeroCase::EvenNEvenR,
        ZeroCase::EvenNOddR,
        ZeroCase::OddNEvenR,
        ZeroCase::OddNOddR,
    ];

    pub fn of(n: i64, family: BaseFamily) -> ZeroCase {
        match (n % 2 == 0, family) {
            (true, BaseFamily::MinTwistBase) => ZeroCase::EvenNEvenR,
            (true, BaseFamily::HalfTwistBase) => ZeroCase::EvenNOddR,
            (false, BaseFamily::MinTwistBase) => ZeroCase::OddNEvenR,
            (false, BaseFamily::HalfTwistBase) => ZeroCase::OddNOddR,
        }
    }

    pub fn family(&self) -> BaseFamily {
        match self {
            ZeroCase::EvenNEvenR | ZeroCase::OddNEvenR => BaseFamily::MinTwistBase,
            ZeroCase::EvenNOddR | ZeroCase::OddNOddR => BaseFamily::HalfTwistBase,
        }
    }

    pub fn n_is_even(&self) -> bool {
        matches!(self, ZeroCase::EvenNEvenR | ZeroCase::EvenNOddR)
    }

    pub fn center_shift(&self) -> f64 {
        match self {
            ZeroCase::EvenNEvenR => 0.0,
            ZeroCase::EvenNOddR => -0.5,
            ZeroCase::OddNEvenR => -0.25,
            ZeroCase::OddNOddR => 0.25,
        }
    }
}

/// The zeros of `f(n, ·)` are `center_shift ± radius`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroWindow {
    pub case: ZeroCase,
    pub center_shift: f64,
    pub radius: Interval,
}

impl ZeroWindow {
    /// Enclosure of the lower zero.
    pub fn lower(&self) -> Interval {
        Interval::point(self.center_shift) - self.radius
    }

    /// Enclosure of the upper zero.
    pub fn upper(&self) -> Interval {
        Interval::point(self.center_shift) + self.radius
    }

    /// Whether the real `m` lies certainly strictly inside, certainly outside,
    /// or too close to call.
    pub fn locate(&self, m: f64) -> Option<bool> {
        let m = Interval::point(m);
        if m.certainly_gt(&self.lower()) && m.certainly_lt(&self.upper()) {
            Some(true)
        } else if m.certainly_lt(&self.lower()) || m.certainly_gt(&self.upper()) {
            Some(false)
        } else {
            None
        }
    }
}

pub fn zero_window(n: i64, case: ZeroCase) -> Result<ZeroWindow> {
    if (n % 2 == 0) != case.n_is_even() {
        return Err(Error::Domain(format!("{case:?} does not apply to n = {n}")));
    }
    Ok(ZeroWindow {
        case,
        center_shift: case.center_shift(),
        radius: r_of_n(n as f64)?,
    })
}

/// `vol(S³ ∖ C₂ₖ) = 8k (Λ(π/4 + π/2k) + Λ(π/4 - π/2k))` for the minimally
/// twisted chain with `n2 = 2k` components.
pub fn thurston_even_volume(ctx: &Context, n2: i64) -> Result<Interval> {
    if n2 < 6 || n2 % 2 != 0 {
        return Err(Error::Unsupported {
            n: n2,
            reason: "the closed form covers even chains with at least six components",
        });
    }
    if n2 > cusp::MAX_N {
        return Err(Error::Overflow(format!("n = {n2} exceeds {}", cusp::MAX_N)));
    }
    let k = n2 / 2;
    let pi = pi_enclosure();
    let quarter = pi.scale(0.25);
    let step = pi.checked_div(&Interval::from_int(2 * k))?;
    let sum = ctx.lobachevsky(quarter + step)? + ctx.lobachevsky(quarter - step)?;
    Ok(sum.scale(8.0 * k as f64))
}

/// `vol(S³ ∖ C₂ₙ) - (2n - 1) v₈`.
pub fn masai_difference(ctx: &Context, n: i64) -> Result<Interval> {
    if n < 6 {
        return Err(Error::Domain(format!("the difference is studied for n >= 6, got {n}")));
    }
    let cover = whitehead_cover_volume(ctx, 2 * n)?;
    Ok(thurston_even_volume(ctx, 2 * n)? - cover)
}
