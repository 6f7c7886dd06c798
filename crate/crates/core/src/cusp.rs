//! Cusp cross-sections of the Whitehead link pieces and slope lengths on the
//! solid-torus cusp of the chain link covers.
//!
//! The solid-torus boundary of `Ŵₙ` (and of its half-twisted sibling `W̄ₙ`)
//! is tiled by squares of side √2, one per octahedral face. We measure every
//! slope in units of that side, so a slope is an integer [`LatticeVector`]
//! and its squared length is an exact integer.
//!
//! Orientation convention: for odd n the two mirror-image minimally twisted
//! chains are not distinguished. `Ŵₙ` is always assembled from
//! `⌊n/2⌋ + ε` copies of `W₁` (cusp `K`) and `⌊n/2⌋` copies of `W̄₁`
//! (cusp `K̄`); the mirror assembly gives the same lengths with `m ↦ -m`
//! swapped between the two families.

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use serde::Serialize;

use crate::numerics::Interval;
use crate::{Error, Result};

/// Largest supported chain size; keeps every ℓ² well inside 2^53.
pub const MAX_N: i64 = 1_000_000;

/// Largest supported |m|.
pub const MAX_TWIST: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CuspComponent {
    K,
    Kbar,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspShape {
    pub meridian_length: f64,
    pub longitude_length: f64,
    /// Signed angle measured from meridian to longitude.
    pub meridian_to_longitude_angle: f64,
}

/// Maximal-horocusp shape of a Whitehead link component.
pub fn cusp_shape(component: CuspComponent) -> CuspShape {
    let angle = match component {
        CuspComponent::K => -FRAC_PI_4,
        CuspComponent::Kbar => FRAC_PI_4,
    };
    CuspShape {
        meridian_length: SQRT_2,
        longitude_length: 4.0,
        meridian_to_longitude_angle: angle,
    }
}

/// Which solid-torus manifold is being filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BaseFamily {
    /// `Ŵₙ`, slopes `λₙ + m μₙ`; filling gives `2m` extra half-twists.
    MinTwistBase,
    /// `W̄ₙ`, slopes `λ̄ₙ + m μ̄ₙ`; filling gives `2m + 1` extra half-twists.
    HalfTwistBase,
}

impl BaseFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            BaseFamily::MinTwistBase => "hatW",
            BaseFamily::HalfTwistBase => "barW",
        }
    }
}

/// The slope `(1, m)` on the solid-torus cusp of `Ŵₙ` or `W̄ₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SlopeSpec {
    n: i64,
    m: i64,
    family: BaseFamily,
}

impl SlopeSpec {
    pub fn new(n: i64, m: i64, family: BaseFamily) -> Result<Self> {
        check_n(n)?;
        if m.abs() > MAX_TWIST {
            return Err(Error::Overflow(format!("|m| = {} exceeds {MAX_TWIST}", m.abs())));
        }
        Ok(SlopeSpec { n, m, family })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn family(&self) -> BaseFamily {
        self.family
    }

    /// `n mod 2`.
    pub fn epsilon(&self) -> i64 {
        self.n % 2
    }

    /// Signed half-twists relative to the minimally twisted chain.
    pub fn half_twists(&self) -> i64 {
        match self.family {
            BaseFamily::MinTwistBase => 2 * self.m,
            BaseFamily::HalfTwistBase => 2 * self.m + 1,
        }
    }
}

fn check_n(n: i64) -> Result<()> {
    if n < 5 {
        return Err(Error::Unsupported {
            n,
            reason: "chain link complements are hyperbolic only for n >= 5",
        });
    }
    if n > MAX_N {
        return Err(Error::Overflow(format!("n = {n} exceeds {MAX_N}")));
    }
    Ok(())
}

/// A vector on the cusp torus, counted in steps of √2 along each axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct LatticeVector {
    pub steps_x: i64,
    pub steps_y: i64,
}

impl LatticeVector {
    pub fn x(&self) -> f64 {
        SQRT_2 * self.steps_x as f64
    }

    pub fn y(&self) -> f64 {
        SQRT_2 * self.steps_y as f64
    }

    /// Exact squared Euclidean length, `2 (a² + b²)`.
    pub fn squared_norm(&self) -> i64 {
        2 * (self.steps_x * self.steps_x + self.steps_y * self.steps_y)
    }

    fn plus(self, other: LatticeVector) -> LatticeVector {
        LatticeVector {
            steps_x: self.steps_x + other.steps_x,
            steps_y: self.steps_y + other.steps_y,
        }
    }

    fn times(self, k: i64) -> LatticeVector {
        LatticeVector {
            steps_x: self.steps_x * k,
            steps_y: self.steps_y * k,
        }
    }
}

/// The meridian of each piece's cusp, as it appears on the solid torus.
/// Meridians of `K` and `K̄` copies meet at right angles.
fn meridian_step(component: CuspComponent) -> LatticeVector {
    match component {
        CuspComponent::K => LatticeVector { steps_x: 1, steps_y: 0 },
        CuspComponent::Kbar => LatticeVector { steps_x: 0, steps_y: 1 },
    }
}

/// One run along a 2-punctured disk: the longitude of `K` (length 4) at
/// angle -π/4 from the horizontal meridian, i.e. `(2√2, -2√2)`.
fn twist_step() -> LatticeVector {
    LatticeVector { steps_x: 2, steps_y: -2 }
}

/// Cusp pieces glued end to end around the solid torus.
///
/// `Ŵₙ` alternates `W₁, W̄₁`, with one extra `W₁` when n is odd. `W̄ₙ`
/// swaps the last `W̄₁` for a `W₁` when n is even, and the last `W₁` for a
/// `W̄₁` when n is odd.
pub fn piece_sequence(n: i64, family: BaseFamily) -> Result<Vec<CuspComponent>> {
    check_n(n)?;
    let mut pieces: Vec<CuspComponent> = (0..n)
        .map(|i| if i % 2 == 0 { CuspComponent::K } else { CuspComponent::Kbar })
        .collect();
    if family == BaseFamily::HalfTwistBase {
        let target = if n % 2 == 0 { CuspComponent::Kbar } else { CuspComponent::K };
        let replacement = if n % 2 == 0 { CuspComponent::K } else { CuspComponent::Kbar };
        if let Some(last) = pieces.iter_mut().rev().find(|p| **p == target) {
            *last = replacement;
        }
    }
    Ok(pieces)
}

/// Squared length of the solid-torus longitude of `Ŵₙ`: `n² + (n mod 2)`.
pub fn longitude_length_squared(n: i64) -> Result<i64> {
    check_n(n)?;
    Ok(n * n + n % 2)
}

/// Exact squared length of the filling slope, from the closed forms.
pub fn slope_length_squared(s: &SlopeSpec) -> i64 {
    let (n, m, eps) = (s.n, s.m, s.epsilon());
    match s.family {
        BaseFamily::MinTwistBase => n * n + 16 * m * m + eps * (1 + 8 * m),
        BaseFamily::HalfTwistBase if eps == 0 => n * n + 4 * (1 + 2 * m) * (1 + 2 * m),
        BaseFamily::HalfTwistBase => n * n + 16 * m * m + (1 - 8 * m),
    }
}

pub fn slope_length(s: &SlopeSpec) -> Interval {
    Interval::from_int(slope_length_squared(s))
        .sqrt()
        .expect("squared slope lengths are positive")
}

/// Endpoint of the slope, obtained by walking once around the solid torus
/// through every glued piece and then `m` times along a 2-punctured disk.
pub fn slope_walk(s: &SlopeSpec) -> LatticeVector {
    let longitude = piece_sequence(s.n, s.family)
        .expect("SlopeSpec holds a valid n")
        .into_iter()
        .map(meridian_step)
        .fold(LatticeVector::default(), LatticeVector::plus);
    longitude.plus(twist_step().times(s.m))
}
