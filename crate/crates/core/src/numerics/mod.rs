//! Certified real arithmetic: outward-rounded intervals, the constants π and
//! v₈, and the Lobachevsky function.

mod constants;
mod interval;
mod lobachevsky;
mod rounding;

pub use constants::{four_pi_squared, pi_enclosure, two_pi};
pub use interval::{iv_basic, iv_pow_3_2, iv_sqrt, BasicOp, Interval};
pub use lobachevsky::{
    lobachevsky, lobachevsky_interval, octahedron_volume, octahedron_volume_with_tol,
    LobachevskyEval, DEFAULT_TOLERANCE, MAX_TERMS,
};
