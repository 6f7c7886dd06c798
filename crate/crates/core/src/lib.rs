#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Certified volume bounds for hyperbolic chain link complements.
//!
//! The crate encloses every real quantity in an outward-rounded [`Interval`]
//! and only reports a verdict when enclosures are strictly separated.
//!
//! * [`numerics`]: interval arithmetic, π, v₈ and the Lobachevsky function.
//! * [`cusp`]: slope lengths on the solid-torus cusp of the chain link covers.
//! * [`bounds`]: Dehn filling lower bounds and the comparison functions.
//! * [`classify`]: per-link verdicts and the residual case enumeration.
//! * [`reference`]: the bundled reference volume tables and their verification.

pub mod bounds;
pub mod classify;
pub mod context;
pub mod cusp;
pub mod decimal;
mod error;
pub mod numerics;
pub mod par;
pub mod reference;
pub mod report;
pub mod roots;

pub use context::Context;
pub use error::{Error, Result};
pub use numerics::Interval;
pub use par::Execution;
