use std::sync::OnceLock;

use crate::numerics::{self, Interval, DEFAULT_TOLERANCE};
use crate::par::Execution;
use crate::{Error, Result};

/// Evaluation settings shared by every volume computation: the Lobachevsky
/// tolerance, the v₈ enclosure it produces, and the execution mode for
/// batch work.
#[derive(Clone, Debug)]
pub struct Context {
    lambda_tol: f64,
    v8: Interval,
    exec: Execution,
}

static STANDARD: OnceLock<Context> = OnceLock::new();

impl Context {
    pub fn new(lambda_tol: f64) -> Result<Self> {
        if !(lambda_tol > 0.0 && lambda_tol < 1.0) {
            return Err(Error::Domain(format!(
                "tolerance must lie in (0, 1), got {lambda_tol}"
            )));
        }
        let exec = Execution::default();
        let v8 = if lambda_tol == DEFAULT_TOLERANCE {
            numerics::octahedron_volume()
        } else {
            numerics::octahedron_volume_with_tol(lambda_tol, exec)?
        };
        Ok(Context {
            lambda_tol,
            v8,
            exec,
        })
    }

    /// Shared context at the default tolerance.
    pub fn standard() -> &'static Context {
        STANDARD.get_or_init(|| Context::new(DEFAULT_TOLERANCE).expect("default tolerance"))
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn lambda_tol(&self) -> f64 {
        self.lambda_tol
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn octahedron_volume(&self) -> Interval {
        self.v8
    }

    /// Λ over an interval argument at this context's tolerance.
    pub fn lobachevsky(&self, theta: Interval) -> Result<Interval> {
        Ok(numerics::lobachevsky_interval(theta, self.lambda_tol, self.exec)?.value)
    }
}

impl Default for Context {
    fn default() -> Self {
        Context::standard().clone()
    }
}
