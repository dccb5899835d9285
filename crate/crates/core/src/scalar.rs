//! Scalar functions of one variable with a first derivative, used for
//! curvature profiles (`f(phi)`, `k1(s)`, `theta(s)`).

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exprdsl::Expr;
use crate::numeric::MonotoneTable;

#[derive(Clone)]
pub enum ScalarFn {
    Const(f64),
    /// Expression in the variable `u`, with its derivative.
    Expr { expr: Expr, deriv: Expr },
    /// Hermite interpolation of tabulated values, clamped outside the table.
    Table(MonotoneTable),
    /// Closure returning `(value, derivative)`.
    Func(Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>),
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarFn::Const(c) => write!(f, "Const({c})"),
            ScalarFn::Expr { expr, .. } => write!(f, "Expr({expr})"),
            ScalarFn::Table(t) => write!(f, "Table({} rows)", t.x.len()),
            ScalarFn::Func(_) => f.write_str("Func(..)"),
        }
    }
}

impl ScalarFn {
    pub fn expr(expr: Expr) -> Self {
        let deriv = expr.differentiate();
        ScalarFn::Expr { expr, deriv }
    }

    pub fn parse(src: &str) -> Result<Self> {
        Ok(Self::expr(src.parse()?))
    }

    pub fn func<F: Fn(f64) -> (f64, f64) + Send + Sync + 'static>(f: F) -> Self {
        ScalarFn::Func(Arc::new(f))
    }

    /// Table over strictly increasing `x` with finite-difference slopes.
    pub fn table(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() < 2 || x.len() != y.len() || !x.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::InvalidInput("scalar table needs >= 2 rows with increasing x".into()));
        }
        Ok(ScalarFn::Table(MonotoneTable::from_samples(x, y)))
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        let v = match self {
            ScalarFn::Const(c) => *c,
            ScalarFn::Expr { expr, .. } => expr.eval(x)?,
            ScalarFn::Table(t) => t.eval(x.clamp(t.first_x(), t.last_x())),
            ScalarFn::Func(f) => f(x).0,
        };
        finite(v, x)
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        let v = match self {
            ScalarFn::Const(_) => 0.0,
            ScalarFn::Expr { deriv, .. } => deriv.eval(x)?,
            ScalarFn::Table(t) => {
                if x < t.first_x() || x > t.last_x() {
                    0.0
                } else {
                    t.slope(x)
                }
            }
            ScalarFn::Func(f) => f(x).1,
        };
        finite(v, x)
    }

    /// `Some(c)` when the function is known to be the constant `c`.
    pub fn as_constant(&self) -> Option<f64> {
        match self {
            ScalarFn::Const(c) => Some(*c),
            ScalarFn::Expr { expr, .. } if expr.is_constant() => expr.eval(0.0).ok(),
            _ => None,
        }
    }
}

impl From<f64> for ScalarFn {
    fn from(c: f64) -> Self {
        ScalarFn::Const(c)
    }
}

impl From<Expr> for ScalarFn {
    fn from(e: Expr) -> Self {
        ScalarFn::expr(e)
    }
}

fn finite(v: f64, at: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain { at, reason: "non-finite function value" })
    }
}
