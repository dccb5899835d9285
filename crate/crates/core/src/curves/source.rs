use alloc::format;
use alloc::vec::Vec;

use super::{CurveSource, Jet};
use crate::error::{Error, Result};
use crate::exprdsl::Expr;
use crate::lorentz::MVec3;
use crate::numeric::{bracket, fd_weights};

/// Curve given by three expressions in `u`, differentiated structurally.
#[derive(Debug, Clone)]
pub struct ExprCurve {
    exprs: [Expr; 3],
    // derivatives[c][k] is the k-th derivative of component c
    derivatives: [Vec<Expr>; 3],
}

impl ExprCurve {
    pub fn new(x1: Expr, x2: Expr, x3: Expr) -> Self {
        let derivatives = [x1.derivatives(3), x2.derivatives(3), x3.derivatives(3)];
        ExprCurve { exprs: [x1, x2, x3], derivatives }
    }

    pub fn parse(x1: &str, x2: &str, x3: &str) -> Result<Self> {
        Ok(Self::new(x1.parse()?, x2.parse()?, x3.parse()?))
    }

    pub fn components(&self) -> &[Expr; 3] {
        &self.exprs
    }
}

impl CurveSource for ExprCurve {
    fn jet(&self, u: f64) -> Result<Jet> {
        let mut out = [MVec3::ZERO; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = MVec3::try_new(
                self.derivatives[0][k].eval(u)?,
                self.derivatives[1][k].eval(u)?,
                self.derivatives[2][k].eval(u)?,
            )?;
        }
        Ok(out)
    }
}

/// Curve from a closure returning the jet directly.
pub struct FnCurve<F> {
    f: F,
}

impl<F> FnCurve<F>
where
    F: Fn(f64) -> Jet + Send + Sync,
{
    pub fn new(f: F) -> Self {
        FnCurve { f }
    }
}

impl<F> CurveSource for FnCurve<F>
where
    F: Fn(f64) -> Jet + Send + Sync,
{
    fn jet(&self, u: f64) -> Result<Jet> {
        Ok((self.f)(u))
    }
}

/// Curve known only at sample points.
///
/// The jet at `u` comes from the degree-7 polynomial through the eight
/// samples around `u` (finite-difference weights at arbitrary points), so
/// first derivatives are accurate to `O(h^7)` and third derivatives to
/// `O(h^5)` on smooth data.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    u: Vec<f64>,
    points: Vec<MVec3>,
}

pub const MIN_SAMPLED_ROWS: usize = 16;
const WINDOW: usize = 8;

impl SampledCurve {
    pub fn new(u: Vec<f64>, points: Vec<MVec3>) -> Result<Self> {
        if u.len() != points.len() {
            return Err(Error::InvalidInput(format!(
                "{} parameter values but {} points",
                u.len(),
                points.len()
            )));
        }
        if u.len() < MIN_SAMPLED_ROWS {
            return Err(Error::InvalidInput(format!(
                "sampled curve needs at least {MIN_SAMPLED_ROWS} rows, got {}",
                u.len()
            )));
        }
        if let Some(i) = u.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput(format!(
                "sample parameters must be strictly increasing (row {})",
                i + 1
            )));
        }
        Ok(SampledCurve { u, points })
    }

    pub fn parameters(&self) -> &[f64] {
        &self.u
    }

    pub fn points(&self) -> &[MVec3] {
        &self.points
    }

    pub fn range(&self) -> (f64, f64) {
        (self.u[0], self.u[self.u.len() - 1])
    }
}

impl CurveSource for SampledCurve {
    fn jet(&self, u: f64) -> Result<Jet> {
        let n = self.u.len();
        let i = bracket(&self.u, u);
        let start = (i + 1).saturating_sub(WINDOW / 2).min(n - WINDOW);
        let nodes = &self.u[start..start + WINDOW];
        let w = fd_weights(u, nodes, 3);
        let mut out = [MVec3::ZERO; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = w[k]
                .iter()
                .zip(&self.points[start..start + WINDOW])
                .map(|(wk, p)| *p * *wk)
                .sum();
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::linspace;

    #[test]
    fn expr_curve_jet() {
        let c = ExprCurve::parse("u", "cos(u)", "sin(u)").unwrap();
        let j = c.jet(0.0).unwrap();
        assert_eq!(j[0], MVec3::new(0., 1., 0.));
        assert_eq!(j[1], MVec3::new(1., 0., 1.));
        assert_eq!(j[2], MVec3::new(0., -1., 0.));
        assert_eq!(j[3], MVec3::new(0., 0., -1.));
    }

    #[test]
    fn sampled_curve_reproduces_smooth_data() {
        let u = linspace(0.0, 2.0, 101);
        let pts: Vec<MVec3> = u
            .iter()
            .map(|&t| MVec3::new(libm::sinh(t), libm::cosh(t), libm::sin(t)))
            .collect();
        let c = SampledCurve::new(u, pts).unwrap();
        for i in 0..40 {
            let t = 0.013 + 0.049 * i as f64;
            let j = c.jet(t).unwrap();
            let exact = [
                MVec3::new(libm::sinh(t), libm::cosh(t), libm::sin(t)),
                MVec3::new(libm::cosh(t), libm::sinh(t), libm::cos(t)),
                MVec3::new(libm::sinh(t), libm::cosh(t), -libm::sin(t)),
                MVec3::new(libm::cosh(t), libm::sinh(t), -libm::cos(t)),
            ];
            let tol = [1e-12, 1e-10, 1e-8, 1e-6];
            for k in 0..4 {
                assert!((j[k] - exact[k]).max_abs() < tol[k], "order {k} at {t}");
            }
        }
    }

    #[test]
    fn sampled_curve_validation() {
        let u = linspace(0.0, 1.0, 10);
        let p = alloc::vec![MVec3::ZERO; 10];
        assert!(SampledCurve::new(u, p).is_err());
        let mut u = linspace(0.0, 1.0, 20);
        u[5] = u[4];
        assert!(SampledCurve::new(u, alloc::vec![MVec3::ZERO; 20]).is_err());
    }
}
