//! Parametric curves in Minkowski 3-space.
//!
//! A [`ParamCurve`] is a source of 3-jets (position and derivatives up to
//! order three) over a closed parameter interval, plus the number of grid
//! samples used when the curve is tabulated.

mod similar;
mod source;

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lorentz::{causal_character, CausalCharacter, MVec3, Sign, DEFAULT_TOL_NULL};
use crate::numeric::{linspace, simpson_panel, MonotoneTable};

pub use similar::{integrate_lambda, are_similar_curves, SimilarCurveReport, DEFAULT_SIMILAR_CURVE_TOL};
pub use source::{ExprCurve, FnCurve, SampledCurve, MIN_SAMPLED_ROWS};

/// Position and derivatives of orders 1, 2 and 3.
pub type Jet = [MVec3; 4];

/// Anything that can evaluate a curve jet at a parameter value.
pub trait CurveSource: Send + Sync {
    fn jet(&self, u: f64) -> Result<Jet>;
}

pub const DEFAULT_SAMPLES: usize = 512;

#[derive(Clone)]
pub struct ParamCurve {
    source: Arc<dyn CurveSource>,
    u_min: f64,
    u_max: f64,
    samples: usize,
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamCurve")
            .field("u_min", &self.u_min)
            .field("u_max", &self.u_max)
            .field("samples", &self.samples)
            .finish_non_exhaustive()
    }
}

impl ParamCurve {
    pub fn new(source: Arc<dyn CurveSource>, u_min: f64, u_max: f64, samples: usize) -> Result<Self> {
        if !(u_min.is_finite() && u_max.is_finite() && u_min < u_max) {
            return Err(Error::InvalidInput(alloc::format!(
                "parameter interval [{u_min}, {u_max}] is empty"
            )));
        }
        if samples < 5 {
            return Err(Error::InvalidInput(alloc::format!(
                "sample count {samples} is below the minimum of 5"
            )));
        }
        Ok(ParamCurve { source, u_min, u_max, samples })
    }

    pub fn from_source<S: CurveSource + 'static>(source: S, u_min: f64, u_max: f64, samples: usize) -> Result<Self> {
        Self::new(Arc::new(source), u_min, u_max, samples)
    }

    /// Curve from a closure returning the full jet.
    pub fn from_fn<F>(f: F, u_min: f64, u_max: f64, samples: usize) -> Result<Self>
    where
        F: Fn(f64) -> Jet + Send + Sync + 'static,
    {
        Self::from_source(FnCurve::new(f), u_min, u_max, samples)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.u_min, self.u_max)
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn with_samples(&self, samples: usize) -> Result<Self> {
        Self::new(self.source.clone(), self.u_min, self.u_max, samples)
    }

    pub fn with_interval(&self, u_min: f64, u_max: f64) -> Result<Self> {
        Self::new(self.source.clone(), u_min, u_max, self.samples)
    }

    pub fn source(&self) -> &Arc<dyn CurveSource> {
        &self.source
    }

    pub fn jet(&self, u: f64) -> Result<Jet> {
        let j = self.source.jet(u)?;
        if j.iter().all(MVec3::is_finite) {
            Ok(j)
        } else {
            Err(Error::Domain { at: u, reason: "non-finite curve value" })
        }
    }

    pub fn position(&self, u: f64) -> Result<MVec3> {
        Ok(self.jet(u)?[0])
    }

    pub fn velocity(&self, u: f64) -> Result<MVec3> {
        Ok(self.jet(u)?[1])
    }

    /// Uniform grid of `samples` parameter values.
    pub fn grid(&self) -> Vec<f64> {
        linspace(self.u_min, self.u_max, self.samples)
    }

    /// Checks that each derivative agrees with a central difference of the
    /// next lower order at ten interior points, to `rel_tol` relative.
    pub fn check_consistency(&self, rel_tol: f64) -> Result<()> {
        let span = self.u_max - self.u_min;
        let h = 1e-5 * span;
        for i in 0..10 {
            let u = self.u_min + span * (0.05 + 0.09 * i as f64);
            let j = self.jet(u)?;
            let jp = self.jet(u + h)?;
            let jm = self.jet(u - h)?;
            for k in 1..4 {
                let fd = (jp[k - 1] - jm[k - 1]) / (2.0 * h);
                let scale = 1.0 + j[k].max_abs().max(j[k - 1].max_abs());
                if (fd - j[k]).max_abs() > rel_tol * scale {
                    return Err(Error::InconsistentDerivatives { order: k, at: u });
                }
            }
        }
        Ok(())
    }
}

/// Jet of `r / sqrt(|<r,r>|)` from the jet of `r`.
///
/// `sign` is the sign of `<r,r>`, fixed by the caller so that the branch is
/// the same along the whole curve.
pub fn normalized_jet(r: &Jet, sign: Sign) -> Result<Jet> {
    let e = sign.value();
    let p0 = e * r[0].norm_sq();
    if !(p0 > 0.0) {
        return Err(Error::NullVector);
    }
    let p1 = 2.0 * e * r[0].inner(r[1]);
    let p2 = 2.0 * e * (r[1].norm_sq() + r[0].inner(r[2]));
    let p3 = 2.0 * e * (3.0 * r[1].inner(r[2]) + r[0].inner(r[3]));
    let s = libm::sqrt(p0);
    let g0 = 1.0 / s;
    let g1 = -0.5 * p1 / (p0 * s);
    let g2 = 0.75 * p1 * p1 / (p0 * p0 * s) - 0.5 * p2 / (p0 * s);
    let g3 = -1.875 * p1 * p1 * p1 / (p0 * p0 * p0 * s) + 2.25 * p1 * p2 / (p0 * p0 * s)
        - 0.5 * p3 / (p0 * s);
    Ok([
        r[0] * g0,
        r[0] * g1 + r[1] * g0,
        r[0] * g2 + r[1] * (2.0 * g1) + r[2] * g0,
        r[0] * g3 + r[1] * (3.0 * g2) + r[2] * (3.0 * g1) + r[3] * g0,
    ])
}

/// Arc-length table of a curve on its sample grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcLengthTable {
    pub u: Vec<f64>,
    pub s: Vec<f64>,
    /// `ds/du` at the grid points.
    pub speed: Vec<f64>,
    pub total: f64,
    pub character: CausalCharacter,
}

impl ArcLengthTable {
    /// Monotone interpolant `u -> s`.
    pub fn table(&self) -> MonotoneTable {
        MonotoneTable::with_slopes(self.u.clone(), self.s.clone(), self.speed.clone())
    }
}

fn speed_at(c: &ParamCurve, u: f64, expected: Option<CausalCharacter>) -> Result<(f64, CausalCharacter)> {
    let d1 = c.velocity(u)?;
    let ch = causal_character(d1, DEFAULT_TOL_NULL);
    if ch == CausalCharacter::Null || d1 == MVec3::ZERO {
        return Err(Error::NullTangent { at: u });
    }
    if let Some(e) = expected {
        if e != ch {
            return Err(Error::NullTangent { at: u });
        }
    }
    Ok((d1.lorentz_norm(), ch))
}

/// `s(u) = integral of sqrt(|<c',c'>|) du` by composite Simpson on the
/// sample grid (each panel is refined at its midpoint).
///
/// The velocity must keep one non-null causal character on the whole
/// interval; otherwise `NullTangent` is returned.
pub fn arc_length_table(c: &ParamCurve) -> Result<ArcLengthTable> {
    let u = c.grid();
    let (first, character) = speed_at(c, u[0], None)?;
    let mut speed = Vec::with_capacity(u.len());
    speed.push(first);
    let mut s = Vec::with_capacity(u.len());
    s.push(0.0);
    for i in 1..u.len() {
        let (a, b) = (u[i - 1], u[i]);
        let (mid, _) = speed_at(c, 0.5 * (a + b), Some(character))?;
        let (sb, _) = speed_at(c, b, Some(character))?;
        let prev = s[i - 1];
        s.push(prev + simpson_panel(a, b, speed[i - 1], mid, sb));
        speed.push(sb);
    }
    let total = *s.last().unwrap_or(&0.0);
    Ok(ArcLengthTable { u, s, speed, total, character })
}

/// `c'(u) / sqrt(|<c',c'>|)`.
pub fn unit_tangent(c: &ParamCurve, u: f64) -> Result<MVec3> {
    let d1 = c.velocity(u)?;
    if causal_character(d1, DEFAULT_TOL_NULL) == CausalCharacter::Null || d1 == MVec3::ZERO {
        return Err(Error::NullTangent { at: u });
    }
    Ok(d1 / d1.lorentz_norm())
}

/// Unit tangent and its derivative with respect to `u`.
pub(crate) fn unit_tangent_jet(c: &ParamCurve, u: f64) -> Result<(MVec3, MVec3)> {
    let j = c.jet(u)?;
    let ch = causal_character(j[1], DEFAULT_TOL_NULL);
    let sign = ch.sign().ok_or(Error::NullTangent { at: u })?;
    let d = [j[1], j[2], j[3], MVec3::ZERO];
    let n = normalized_jet(&d, sign).map_err(|_| Error::NullTangent { at: u })?;
    Ok((n[0], n[1]))
}
