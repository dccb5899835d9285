//! Ruled surfaces `phi(u, v) = k(u) + v q(u)`.
//!
//! The ruling is normalized on construction, so every quantity below uses a
//! unit `q` with `<q,q> = eps_q`. Derivatives with respect to `u` are exact
//! whenever the underlying curves carry exact jets.

mod develop;
mod frame;

use alloc::string::String;
use alloc::sync::Arc;

use crate::curves::{normalized_jet, CurveSource, Jet, ParamCurve};
use crate::error::{Error, FrameVector, Result};
use crate::lorentz::{causal_character, lorentz_cross, triple, CausalCharacter, MVec3, Sign, DEFAULT_TOL_NULL};

pub use develop::{developability, Developability, DEFAULT_DEVELOPABLE_TOL};
pub use frame::{
    frame_field, frame_segments, verify_frenet, FrameField, FrameParam, FrameSample, FrenetResiduals,
};

/// A ruling derivative with Euclidean norm below this counts as zero.
pub const CYLINDRICAL_TOL: f64 = 1e-10;
/// Frames are not extended through samples with `k1` below this.
pub const K1_MIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceType {
    /// Timelike surface, timelike ruling, spacelike central normal.
    NMinus,
    /// Timelike surface, spacelike ruling and central normal.
    NPlus,
    /// Spacelike surface, timelike central normal.
    NTimes,
    /// Constant ruling direction.
    Cylindrical,
}

impl SurfaceType {
    pub fn from_signs(eps_q: Sign, eps_h: Sign) -> SurfaceType {
        match (eps_q, eps_h) {
            (_, Sign::Minus) => SurfaceType::NTimes,
            (Sign::Minus, Sign::Plus) => SurfaceType::NMinus,
            (Sign::Plus, Sign::Plus) => SurfaceType::NPlus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SurfaceType::NMinus => "NMinus",
            SurfaceType::NPlus => "NPlus",
            SurfaceType::NTimes => "NTimes",
            SurfaceType::Cylindrical => "Cylindrical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Timelike,
    Spacelike,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Timelike => "timelike",
            SurfaceKind::Spacelike => "spacelike",
        }
    }
}

/// Unit ruling built from an arbitrary non-null direction field.
struct NormalizedRuling {
    raw: ParamCurve,
    sign: Sign,
}

impl CurveSource for NormalizedRuling {
    fn jet(&self, u: f64) -> Result<Jet> {
        let r = self.raw.jet(u)?;
        normalized_jet(&r, self.sign).map_err(|_| Error::NullTransition { vector: FrameVector::Ruling, at: u })
    }
}

#[derive(Debug, Clone)]
pub struct RuledSurfaceSpec {
    pub name: String,
    base: ParamCurve,
    ruling: ParamCurve,
    eps_q: Sign,
    tol_null: f64,
}

impl RuledSurfaceSpec {
    /// Surface with base curve `base` and ruling direction `ruling`.
    ///
    /// The parameter interval and sample count are taken from `base`. The
    /// ruling must be non-null with one causal character at every sample.
    pub fn new(name: impl Into<String>, base: ParamCurve, ruling: ParamCurve) -> Result<Self> {
        Self::with_tol_null(name, base, ruling, DEFAULT_TOL_NULL)
    }

    /// As [`RuledSurfaceSpec::new`], with `tol_null` used for every causal
    /// character decision on this surface.
    pub fn with_tol_null(name: impl Into<String>, base: ParamCurve, ruling: ParamCurve, tol_null: f64) -> Result<Self> {
        if !(tol_null.is_finite() && tol_null >= 0.0) {
            return Err(Error::InvalidInput("null tolerance must be finite and non-negative".into()));
        }
        let (u_min, u_max) = base.interval();
        let raw = ruling.with_interval(u_min, u_max)?.with_samples(base.samples())?;
        let mut sign = None;
        for u in base.grid() {
            let r = raw.position(u)?;
            let ch = causal_character(r, tol_null);
            let s = ch.sign().ok_or(Error::NullTransition { vector: FrameVector::Ruling, at: u })?;
            if r == MVec3::ZERO || sign.is_some_and(|prev| prev != s) {
                return Err(Error::NullTransition { vector: FrameVector::Ruling, at: u });
            }
            sign = Some(s);
        }
        let eps_q = sign.unwrap_or(Sign::Plus);
        let unit = ParamCurve::from_source(NormalizedRuling { raw, sign: eps_q }, u_min, u_max, base.samples())?;
        Ok(RuledSurfaceSpec { name: name.into(), base, ruling: unit, eps_q, tol_null })
    }

    pub fn base(&self) -> &ParamCurve {
        &self.base
    }

    /// The unit ruling `q(u)`.
    pub fn ruling(&self) -> &ParamCurve {
        &self.ruling
    }

    pub fn eps_q(&self) -> Sign {
        self.eps_q
    }

    pub fn tol_null(&self) -> f64 {
        self.tol_null
    }

    pub fn interval(&self) -> (f64, f64) {
        self.base.interval()
    }

    pub fn samples(&self) -> usize {
        self.base.samples()
    }

    pub fn with_samples(&self, n: usize) -> Result<Self> {
        let mut s = self.clone();
        s.base = s.base.with_samples(n)?;
        s.ruling = s.ruling.with_samples(n)?;
        Ok(s)
    }

    pub fn point(&self, u: f64, v: f64) -> Result<MVec3> {
        Ok(self.base.position(u)? + self.ruling.position(u)? * v)
    }
}

fn ruling_derivative(s: &RuledSurfaceSpec, u: f64) -> Result<(Jet, Jet)> {
    Ok((s.base.jet(u)?, s.ruling.jet(u)?))
}

/// Causal character of a rate vector, judged on its direction so that slow
/// parametrizations are not mistaken for null ones.
pub(crate) fn rate_character(v: MVec3, tol: f64) -> CausalCharacter {
    let n = v.euclid_norm();
    if n == 0.0 {
        return CausalCharacter::Spacelike;
    }
    causal_character(v / n, tol)
}

/// Checks that `dq` is neither zero nor null.
fn check_spherical_image(dq: MVec3, u: f64, tol: f64) -> Result<()> {
    if dq.euclid_norm() <= CYLINDRICAL_TOL {
        return Err(Error::CylindricalRuling { at: u });
    }
    if rate_character(dq, tol) == CausalCharacter::Null {
        return Err(Error::NullSphericalImage { at: u });
    }
    Ok(())
}

/// Unit normal `m = (phi_u ^ phi_v) / sqrt(|<.,.>|)` at `(u, v)`.
pub fn surface_normal(s: &RuledSurfaceSpec, u: f64, v: f64) -> Result<MVec3> {
    let (k, q) = ruling_derivative(s, u)?;
    let phi_u = k[1] + q[1] * v;
    let phi_v = q[0];
    let n = lorentz_cross(phi_u, phi_v);
    if n.euclid_norm() <= 1e-14 * (1.0 + phi_u.euclid_norm()) {
        return Err(Error::SingularPoint { u, v });
    }
    crate::lorentz::normalize(n).map_err(|_| Error::SingularPoint { u, v })
}

/// Distribution parameter `|dk, q, dq| / <dq, dq>` with the mixed product
/// `|a, b, c| = <a, b ^ c>`.
pub fn distribution_parameter(s: &RuledSurfaceSpec, u: f64) -> Result<f64> {
    let (k, q) = ruling_derivative(s, u)?;
    check_spherical_image(q[1], u, s.tol_null)?;
    Ok(triple(k[1], q[0], q[1]) / q[1].norm_sq())
}

/// A ruling is torsal when `|dk, q, dq|` vanishes (to `tol`).
pub fn is_torsal_ruling(s: &RuledSurfaceSpec, u: f64, tol: f64) -> Result<bool> {
    let (k, q) = ruling_derivative(s, u)?;
    Ok(libm::fabs(triple(k[1], q[0], q[1])) <= tol)
}

/// Striction point and its first two derivatives in `u`.
fn striction_jet(k: &Jet, q: &Jet, u: f64, tol: f64) -> Result<[MVec3; 3]> {
    check_spherical_image(q[1], u, tol)?;
    let a0 = q[1].inner(k[1]);
    let a1 = q[2].inner(k[1]) + q[1].inner(k[2]);
    let a2 = q[3].inner(k[1]) + 2.0 * q[2].inner(k[2]) + q[1].inner(k[3]);
    let b0 = q[1].norm_sq();
    let b1 = 2.0 * q[1].inner(q[2]);
    let b2 = 2.0 * (q[2].norm_sq() + q[1].inner(q[3]));
    let mu0 = a0 / b0;
    let mu1 = (a1 * b0 - a0 * b1) / (b0 * b0);
    let mu2 = (a2 * b0 - a0 * b2) / (b0 * b0) - 2.0 * b1 * (a1 * b0 - a0 * b1) / (b0 * b0 * b0);
    Ok([
        k[0] - q[0] * mu0,
        k[1] - q[0] * mu1 - q[1] * mu0,
        k[2] - q[0] * mu2 - q[1] * (2.0 * mu1) - q[2] * mu0,
    ])
}

struct StrictionSource {
    surface: RuledSurfaceSpec,
    fd_step: f64,
}

impl StrictionSource {
    fn jet3(&self, u: f64) -> Result<[MVec3; 3]> {
        let (k, q) = ruling_derivative(&self.surface, u)?;
        striction_jet(&k, &q, u, self.surface.tol_null)
    }
}

impl CurveSource for StrictionSource {
    fn jet(&self, u: f64) -> Result<Jet> {
        let c = self.jet3(u)?;
        // third derivative by a central difference of the exact second
        let h = self.fd_step;
        let cp = self.jet3(u + h)?;
        let cm = self.jet3(u - h)?;
        Ok([c[0], c[1], c[2], (cp[2] - cm[2]) / (2.0 * h)])
    }
}

/// The striction curve `c = k - (<dq,dk>/<dq,dq>) q` as a parametric curve
/// over the surface's interval.
pub fn striction_curve(s: &RuledSurfaceSpec) -> Result<ParamCurve> {
    for u in s.base.grid() {
        let (_, q) = ruling_derivative(s, u)?;
        check_spherical_image(q[1], u, s.tol_null)?;
    }
    let (u_min, u_max) = s.interval();
    let source = StrictionSource { surface: s.clone(), fd_step: 1e-4 * (u_max - u_min) };
    ParamCurve::new(Arc::new(source), u_min, u_max, s.samples())
}

/// Cylindrical when the ruling derivative vanishes on the whole grid;
/// otherwise the type of the Frenet frame.
pub fn classify(s: &RuledSurfaceSpec) -> Result<SurfaceType> {
    if is_cylindrical(s)? {
        return Ok(SurfaceType::Cylindrical);
    }
    Ok(frame_field(s, s.samples())?.surface_type)
}

pub fn is_cylindrical(s: &RuledSurfaceSpec) -> Result<bool> {
    for u in s.base.grid() {
        if s.ruling.jet(u)?[1].euclid_norm() > CYLINDRICAL_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Causal kind of the surface from its tangent plane along the base curve:
/// spacelike normals give timelike surfaces and vice versa.
pub fn surface_kind(s: &RuledSurfaceSpec) -> Result<Option<SurfaceKind>> {
    let mut kind = None;
    for u in s.base.grid() {
        let (k, q) = ruling_derivative(s, u)?;
        let n = lorentz_cross(k[1], q[0]);
        let this = match rate_character(n, s.tol_null) {
            CausalCharacter::Spacelike if n != MVec3::ZERO => SurfaceKind::Timelike,
            CausalCharacter::Timelike => SurfaceKind::Spacelike,
            _ => return Ok(None),
        };
        if kind.is_some_and(|k| k != this) {
            return Ok(None);
        }
        kind = Some(this);
    }
    Ok(kind)
}

#[cfg(test)]
mod tests;
