//! Frames and surfaces rebuilt from the curvature ratio `f = k2/k1` as a
//! function of the total-curvature parameter `phi = integral of k1 ds`.
//!
//! In `phi` the Frenet system reads
//!
//! ```text
//! timelike:  q' = h,  h' = -eps q + f a,  a' = eps f h
//! spacelike: q' = h,  h' = q + f a,       a' = f h
//! ```
//!
//! and `s` follows from `ds/dphi = 1/k1(s)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::curves::{ParamCurve, SampledCurve};
use crate::error::{Error, Result};
use crate::lorentz::{lorentz_cross, MVec3, Sign};
use crate::numeric::{cumulative_uniform_vec, fd_weights};
use crate::scalar::ScalarFn;
use crate::surfaces::{FrameField, FrameParam, FrameSample, RuledSurfaceSpec, SurfaceType};

pub const MIN_STEPS: usize = 16;
/// `|f|` below this makes the third-order equation singular.
pub const F_MIN: f64 = 1e-6;
const FRAME_TOL: f64 = 1e-10;
/// Relative size of `eps <v,v>` below which re-orthonormalization gives up.
const NEAR_NULL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    /// Timelike surface with `<q,q> = eps`.
    Timelike(Sign),
    /// Spacelike surface (timelike central normal).
    Spacelike,
}

impl ProfileKind {
    pub fn eps_q(self) -> Sign {
        match self {
            ProfileKind::Timelike(e) => e,
            ProfileKind::Spacelike => Sign::Plus,
        }
    }

    pub fn eps_h(self) -> Sign {
        match self {
            ProfileKind::Timelike(_) => Sign::Plus,
            ProfileKind::Spacelike => Sign::Minus,
        }
    }

    pub fn eps_a(self) -> Sign {
        -(self.eps_q() * self.eps_h())
    }

    /// A frame at the origin satisfying the identities of this kind.
    pub fn standard_frame(self) -> [MVec3; 3] {
        match self {
            ProfileKind::Timelike(Sign::Minus) => [MVec3::E1, MVec3::E2, MVec3::E3],
            ProfileKind::Timelike(Sign::Plus) => [MVec3::E2, MVec3::E3, MVec3::E1],
            ProfileKind::Spacelike => [MVec3::E2, MVec3::E1, -MVec3::E3],
        }
    }

    /// Largest violation of orthonormality and the vector-product identities.
    pub fn frame_defect(self, [q, h, a]: [MVec3; 3]) -> f64 {
        let (eq, eh, ea) = (self.eps_q().value(), self.eps_h().value(), self.eps_a().value());
        let ortho = [q.norm_sq() - eq, h.norm_sq() - eh, a.norm_sq() - ea, q.inner(h), q.inner(a), h.inner(a)]
            .iter()
            .fold(0.0f64, |m, r| m.max(libm::fabs(*r)));
        let (qh, ha, aq) = (lorentz_cross(q, h), lorentz_cross(h, a), lorentz_cross(a, q));
        let ids = match self {
            ProfileKind::Timelike(e) => {
                let e = e.value();
                [(qh - a * e).max_abs(), (ha + q * e).max_abs(), (aq + h).max_abs()]
            }
            ProfileKind::Spacelike => [(qh + a).max_abs(), (ha + q).max_abs(), (aq - h).max_abs()],
        };
        ids.iter().fold(ortho, |m, r| m.max(*r))
    }
}

/// Everything needed to integrate a frame from `f(phi)`.
#[derive(Debug, Clone)]
pub struct InvariantProfile {
    pub f: ScalarFn,
    pub kind: ProfileKind,
    pub phi_range: (f64, f64),
    /// `k1` as a function of the striction arc length; must stay positive.
    pub k1_of_s: ScalarFn,
    pub initial_frame: [MVec3; 3],
}

impl InvariantProfile {
    pub fn new(
        f: ScalarFn,
        kind: ProfileKind,
        phi_range: (f64, f64),
        k1_of_s: ScalarFn,
        initial_frame: [MVec3; 3],
    ) -> Result<Self> {
        let (a, b) = phi_range;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInput(format!("phi range [{a}, {b}] is empty")));
        }
        let defect = kind.frame_defect(initial_frame);
        if defect > FRAME_TOL {
            return Err(Error::InvalidInput(format!(
                "initial frame violates the frame identities by {defect:e}"
            )));
        }
        Ok(InvariantProfile { f, kind, phi_range, k1_of_s, initial_frame })
    }

    /// Profile with the kind's standard frame and `k1 = 1`.
    pub fn standard(f: ScalarFn, kind: ProfileKind, phi_range: (f64, f64)) -> Result<Self> {
        Self::new(f, kind, phi_range, ScalarFn::Const(1.0), kind.standard_frame())
    }

    pub fn with_k1(&self, k1_of_s: ScalarFn) -> Self {
        InvariantProfile { k1_of_s, ..self.clone() }
    }
}

#[derive(Clone, Copy)]
struct State {
    q: MVec3,
    h: MVec3,
    a: MVec3,
    s: f64,
}

impl State {
    fn axpy(self, d: State, t: f64) -> State {
        State { q: self.q + d.q * t, h: self.h + d.h * t, a: self.a + d.a * t, s: self.s + d.s * t }
    }
}

fn rhs(p: &InvariantProfile, phi: f64, y: State) -> Result<State> {
    let f = p.f.value(phi)?;
    let k1 = p.k1_of_s.value(y.s)?;
    if !(k1 > 0.0) {
        return Err(Error::DegenerateK1 { at: y.s });
    }
    let (dh, da) = match p.kind {
        ProfileKind::Timelike(e) => {
            let e = e.value();
            (y.q * -e + y.a * f, y.h * (e * f))
        }
        ProfileKind::Spacelike => (y.q + y.a * f, y.h * f),
    };
    Ok(State { q: y.h, h: dh, a: da, s: 1.0 / k1 })
}

fn unit(v: MVec3, sign: Sign, at: f64) -> Result<MVec3> {
    let p = sign.value() * v.norm_sq();
    if !(p > NEAR_NULL * v.euclid_norm_sq()) {
        return Err(Error::FrameDegeneration { at });
    }
    Ok(v / libm::sqrt(p))
}

/// Lorentz Gram-Schmidt in the order `q, h, a`.
fn reproject(kind: ProfileKind, y: State, at: f64) -> Result<State> {
    let (eq, eh) = (kind.eps_q(), kind.eps_h());
    let q = unit(y.q, eq, at)?;
    let h = unit(y.h - q * (eq.value() * y.h.inner(q)), eh, at)?;
    let a = y.a - q * (eq.value() * y.a.inner(q)) - h * (eh.value() * y.a.inner(h));
    let a = unit(a, kind.eps_a(), at)?;
    Ok(State { q, h, a, s: y.s })
}

/// A frame integrated from a profile, with diagnostics.
#[derive(Debug, Clone)]
pub struct Integration {
    pub field: FrameField,
    /// Largest frame defect after an RK4 step, before re-projection.
    pub max_step_drift: f64,
}

/// Classic RK4 over `steps` equal steps of `phi`, re-orthonormalizing after
/// each step. The returned field is sampled in `phi` ([`FrameParam::Phi`]).
pub fn integrate_frenet(p: &InvariantProfile, steps: usize) -> Result<FrameField> {
    Ok(integrate_frenet_with_drift(p, steps)?.field)
}

pub fn integrate_frenet_with_drift(p: &InvariantProfile, steps: usize) -> Result<Integration> {
    if steps < MIN_STEPS {
        return Err(Error::InvalidInput(format!("steps = {steps} is below the minimum of {MIN_STEPS}")));
    }
    let (phi0, phi1) = p.phi_range;
    let dphi = (phi1 - phi0) / steps as f64;
    let [q, h, a] = p.initial_frame;
    let mut y = State { q, h, a, s: 0.0 };
    let mut samples = Vec::with_capacity(steps + 1);
    let mut drift = 0.0f64;
    let sample = |phi: f64, y: &State| -> Result<FrameSample> {
        let k1 = p.k1_of_s.value(y.s)?;
        if !(k1 > 0.0) {
            return Err(Error::DegenerateK1 { at: y.s });
        }
        Ok(FrameSample {
            t: phi,
            s: y.s,
            point: None,
            q: y.q,
            h: y.h,
            a: y.a,
            k1,
            k2: p.f.value(phi)? * k1,
            ds_dt: 1.0 / k1,
        })
    };
    samples.push(sample(phi0, &y)?);
    for i in 0..steps {
        let phi = phi0 + dphi * i as f64;
        let d1 = rhs(p, phi, y)?;
        let d2 = rhs(p, phi + 0.5 * dphi, y.axpy(d1, 0.5 * dphi))?;
        let d3 = rhs(p, phi + 0.5 * dphi, y.axpy(d2, 0.5 * dphi))?;
        let d4 = rhs(p, phi + dphi, y.axpy(d3, dphi))?;
        let next = y
            .axpy(d1, dphi / 6.0)
            .axpy(d2, dphi / 3.0)
            .axpy(d3, dphi / 3.0)
            .axpy(d4, dphi / 6.0);
        let at = if i + 1 == steps { phi1 } else { phi0 + dphi * (i + 1) as f64 };
        drift = drift.max(p.kind.frame_defect([next.q, next.h, next.a]));
        y = reproject(p.kind, next, at)?;
        samples.push(sample(at, &y)?);
    }
    let field = FrameField {
        param: FrameParam::Phi,
        samples,
        eps_q: p.kind.eps_q(),
        eps_h: p.kind.eps_h(),
        surface_type: SurfaceType::from_signs(p.kind.eps_q(), p.kind.eps_h()),
    };
    Ok(Integration { field, max_step_drift: drift })
}

/// Residuals of the third-order ruling equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ode3Residual {
    /// Max Euclidean norm of the left-hand side of the third-order equation.
    pub equation: f64,
    /// Max deviation of `a` from `(q'' + eps q)/f` (timelike) or
    /// `(q'' - q)/f` (spacelike).
    pub central_tangent: f64,
}

impl Ode3Residual {
    pub fn max(&self) -> f64 {
        self.equation.max(self.central_tangent)
    }
}

/// Evaluates the third-order equation satisfied by `q(phi)` on a frame
/// sampled uniformly in `phi`, with fourth-order differences for the
/// derivatives of `q` and the exact `f`, `f'`.
pub fn ode3_residual(field: &FrameField, f: &ScalarFn) -> Result<Ode3Residual> {
    if field.param != FrameParam::Phi {
        return Err(Error::InvalidInput("third-order residual needs a frame sampled in phi".into()));
    }
    if field.len() < 9 {
        return Err(Error::InvalidInput(format!("{} samples, at least 9 needed", field.len())));
    }
    let mut fv = Vec::with_capacity(field.len());
    for x in &field.samples {
        let v = f.value(x.t)?;
        if libm::fabs(v) < F_MIN {
            return Err(Error::DegenerateF { at: x.t });
        }
        fv.push((v, f.derivative(x.t)?));
    }
    let q: Vec<MVec3> = field.samples.iter().map(|x| x.q).collect();
    let [d1, d2, d3] = strided_derivatives(&q, field.step());
    let eps = field.eps_q.value();
    let timelike = field.is_timelike_surface();
    let mut out = Ode3Residual { equation: 0.0, central_tangent: 0.0 };
    for (i, x) in field.samples.iter().enumerate() {
        let (f, df) = fv[i];
        let g = df / (f * f);
        let (lhs, a) = if timelike {
            (
                d3[i] / f - d2[i] * g + d1[i] * (eps * (1.0 - f * f) / f) - q[i] * (eps * g),
                (d2[i] + q[i] * eps) / f,
            )
        } else {
            (d3[i] / f - d2[i] * g - d1[i] * ((1.0 + f * f) / f) + q[i] * g, (d2[i] - q[i]) / f)
        };
        out.equation = out.equation.max(lhs.euclid_norm());
        out.central_tangent = out.central_tangent.max((a - x.a).euclid_norm());
    }
    Ok(out)
}

/// Differences for the third-order residual are never taken on a spacing
/// finer than this: rounding in `q` is amplified by `1/h^3`.
const MIN_FD_SPACING: f64 = 1e-2;

/// First three derivatives from 7-node stencils on the sub-grid with stride
/// `ceil(MIN_FD_SPACING / h)`, centred where possible.
fn strided_derivatives(q: &[MVec3], h: f64) -> [Vec<MVec3>; 3] {
    let n = q.len();
    let stride = (libm::ceil(MIN_FD_SPACING / h - 1e-9) as usize).clamp(1, (n - 1) / 6);
    let mut out = [Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n)];
    for i in 0..n {
        let below = (i / stride) as isize;
        let above = ((n - 1 - i) / stride) as isize;
        let j0 = (-3isize).max(-below).min(above - 6);
        let offsets: Vec<f64> = (j0..j0 + 7).map(|j| (j * stride as isize) as f64 * h).collect();
        let w = fd_weights(0.0, &offsets, 3);
        for (order, d) in out.iter_mut().enumerate() {
            let mut acc = MVec3::ZERO;
            for (k, j) in (j0..j0 + 7).enumerate() {
                acc += q[(i as isize + j * stride as isize) as usize] * w[order + 1][k];
            }
            d.push(acc);
        }
    }
    out
}

/// How the striction curve is laid out relative to the frame.
#[derive(Debug, Clone)]
pub enum BuildMode {
    /// Striction tangent equal to the ruling.
    Developable,
    /// Striction tangent at angle `theta(s)` from the ruling in the `q, a`
    /// plane: `cosh(theta) q + sinh(theta) a` on timelike surfaces,
    /// `cos(theta) q + sin(theta) a` on spacelike ones.
    Angle(ScalarFn),
}

/// Margin by which the rebuilt striction tangent must stay off the null cone.
const CHARACTER_MARGIN: f64 = 1e-6;

/// Rebuilds a surface from a frame: the striction curve is integrated from
/// its tangent and used as base curve, the ruling is `q`. The surface
/// parameter is the frame's sample parameter.
pub fn build_surface(field: &FrameField, mode: &BuildMode, name: impl Into<String>) -> Result<RuledSurfaceSpec> {
    if field.len() < crate::curves::MIN_SAMPLED_ROWS {
        return Err(Error::InvalidInput(format!("{} frame samples are too few to rebuild a surface", field.len())));
    }
    let eps_q = field.eps_q.value();
    let mut velocity = Vec::with_capacity(field.len());
    for x in &field.samples {
        let t = match mode {
            BuildMode::Developable => x.q,
            BuildMode::Angle(theta) => {
                let th = theta.value(x.s)?;
                let t = if field.is_timelike_surface() {
                    x.q * libm::cosh(th) + x.a * libm::sinh(th)
                } else {
                    x.q * libm::cos(th) + x.a * libm::sin(th)
                };
                if !(eps_q * t.norm_sq() > CHARACTER_MARGIN) {
                    return Err(Error::CharacterViolation { at: x.s });
                }
                t
            }
        };
        velocity.push(t * x.ds_dt);
    }
    let origin = field.samples[0].point.unwrap_or(MVec3::ZERO);
    let points: Vec<MVec3> = cumulative_uniform_vec(&velocity, field.step()).into_iter().map(|p| p + origin).collect();
    let u: Vec<f64> = field.samples.iter().map(|x| x.t).collect();
    let rulings: Vec<MVec3> = field.samples.iter().map(|x| x.q).collect();
    let n = u.len();
    let (u0, u1) = (u[0], u[n - 1]);
    let base = ParamCurve::from_source(SampledCurve::new(u.clone(), points)?, u0, u1, n)?;
    let ruling = ParamCurve::from_source(SampledCurve::new(u, rulings)?, u0, u1, n)?;
    RuledSurfaceSpec::new(name, base, ruling)
}

/// One developable surface per `k1`, all from the same `f`, kind, range and
/// initial frame; the members are pairwise similar.
pub fn generate_similar_family(
    profile: &InvariantProfile,
    k1_list: &[ScalarFn],
    steps: usize,
) -> Result<Vec<RuledSurfaceSpec>> {
    k1_list
        .iter()
        .enumerate()
        .map(|(i, k1)| {
            let field = integrate_frenet(&profile.with_k1(k1.clone()), steps)?;
            build_surface(&field, &BuildMode::Developable, format!("family-{i}"))
        })
        .collect()
}
