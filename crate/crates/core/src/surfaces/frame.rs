//! The Frenet frame `{q, h, a}` of a ruled surface along its striction
//! curve, with curvatures `k1`, `k2` with respect to the striction arc
//! length `s`.
//!
//! Timelike surfaces (`eps_h = +1`):
//!
//! ```text
//! q' = k1 h,   h' = -eps k1 q + k2 a,   a' = eps k2 h,
//! q ^ h = eps a,   h ^ a = -eps q,   a ^ q = -h
//! ```
//!
//! Spacelike surfaces (`eps_h = -1`):
//!
//! ```text
//! q' = k1 h,   h' = k1 q + k2 a,   a' = k2 h,
//! q ^ h = -a,   h ^ a = -q,   a ^ q = h
//! ```
//!
//! where `eps = <q,q>` and primes are derivatives in `s`. `k1 >= 0`
//! always; `h` carries the sign.

use alloc::vec::Vec;

use super::{check_spherical_image, rate_character, ruling_derivative, striction_jet, RuledSurfaceSpec, SurfaceKind, SurfaceType, K1_MIN};
use crate::curves::normalized_jet;
use crate::error::{Error, FrameVector, Result};
use crate::lorentz::{lorentz_cross, CausalCharacter, MVec3, Sign};
use crate::numeric::{fd_uniform, linspace, simpson_panel};

/// What the sample parameter `t` of a frame field is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameParam {
    /// The surface parameter `u`.
    SurfaceU,
    /// The total-curvature parameter `phi`.
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSample {
    /// Sample parameter (uniformly spaced).
    pub t: f64,
    /// Striction arc length, zero at the first sample.
    pub s: f64,
    /// Striction point, when a surface has been fixed.
    pub point: Option<MVec3>,
    pub q: MVec3,
    pub h: MVec3,
    pub a: MVec3,
    pub k1: f64,
    pub k2: f64,
    /// `ds/dt`.
    pub ds_dt: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameField {
    pub param: FrameParam,
    pub samples: Vec<FrameSample>,
    pub eps_q: Sign,
    pub eps_h: Sign,
    pub surface_type: SurfaceType,
}

impl FrameField {
    pub fn kind(&self) -> SurfaceKind {
        match self.eps_h {
            Sign::Plus => SurfaceKind::Timelike,
            Sign::Minus => SurfaceKind::Spacelike,
        }
    }

    pub fn is_timelike_surface(&self) -> bool {
        self.kind() == SurfaceKind::Timelike
    }

    /// `<a,a>`, determined by the other two signs.
    pub fn eps_a(&self) -> Sign {
        -(self.eps_q * self.eps_h)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Spacing of the sample parameter.
    pub fn step(&self) -> f64 {
        let n = self.samples.len();
        (self.samples[n - 1].t - self.samples[0].t) / (n - 1) as f64
    }

    pub fn total_arc_length(&self) -> f64 {
        self.samples.last().map_or(0.0, |x| x.s)
    }

    /// Right-hand side of the Frenet system at a sample: `(q', h', a')` in `s`.
    pub fn frenet_rhs(&self, x: &FrameSample) -> [MVec3; 3] {
        let eps = self.eps_q.value();
        match self.kind() {
            SurfaceKind::Timelike => [
                x.h * x.k1,
                x.q * (-eps * x.k1) + x.a * x.k2,
                x.h * (eps * x.k2),
            ],
            SurfaceKind::Spacelike => [x.h * x.k1, x.q * x.k1 + x.a * x.k2, x.h * x.k2],
        }
    }

    /// Residuals of the three vector-product identities at a sample.
    pub fn identity_residuals(&self, x: &FrameSample) -> [f64; 3] {
        let eps = self.eps_q.value();
        let qh = lorentz_cross(x.q, x.h);
        let ha = lorentz_cross(x.h, x.a);
        let aq = lorentz_cross(x.a, x.q);
        match self.kind() {
            SurfaceKind::Timelike => [
                (qh - x.a * eps).euclid_norm(),
                (ha + x.q * eps).euclid_norm(),
                (aq + x.h).euclid_norm(),
            ],
            SurfaceKind::Spacelike => [
                (qh + x.a).euclid_norm(),
                (ha + x.q).euclid_norm(),
                (aq - x.h).euclid_norm(),
            ],
        }
    }

    /// Largest deviation of the pairings of `{q,h,a}` from
    /// `diag(eps_q, eps_h, eps_a)`.
    pub fn orthonormality_residual(&self, x: &FrameSample) -> f64 {
        let (eq, eh, ea) = (self.eps_q.value(), self.eps_h.value(), self.eps_a().value());
        [
            x.q.norm_sq() - eq,
            x.h.norm_sq() - eh,
            x.a.norm_sq() - ea,
            x.q.inner(x.h),
            x.q.inner(x.a),
            x.h.inner(x.a),
        ]
        .iter()
        .fold(0.0f64, |m, r| m.max(libm::fabs(*r)))
    }
}

/// Frame quantities at one surface parameter.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LocalFrame {
    pub c: MVec3,
    pub sigma: f64,
    pub c_char: CausalCharacter,
    pub q: MVec3,
    pub h: MVec3,
    pub a: MVec3,
    pub eps_h: Sign,
    pub k1: f64,
    pub k2: f64,
}

pub(crate) fn striction_speed(s: &RuledSurfaceSpec, u: f64) -> Result<(MVec3, f64, CausalCharacter)> {
    let (k, q) = ruling_derivative(s, u)?;
    let c = striction_jet(&k, &q, u, s.tol_null())?;
    let ch = rate_character(c[1], s.tol_null());
    if ch == CausalCharacter::Null || c[1] == MVec3::ZERO {
        return Err(Error::NullTransition { vector: FrameVector::StrictionVelocity, at: u });
    }
    Ok((c[1], c[1].lorentz_norm(), ch))
}

pub(crate) fn local_frame(s: &RuledSurfaceSpec, u: f64) -> Result<LocalFrame> {
    let (k, q) = ruling_derivative(s, u)?;
    check_spherical_image(q[1], u, s.tol_null())?;
    let c = striction_jet(&k, &q, u, s.tol_null())?;
    let c_char = rate_character(c[1], s.tol_null());
    if c_char == CausalCharacter::Null || c[1] == MVec3::ZERO {
        return Err(Error::NullTransition { vector: FrameVector::StrictionVelocity, at: u });
    }
    let sigma = c[1].lorentz_norm();
    let eps_h = rate_character(q[1], s.tol_null())
        .sign()
        .ok_or(Error::NullTransition { vector: FrameVector::CentralNormal, at: u })?;
    let eps = s.eps_q().value();
    // h and dh/du from the normalized jet of dq/du
    let hj = normalized_jet(&[q[1], q[2], q[3], MVec3::ZERO], eps_h)
        .map_err(|_| Error::NullTransition { vector: FrameVector::CentralNormal, at: u })?;
    let (h, dh) = (hj[0], hj[1]);
    let k1 = q[1].lorentz_norm() / sigma;
    let (a, da) = match eps_h {
        Sign::Plus => (
            lorentz_cross(q[0], h) * eps,
            (lorentz_cross(q[1], h) + lorentz_cross(q[0], dh)) * eps,
        ),
        Sign::Minus => (
            -lorentz_cross(q[0], h),
            -(lorentz_cross(q[1], h) + lorentz_cross(q[0], dh)),
        ),
    };
    let da_ds = da / sigma;
    let k2 = match eps_h {
        Sign::Plus => eps * da_ds.inner(h) * eps_h.value(),
        Sign::Minus => da_ds.inner(h) * eps_h.value(),
    };
    Ok(LocalFrame { c: c[0], sigma, c_char, q: q[0], h, a, eps_h, k1, k2 })
}

/// Frenet frame on a uniform grid of `n` surface parameters.
///
/// Fails with `DegenerateRegion` if `k1` drops below [`K1_MIN`] anywhere;
/// [`frame_segments`] handles such surfaces piecewise.
pub fn frame_field(s: &RuledSurfaceSpec, n: usize) -> Result<FrameField> {
    let (u_min, u_max) = s.interval();
    let grid = linspace(u_min, u_max, n.max(5));
    let mut frames = Vec::with_capacity(grid.len());
    for &u in &grid {
        let lf = local_frame(s, u)?;
        if lf.k1 < K1_MIN {
            return Err(Error::DegenerateRegion { at: u });
        }
        frames.push((u, lf));
    }
    build_field(s, &frames)
}

/// Frames of the regular pieces of a surface whose `k1` vanishes (or whose
/// ruling derivative vanishes) on some sub-intervals. Pieces with fewer
/// than five samples are dropped.
pub fn frame_segments(s: &RuledSurfaceSpec, n: usize) -> Result<Vec<FrameField>> {
    let (u_min, u_max) = s.interval();
    let mut out = Vec::new();
    let mut run: Vec<(f64, LocalFrame)> = Vec::new();
    for u in linspace(u_min, u_max, n.max(5)) {
        match local_frame(s, u) {
            Ok(lf) if lf.k1 >= K1_MIN => run.push((u, lf)),
            Ok(_) | Err(Error::CylindricalRuling { .. }) => {
                if run.len() >= 5 {
                    out.push(build_field(s, &run)?);
                }
                run.clear();
            }
            Err(e) => return Err(e),
        }
    }
    if run.len() >= 5 {
        out.push(build_field(s, &run)?);
    }
    Ok(out)
}

fn build_field(s: &RuledSurfaceSpec, frames: &[(f64, LocalFrame)]) -> Result<FrameField> {
    let first = frames[0].1;
    let eps_h = first.eps_h;
    let c_char = first.c_char;
    let mut samples = Vec::with_capacity(frames.len());
    let mut arc = 0.0;
    for (i, &(u, lf)) in frames.iter().enumerate() {
        if lf.eps_h != eps_h {
            return Err(Error::NullTransition { vector: FrameVector::CentralNormal, at: u });
        }
        if lf.c_char != c_char {
            return Err(Error::NullTransition { vector: FrameVector::StrictionVelocity, at: u });
        }
        if i > 0 {
            let (up, prev) = frames[i - 1];
            let (_, mid, mid_char) = striction_speed(s, 0.5 * (up + u))?;
            if mid_char != c_char {
                return Err(Error::NullTransition { vector: FrameVector::StrictionVelocity, at: u });
            }
            arc += simpson_panel(up, u, prev.sigma, mid, lf.sigma);
        }
        samples.push(FrameSample {
            t: u,
            s: arc,
            point: Some(lf.c),
            q: lf.q,
            h: lf.h,
            a: lf.a,
            k1: lf.k1,
            k2: lf.k2,
            ds_dt: lf.sigma,
        });
    }
    Ok(FrameField {
        param: FrameParam::SurfaceU,
        samples,
        eps_q: s.eps_q(),
        eps_h,
        surface_type: SurfaceType::from_signs(s.eps_q(), eps_h),
    })
}

/// Maximum residuals of a frame field against the Frenet system and the
/// frame identities.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FrenetResiduals {
    /// Per row (`q'`, `h'`, `a'`), max Euclidean deviation of the
    /// finite-difference derivative from the right-hand side.
    pub rows: [f64; 3],
    /// Max over the three vector-product identities.
    pub identity: f64,
    pub orthonormality: f64,
}

impl FrenetResiduals {
    pub fn derivative(&self) -> f64 {
        self.rows.iter().fold(0.0f64, |m, r| m.max(*r))
    }

    pub fn max(&self) -> f64 {
        self.derivative().max(self.identity).max(self.orthonormality)
    }
}

/// Differentiates `q`, `h`, `a` along the sample grid with fourth-order
/// differences, converts to `d/ds` with `ds/dt`, and compares with the
/// Frenet right-hand sides. Needs at least five samples.
pub fn verify_frenet(f: &FrameField) -> FrenetResiduals {
    let mut out = FrenetResiduals::default();
    if f.samples.len() < 5 {
        return FrenetResiduals { rows: [f64::INFINITY; 3], identity: f64::INFINITY, orthonormality: f64::INFINITY };
    }
    let h = f.step();
    let pick = |g: fn(&FrameSample) -> MVec3| -> Vec<MVec3> { f.samples.iter().map(g).collect() };
    let derivs = [
        fd_uniform(&pick(|x| x.q), h, 1, 5),
        fd_uniform(&pick(|x| x.h), h, 1, 5),
        fd_uniform(&pick(|x| x.a), h, 1, 5),
    ];
    for (i, x) in f.samples.iter().enumerate() {
        let rhs = f.frenet_rhs(x);
        for row in 0..3 {
            let lhs = derivs[row][i] / x.ds_dt;
            out.rows[row] = out.rows[row].max((lhs - rhs[row]).euclid_norm());
        }
        for r in f.identity_residuals(x) {
            out.identity = out.identity.max(r);
        }
        out.orthonormality = out.orthonormality.max(f.orthonormality_residual(x));
    }
    out
}
