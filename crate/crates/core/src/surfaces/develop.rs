use alloc::vec::Vec;

use super::{distribution_parameter, frame_field, ruling_derivative, striction_jet, RuledSurfaceSpec, SurfaceKind};
use crate::error::Result;
use crate::lorentz::{causal_character, normalize};

pub const DEFAULT_DEVELOPABLE_TOL: f64 = 1e-6;

/// Developability of a ruled surface, judged by comparing the unit tangent
/// `T` of the striction curve with the ruling.
///
/// When `T` and `q` share a causal character, `T` decomposes as
/// `cosh(theta) q + sinh(theta) a` on timelike surfaces or
/// `cos(theta) q + sin(theta) a` on spacelike ones, and the distribution
/// parameter is `-sinh(theta)/k1` resp. `sin(theta)/k1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Developability {
    pub developable: bool,
    /// `max_s min(|T - q|, |T + q|)`, Euclidean.
    pub max_tangent_deviation: f64,
    /// `(s, theta)`; absent on a character mismatch.
    pub theta: Option<Vec<(f64, f64)>>,
    /// `(s, d)` from `theta`; absent on a character mismatch.
    pub d_profile: Option<Vec<(f64, f64)>>,
    /// `(s, delta)` from the mixed-product formula.
    pub delta_profile: Vec<(f64, f64)>,
    pub max_abs_delta: f64,
    /// `max |d - delta|` when `d_profile` is present.
    pub theta_delta_agreement: Option<f64>,
    /// `T` and `q` differ in causal character somewhere.
    pub character_mismatch: bool,
}

impl Developability {
    /// The `max |delta| <= tol` verdict.
    pub fn developable_by_delta(&self, tol: f64) -> bool {
        self.max_abs_delta <= tol
    }
}

pub fn developability(s: &RuledSurfaceSpec, tol: f64) -> Result<Developability> {
    let field = frame_field(s, s.samples())?;
    let eps_a = field.eps_a().value();
    let mut max_dev = 0.0f64;
    let mut mismatch = false;
    let mut theta = Vec::with_capacity(field.len());
    let mut d_profile = Vec::with_capacity(field.len());
    let mut delta_profile = Vec::with_capacity(field.len());
    let mut max_delta = 0.0f64;
    let mut agreement = 0.0f64;
    for x in &field.samples {
        let (k, q) = ruling_derivative(s, x.t)?;
        let c = striction_jet(&k, &q, x.t, s.tol_null())?;
        let t = normalize(c[1])?;
        max_dev = max_dev.max((t - x.q).euclid_norm().min((t + x.q).euclid_norm()));
        let delta = distribution_parameter(s, x.t)?;
        delta_profile.push((x.s, delta));
        max_delta = max_delta.max(libm::fabs(delta));
        if causal_character(t, s.tol_null()) != causal_character(x.q, s.tol_null()) {
            mismatch = true;
            continue;
        }
        let (th, d) = match field.kind() {
            SurfaceKind::Timelike => {
                let th = libm::asinh(t.inner(x.a) / eps_a);
                (th, -libm::sinh(th) / x.k1)
            }
            SurfaceKind::Spacelike => {
                let th = libm::atan2(t.inner(x.a), t.inner(x.q));
                (th, libm::sin(th) / x.k1)
            }
        };
        theta.push((x.s, th));
        d_profile.push((x.s, d));
        agreement = agreement.max(libm::fabs(d - delta));
    }
    Ok(Developability {
        developable: max_dev <= tol,
        max_tangent_deviation: max_dev,
        theta: (!mismatch).then_some(theta),
        d_profile: (!mismatch).then_some(d_profile),
        delta_profile,
        max_abs_delta: max_delta,
        theta_delta_agreement: (!mismatch).then_some(agreement),
        character_mismatch: mismatch,
    })
}
