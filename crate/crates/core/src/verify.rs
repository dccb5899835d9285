//! Numerical checks of the geometric invariants, per surface and over the
//! builtin corpus.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::corpus;
use crate::error::Result;
use crate::lorentz::{pseudo_sphere_membership, MVec3, PseudoSphere, Sign};
use crate::numeric::{cumulative_uniform, linspace};
use crate::reconstruct::{integrate_frenet, ode3_residual, InvariantProfile, ProfileKind};
use crate::scalar::ScalarFn;
use crate::similarity::{check_developable_similarity, family_check, total_curvature_param, Family, FamilyKind};
use crate::surfaces::{
    developability, frame_field, is_cylindrical, is_torsal_ruling, striction_curve, surface_normal, verify_frenet,
    FrameField, RuledSurfaceSpec, DEFAULT_DEVELOPABLE_TOL,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    /// Invariant name, e.g. `frame-identities`.
    pub name: String,
    /// What was checked (surface or corpus item).
    pub subject: String,
    pub passed: bool,
    pub value: f64,
    pub limit: f64,
    pub detail: Option<String>,
}

/// Deliberate damage applied to computed frames, to exercise failure paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// Swap `h` and `a` in every frame sample.
    SwapCentralVectors,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    /// Limit for Frenet derivative and identity residuals.
    pub tol_frame: f64,
    pub samples: usize,
    pub corrupt: Option<Corruption>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { tol_frame: 1e-6, samples: 512, corrupt: None }
    }
}

const ORTHO_TOL: f64 = 1e-8;
const STRICTION_TOL: f64 = 1e-8;
const SPHERICAL_TOL: f64 = 1e-5;
const DELTA_TOL: f64 = 1e-6;
const LIMIT_V: f64 = 1e3;
const ODE3_TOL: f64 = 1e-4;

struct Sink<'a> {
    subject: &'a str,
    out: Vec<CheckResult>,
}

impl Sink<'_> {
    fn check(&mut self, name: &str, value: f64, limit: f64) {
        self.out.push(CheckResult {
            name: name.to_string(),
            subject: self.subject.to_string(),
            passed: value <= limit,
            value,
            limit,
            detail: None,
        });
    }

    fn flag(&mut self, name: &str, passed: bool, detail: String) {
        self.out.push(CheckResult {
            name: name.to_string(),
            subject: self.subject.to_string(),
            passed,
            value: if passed { 0.0 } else { 1.0 },
            limit: 0.0,
            detail: Some(detail),
        });
    }

    fn error(&mut self, name: &str, e: crate::Error) {
        self.flag(name, false, format!("{}: {e}", e.name()));
    }
}

fn corrupt(field: &mut FrameField, c: Option<Corruption>) {
    if let Some(Corruption::SwapCentralVectors) = c {
        for x in &mut field.samples {
            core::mem::swap(&mut x.h, &mut x.a);
        }
    }
}

/// Lorentz length of a polyline through `points`.
fn polyline_length(points: &[MVec3]) -> f64 {
    points.windows(2).map(|w| (w[1] - w[0]).lorentz_norm()).sum()
}

/// Arc length from polylines with `n` and `2n` chords, Richardson-extrapolated.
fn extrapolated_length<F: Fn(usize) -> Result<Vec<MVec3>>>(points: F, n: usize) -> Result<f64> {
    let coarse = polyline_length(&points(n)?);
    let fine = polyline_length(&points(2 * n)?);
    Ok((4.0 * fine - coarse) / 3.0)
}

/// All per-surface invariants. Cylindrical surfaces get only a
/// classification entry.
pub fn verify_surface(s: &RuledSurfaceSpec, opts: &SuiteOptions) -> Vec<CheckResult> {
    let mut sink = Sink { subject: &s.name, out: Vec::new() };
    match is_cylindrical(s) {
        Ok(true) => {
            sink.flag("cylindrical", true, String::from("constant ruling; frame checks skipped"));
            return sink.out;
        }
        Ok(false) => {}
        Err(e) => {
            sink.error("evaluation", e);
            return sink.out;
        }
    }
    let mut field = match frame_field(s, opts.samples) {
        Ok(f) => f,
        Err(e) => {
            sink.error("frame", e);
            return sink.out;
        }
    };
    corrupt(&mut field, opts.corrupt);

    let r = verify_frenet(&field);
    sink.check("frenet-equations", r.derivative(), opts.tol_frame);
    sink.check("frame-identities", r.identity, opts.tol_frame);
    sink.check("frame-orthonormality", r.orthonormality, ORTHO_TOL);
    let want = if field.eps_q == Sign::Plus { PseudoSphere::OnS12 } else { PseudoSphere::OnH02 };
    let off = field.samples.iter().filter(|x| pseudo_sphere_membership(x.q, 1.0, 1e-8) != want).count();
    sink.flag("ruling-pseudo-sphere", off == 0, format!("{off} samples off the {want:?} sphere"));

    spherical_images(&mut sink, s, &field, opts);

    match striction_curve(s) {
        Ok(c) => {
            let mut worst = 0.0f64;
            for u in s.base().grid() {
                match (s.ruling().velocity(u), c.velocity(u)) {
                    (Ok(dq), Ok(dc)) => worst = worst.max(libm::fabs(dq.inner(dc))),
                    (Err(e), _) | (_, Err(e)) => return fail(sink, "striction-orthogonality", e),
                }
            }
            sink.check("striction-orthogonality", worst, STRICTION_TOL);
        }
        Err(e) => sink.error("striction-orthogonality", e),
    }

    limit_normal(&mut sink, s, &field);

    match developability(s, DEFAULT_DEVELOPABLE_TOL) {
        Ok(d) => {
            let agree = d.developable == d.developable_by_delta(DELTA_TOL);
            sink.flag(
                "developability-equivalence",
                agree,
                format!("T=q deviation {:.3e}, max |delta| {:.3e}", d.max_tangent_deviation, d.max_abs_delta),
            );
            if let Some(a) = d.theta_delta_agreement {
                sink.check("angle-distribution-parameter", a, DELTA_TOL);
            }
        }
        Err(e) => sink.error("developability-equivalence", e),
    }
    sink.out
}

fn fail(mut sink: Sink<'_>, name: &str, e: crate::Error) -> Vec<CheckResult> {
    sink.error(name, e);
    sink.out
}

fn spherical_images(sink: &mut Sink<'_>, s: &RuledSurfaceSpec, field: &FrameField, opts: &SuiteOptions) {
    let (u0, u1) = s.interval();
    let total_k1 = match total_curvature_param(field) {
        Ok(t) => t.last_y(),
        Err(e) => return sink.error("spherical-image-q", e),
    };
    let q_points = |n: usize| -> Result<Vec<MVec3>> {
        linspace(u0, u1, n + 1).into_iter().map(|u| s.ruling().position(u)).collect()
    };
    match extrapolated_length(q_points, 4 * opts.samples) {
        Ok(len) => sink.check("spherical-image-q", libm::fabs(total_k1 - len), SPHERICAL_TOL),
        Err(e) => sink.error("spherical-image-q", e),
    }
    let k2: Vec<f64> = field.samples.iter().map(|x| libm::fabs(x.k2) * x.ds_dt).collect();
    let total_k2 = cumulative_uniform(&k2, field.step())[k2.len() - 1];
    let a_points = |n: usize| -> Result<Vec<MVec3>> {
        let mut f = frame_field(s, n + 1)?;
        corrupt(&mut f, opts.corrupt);
        Ok(f.samples.iter().map(|x| x.a).collect())
    };
    match extrapolated_length(a_points, 4 * opts.samples) {
        Ok(len) => sink.check("spherical-image-a", libm::fabs(total_k2 - len), SPHERICAL_TOL),
        Err(e) => sink.error("spherical-image-a", e),
    }
}

fn limit_normal(sink: &mut Sink<'_>, s: &RuledSurfaceSpec, field: &FrameField) {
    let mid = &field.samples[field.len() / 2];
    match is_torsal_ruling(s, mid.t, 1e-10) {
        Ok(true) => sink.flag("limit-normal", true, String::from("torsal ruling; not applicable")),
        Ok(false) => match surface_normal(s, mid.t, LIMIT_V) {
            Ok(m) => {
                let dev = (m - mid.a).euclid_norm().min((m + mid.a).euclid_norm());
                sink.check("limit-normal", dev, 10.0 / LIMIT_V);
            }
            Err(e) => sink.error("limit-normal", e),
        },
        Err(e) => sink.error("limit-normal", e),
    }
}

/// Every per-surface check over the analytic corpus, plus the third-order
/// equation on integrated frames, the developable-similarity theorem on
/// the corpus pairs, and the family corollaries.
pub fn builtin_suite(opts: &SuiteOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut surfaces = corpus::analytic_corpus();
    surfaces.push(corpus::theta_ntimes(0.0));
    surfaces.push(corpus::theta_nplus(0.0));
    for s in &surfaces {
        out.extend(verify_surface(s, opts));
    }

    let kinds = [("timelike(-1)", ProfileKind::Timelike(Sign::Minus)), ("timelike(+1)", ProfileKind::Timelike(Sign::Plus)), ("spacelike", ProfileKind::Spacelike)];
    let profiles = [("f=0.5", ScalarFn::Const(0.5)), ("f=1+0.1sin", ScalarFn::func(|x| (1.0 + 0.1 * libm::sin(x), 0.1 * libm::cos(x))))];
    for (kname, kind) in kinds {
        for (fname, f) in &profiles {
            let subject = format!("{fname} {kname}");
            let mut sink = Sink { subject: &subject, out: Vec::new() };
            let run = InvariantProfile::standard(f.clone(), kind, (0.0, 2.0)).and_then(|p| integrate_frenet(&p, 2000));
            match run {
                Ok(mut field) => {
                    corrupt(&mut field, opts.corrupt);
                    match ode3_residual(&field, f) {
                        Ok(r) => sink.check("third-order-equation", r.max(), ODE3_TOL),
                        Err(e) => sink.error("third-order-equation", e),
                    }
                    sink.check("frenet-equations", verify_frenet(&field).max(), 1e-5);
                }
                Err(e) => sink.error("third-order-equation", e),
            }
            out.extend(sink.out);
        }
    }

    let alpha = corpus::tangent_developable_alpha();
    for (name, other) in [("similar", corpus::tangent_developable_beta()), ("disjoint", corpus::tangent_developable_disjoint())] {
        let subject = format!("tangent developables ({name})");
        let mut sink = Sink { subject: &subject, out: Vec::new() };
        match check_developable_similarity(&alpha, &other, 1e-4) {
            Ok(r) => sink.flag(
                "developable-similarity",
                r.theorem_holds,
                format!("surfaces {} / striction curves {}", r.surfaces_similar, r.striction_curves_similar),
            ),
            Err(e) => sink.error("developable-similarity", e),
        }
        out.extend(sink.out);
    }

    let mut sink = Sink { subject: "families", out: Vec::new() };
    let conoid = family_check(&[corpus::helicoid(), corpus::shifted_helicoid(1.5)]);
    sink.flag("conoid-family", conoid.family == Family::Conoid && conoid.kind == FamilyKind::Timelike, format!("{:?}", conoid.family));
    let cyl = family_check(&[corpus::cylinder(), corpus::hyperbolic_cylinder()]);
    sink.flag("cylindrical-family", cyl.family == Family::Cylindrical, format!("{:?}", cyl.family));
    let mixed = family_check(&[corpus::helicoid(), corpus::nminus_conoid(), corpus::ntimes_conoid()]);
    sink.flag("mixed-family", mixed.family == Family::None, format!("{:?}", mixed.family));
    out.extend(sink.out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_suite_passes() {
        let r = builtin_suite(&SuiteOptions::default());
        let failed: Vec<_> = r.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(r.len() > 100);
    }

    #[test]
    fn corruption_is_caught() {
        let opts = SuiteOptions { corrupt: Some(Corruption::SwapCentralVectors), ..Default::default() };
        let r = verify_surface(&corpus::helicoid(), &opts);
        assert!(r.iter().any(|c| c.name == "frame-identities" && !c.passed));
    }

    #[test]
    fn cylinder_is_skipped() {
        let r = verify_surface(&corpus::cylinder(), &SuiteOptions::default());
        assert_eq!(r.len(), 1);
        assert!(r[0].passed);
    }
}
