//! Similar ruled surfaces with variable transformation.
//!
//! Two frames are compared through their curvature ratio `f = k2/k1` as a
//! function of the total-curvature parameter `phi = integral of k1 ds`.
//! Matching equal `phi` induces the transformation `s_alpha(s_beta)`, and
//! `lambda = ds_alpha/ds_beta = k1_beta/k1_alpha`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::curves::{are_similar_curves, SimilarCurveReport};
use crate::error::{Error, Result};
use crate::lorentz::{MVec3, Sign};
use crate::numeric::{cumulative_uniform, golden_section, hermite, linspace, bracket, MonotoneTable};
use crate::surfaces::{
    classify, developability, frame_field, is_cylindrical, striction_curve, surface_kind, FrameField,
    RuledSurfaceSpec, SurfaceKind, SurfaceType, DEFAULT_DEVELOPABLE_TOL, K1_MIN,
};

/// Default tolerance on the `f`-profile deviation.
pub const DEFAULT_SIMILARITY_TOL: f64 = 1e-4;
/// `|k2|` below this (relative to `k1`) counts as zero.
pub const K2_ZERO: f64 = 1e-8;
/// The `k2`-ratio cross-check is only made where `|k2| / k1` exceeds this.
const K2_RATIO_MIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimilarityMode {
    /// Compare the invariant profiles `f(phi)` only.
    ByInvariants,
    /// Additionally compare the frames pointwise under the transformation.
    ByDefinition,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityOptions {
    pub tol: f64,
    pub mode: SimilarityMode,
    /// Search for a constant `phi` offset between the two profiles instead
    /// of anchoring both at their starts.
    pub search_offset: bool,
}

impl Default for SimilarityOptions {
    fn default() -> Self {
        SimilarityOptions { tol: DEFAULT_SIMILARITY_TOL, mode: SimilarityMode::ByInvariants, search_offset: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityReport {
    pub is_similar: bool,
    pub mode: SimilarityMode,
    /// `(s_beta, lambda)` at the matched samples.
    pub lambda_table: Vec<(f64, f64)>,
    /// `(s_beta, s_alpha)` at the matched samples.
    pub s_alpha_of_s_beta: Vec<(f64, f64)>,
    /// `max |k1_b/k1_a - k2_b/k2_a|` where both `k2` are away from zero.
    pub lambda_consistency: Option<f64>,
    pub f_profile_deviation: f64,
    /// Common `phi` range, in the first surface's anchored `phi`.
    pub phi_overlap: (f64, f64),
    /// `phi_beta = phi_alpha - phi_offset` at matched points.
    pub phi_offset: f64,
    pub f_alpha: Vec<(f64, f64)>,
    pub f_beta: Vec<(f64, f64)>,
    pub ruling_deviation: Option<f64>,
    pub central_normal_deviation: Option<f64>,
    /// `eps_alpha eps_beta` (timelike surfaces only).
    pub asymptotic_normal_sign: Option<Sign>,
    /// `max |a_alpha - eps_alpha eps_beta a_beta|` (spacelike: `|a_a - a_b|`).
    pub asymptotic_normal_deviation: Option<f64>,
    pub notes: Vec<String>,
}

/// `phi(s) = integral of k1 ds`, zero at the first sample, as a table with
/// `x = s`, `y = phi` and slopes `k1`.
pub fn total_curvature_param(field: &FrameField) -> Result<MonotoneTable> {
    check_k1(field)?;
    let y: Vec<f64> = field.samples.iter().map(|x| x.k1 * x.ds_dt).collect();
    let phi = cumulative_uniform(&y, field.step());
    let s: Vec<f64> = field.samples.iter().map(|x| x.s).collect();
    let k1: Vec<f64> = field.samples.iter().map(|x| x.k1).collect();
    Ok(MonotoneTable::with_slopes(s, phi, k1))
}

/// `(phi, f)` on a uniform `phi` grid with as many points as the frame.
pub fn curvature_ratio_profile(field: &FrameField) -> Result<Vec<(f64, f64)>> {
    let p = Profile::new(field)?;
    Ok(linspace(0.0, p.total(), field.len()).into_iter().map(|phi| (phi, p.f.eval(phi))).collect())
}

fn check_k1(field: &FrameField) -> Result<()> {
    if field.len() < 2 {
        return Err(Error::InvalidInput("frame has fewer than two samples".into()));
    }
    for x in &field.samples {
        if !(x.k1 > K1_MIN) {
            return Err(Error::DegenerateK1 { at: x.s });
        }
    }
    Ok(())
}

/// A frame re-indexed by its anchored total-curvature parameter.
struct Profile<'a> {
    field: &'a FrameField,
    phi: Vec<f64>,
    f: MonotoneTable,
    s: MonotoneTable,
    k1: MonotoneTable,
    k2: MonotoneTable,
}

impl<'a> Profile<'a> {
    fn new(field: &'a FrameField) -> Result<Self> {
        let table = total_curvature_param(field)?;
        let phi = table.y.clone();
        if !phi.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::DegenerateK1 { at: field.samples[0].s });
        }
        let col = |g: fn(&crate::surfaces::FrameSample) -> f64| -> Vec<f64> { field.samples.iter().map(g).collect() };
        let f = MonotoneTable::from_samples(phi.clone(), col(|x| x.k2 / x.k1));
        let s_of_phi = table.inverse();
        let k1 = MonotoneTable::from_samples(phi.clone(), col(|x| x.k1));
        let k2 = MonotoneTable::from_samples(phi.clone(), col(|x| x.k2));
        Ok(Profile { field, phi, f, s: s_of_phi, k1, k2 })
    }

    fn total(&self) -> f64 {
        self.phi[self.phi.len() - 1]
    }

    /// Frame at `phi` by Hermite interpolation with Frenet derivatives.
    fn frame(&self, phi: f64) -> [MVec3; 3] {
        let i = bracket(&self.phi, phi);
        let (x0, x1) = (&self.field.samples[i], &self.field.samples[i + 1]);
        let (d0, d1) = (self.field.frenet_rhs(x0), self.field.frenet_rhs(x1));
        let (p0, p1) = (self.phi[i], self.phi[i + 1]);
        let v0 = [x0.q, x0.h, x0.a];
        let v1 = [x1.q, x1.h, x1.a];
        core::array::from_fn(|r| hermite(p0, p1, v0[r], v1[r], d0[r] / x0.k1, d1[r] / x1.k1, phi))
    }
}

fn kinds_compatible(a: &FrameField, b: &FrameField) -> Result<()> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch(format!("{} vs {}", a.kind().name(), b.kind().name())));
    }
    if a.surface_type != b.surface_type {
        return Err(Error::KindMismatch(format!(
            "timelike surfaces of different types ({} vs {})",
            a.surface_type.name(),
            b.surface_type.name()
        )));
    }
    Ok(())
}

pub fn are_similar_ruled(a: &FrameField, b: &FrameField, tol: f64, mode: SimilarityMode) -> Result<SimilarityReport> {
    are_similar_ruled_with(a, b, &SimilarityOptions { tol, mode, search_offset: false })
}

pub fn are_similar_ruled_with(a: &FrameField, b: &FrameField, opts: &SimilarityOptions) -> Result<SimilarityReport> {
    kinds_compatible(a, b)?;
    let pa = Profile::new(a)?;
    let pb = Profile::new(b)?;
    let m = a.len().max(b.len());
    let mut notes = Vec::new();

    // f_a(phi) vs f_b(phi - offset) on the overlap
    let overlap = |d: f64| (d.max(0.0), pa.total().min(pb.total() + d));
    let deviation = |d: f64| -> f64 {
        let (lo, hi) = overlap(d);
        if hi <= lo {
            return f64::INFINITY;
        }
        linspace(lo, hi, m).into_iter().fold(0.0f64, |acc, phi| acc.max(libm::fabs(pa.f.eval(phi) - pb.f.eval(phi - d))))
    };
    let offset = if opts.search_offset {
        let d = golden_section(deviation, -0.5 * pb.total(), 0.5 * pa.total(), 1e-10 * (1.0 + pa.total()));
        notes.push(format!("phi offset {d:.6e} found by search"));
        d
    } else {
        0.0
    };
    let (lo, hi) = overlap(offset);
    let nondegenerate = hi - lo > 1e-9 * (1.0 + pa.total().max(pb.total()));
    if !nondegenerate {
        notes.push(String::from("phi ranges do not overlap"));
    }
    if pa.total() != pb.total() && (pa.total() - pb.total()).abs() > 1e-6 * pa.total() {
        notes.push(format!(
            "phi ranges differ ({:.6} vs {:.6}); compared on the overlap",
            pa.total(),
            pb.total()
        ));
    }
    let grid = if nondegenerate { linspace(lo, hi, m) } else { Vec::new() };
    let f_dev = if nondegenerate { deviation(offset) } else { f64::INFINITY };

    let mut lambda_table = Vec::with_capacity(grid.len());
    let mut s_table = Vec::with_capacity(grid.len());
    let mut consistency: Option<f64> = None;
    for &phi in &grid {
        let pb_phi = phi - offset;
        let (k1a, k1b) = (pa.k1.eval(phi), pb.k1.eval(pb_phi));
        let lambda = k1b / k1a;
        let sb = pb.s.eval(pb_phi);
        lambda_table.push((sb, lambda));
        s_table.push((sb, pa.s.eval(phi)));
        let (k2a, k2b) = (pa.k2.eval(phi), pb.k2.eval(pb_phi));
        if libm::fabs(k2a) > K2_RATIO_MIN * k1a && libm::fabs(k2b) > K2_RATIO_MIN * k1b {
            let c = libm::fabs(lambda - k2b / k2a);
            consistency = Some(consistency.map_or(c, |m: f64| m.max(c)));
        }
    }
    let all_conoid = a.samples.iter().chain(&b.samples).all(|x| libm::fabs(x.k2) <= K2_ZERO * x.k1);
    if all_conoid {
        notes.push(String::from("both surfaces are conoids (k2 = 0); lambda from the k1 ratio only"));
    }
    let positive = lambda_table.iter().all(|(_, l)| *l > 0.0);
    let mut is_similar = nondegenerate && f_dev <= opts.tol && positive;

    let mut report = SimilarityReport {
        is_similar,
        mode: opts.mode,
        lambda_table,
        s_alpha_of_s_beta: s_table,
        lambda_consistency: consistency,
        f_profile_deviation: f_dev,
        phi_overlap: (lo, hi),
        phi_offset: offset,
        f_alpha: pa.phi.iter().zip(&pa.f.y).map(|(x, y)| (*x, *y)).collect(),
        f_beta: pb.phi.iter().zip(&pb.f.y).map(|(x, y)| (*x, *y)).collect(),
        ruling_deviation: None,
        central_normal_deviation: None,
        asymptotic_normal_sign: None,
        asymptotic_normal_deviation: None,
        notes,
    };

    if opts.mode == SimilarityMode::ByDefinition && nondegenerate {
        let sign = a.eps_q * b.eps_q;
        let (mut dq, mut dh, mut da) = (0.0f64, 0.0f64, 0.0f64);
        for &phi in &grid {
            let [qa, ha, aa] = pa.frame(phi);
            let [qb, hb, ab] = pb.frame(phi - offset);
            dq = dq.max((qa - qb).euclid_norm());
            dh = dh.max((ha - hb).euclid_norm());
            let ab = if a.kind() == SurfaceKind::Timelike { ab * sign.value() } else { ab };
            da = da.max((aa - ab).euclid_norm());
        }
        report.ruling_deviation = Some(dq);
        report.central_normal_deviation = Some(dh);
        report.asymptotic_normal_deviation = Some(da);
        if a.kind() == SurfaceKind::Timelike {
            report.asymptotic_normal_sign = Some(sign);
        }
        is_similar = is_similar && dq <= opts.tol && dh <= opts.tol;
        report.is_similar = is_similar;
    }
    Ok(report)
}

/// Outcome of comparing two developable surfaces and their striction curves.
#[derive(Debug, Clone, PartialEq)]
pub struct DevelopableSimilarity {
    pub surfaces_similar: bool,
    pub striction_curves_similar: bool,
    pub theorem_holds: bool,
    /// Striction tangents share the rulings' causal character on both.
    pub characters_agree: bool,
    pub surface_report: Option<SimilarityReport>,
    pub curve_report: SimilarCurveReport,
    pub notes: Vec<String>,
}

/// Compares two developable surfaces (in [`SimilarityMode::ByDefinition`])
/// and their striction curves; the two verdicts should coincide.
pub fn check_developable_similarity(a: &RuledSurfaceSpec, b: &RuledSurfaceSpec, tol: f64) -> Result<DevelopableSimilarity> {
    let da = developability(a, DEFAULT_DEVELOPABLE_TOL)?;
    if !da.developable {
        return Err(Error::NotDevelopable { which: "first", deviation: da.max_tangent_deviation });
    }
    let db = developability(b, DEFAULT_DEVELOPABLE_TOL)?;
    if !db.developable {
        return Err(Error::NotDevelopable { which: "second", deviation: db.max_tangent_deviation });
    }
    let mut notes = Vec::new();
    let characters_agree = !da.character_mismatch && !db.character_mismatch;
    if !characters_agree {
        notes.push(String::from("a striction curve does not share its ruling's causal character"));
    }
    let fa = frame_field(a, a.samples())?;
    let fb = frame_field(b, b.samples())?;
    let surface_report = match are_similar_ruled(&fa, &fb, tol, SimilarityMode::ByDefinition) {
        Ok(r) => Some(r),
        Err(Error::KindMismatch(msg)) => {
            notes.push(format!("surfaces not comparable: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let surfaces_similar = surface_report.as_ref().is_some_and(|r| r.is_similar);
    let curve_report = are_similar_curves(&striction_curve(a)?, &striction_curve(b)?, tol)?;
    let striction_curves_similar = curve_report.is_similar;
    Ok(DevelopableSimilarity {
        surfaces_similar,
        striction_curves_similar,
        theorem_holds: surfaces_similar == striction_curves_similar,
        characters_agree,
        surface_report,
        curve_report,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cylindrical,
    Conoid,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Timelike,
    Spacelike,
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub family: Family,
    pub kind: FamilyKind,
    pub notes: Vec<String>,
}

/// Whether a list of surfaces forms a cylindrical or conoid family, whose
/// members are similar to each other.
pub fn family_check(surfaces: &[RuledSurfaceSpec]) -> FamilyReport {
    let mut notes = Vec::new();
    let mut kinds = Vec::with_capacity(surfaces.len());
    let mut types = Vec::with_capacity(surfaces.len());
    let mut cylindrical = 0;
    let mut conoid = 0;
    for s in surfaces {
        if is_cylindrical(s).unwrap_or(false) {
            cylindrical += 1;
            kinds.push(surface_kind(s).ok().flatten());
            types.push(Some(SurfaceType::Cylindrical));
            continue;
        }
        match frame_field(s, s.samples()) {
            Ok(f) => {
                kinds.push(Some(f.kind()));
                types.push(Some(f.surface_type));
                if f.samples.iter().all(|x| x.k1 > K1_MIN && libm::fabs(x.k2) <= K2_ZERO * x.k1.max(1.0)) {
                    conoid += 1;
                }
            }
            Err(e) => {
                notes.push(format!("{}: {}", s.name, e));
                kinds.push(surface_kind(s).ok().flatten());
                types.push(classify(s).ok());
            }
        }
    }
    let kind = match kinds.first() {
        Some(Some(k)) if kinds.iter().all(|x| *x == Some(*k)) => match k {
            SurfaceKind::Timelike => FamilyKind::Timelike,
            SurfaceKind::Spacelike => FamilyKind::Spacelike,
        },
        _ => FamilyKind::Mixed,
    };
    let same_type = types.first().is_some_and(|t| t.is_some() && types.iter().all(|x| x == t));
    let family = if surfaces.is_empty() {
        Family::None
    } else if cylindrical == surfaces.len() {
        notes.push(String::from("cylinders form a family although their constant rulings may differ as vectors"));
        Family::Cylindrical
    } else if conoid == surfaces.len() && kind != FamilyKind::Mixed && same_type {
        Family::Conoid
    } else {
        Family::None
    };
    FamilyReport { family, kind, notes }
}
