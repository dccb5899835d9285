//! Similar curves with variable transformation: two curves whose unit
//! tangents coincide under a monotone change of arc length
//! `s_alpha = integral of lambda(s_beta) ds_beta`.
//!
//! The transformation is recovered by using the arc length of the tangent
//! indicatrix (normalized to `[0, 1]`) as a common clock for both curves.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{arc_length_table, unit_tangent_jet, ParamCurve};
use crate::error::{Error, Result};
use crate::lorentz::{causal_character, CausalCharacter, DEFAULT_TOL_NULL};
use crate::numeric::{linspace, simpson_panel, MonotoneTable};

pub const DEFAULT_SIMILAR_CURVE_TOL: f64 = 1e-6;

/// Indicatrix speeds below this make the matching ambiguous.
const MIN_INDICATRIX_SPEED: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarCurveReport {
    pub is_similar: bool,
    /// `(s_beta, lambda(s_beta))`, arc lengths measured from the start of
    /// each curve's interval.
    pub lambda_samples: Vec<(f64, f64)>,
    /// `(s_beta, s_alpha(s_beta))`.
    pub s_alpha_of_s_beta: Vec<(f64, f64)>,
    /// `(u_beta, u_alpha)` curve parameters of the matched samples.
    pub matched_parameters: Vec<(f64, f64)>,
    /// Max Euclidean norm of `T_alpha - T_beta` over the matched samples.
    pub max_tangent_deviation: f64,
    pub notes: Vec<String>,
}

struct Indicatrix {
    character: CausalCharacter,
    s_of_u: MonotoneTable,
    u_of_tau: MonotoneTable,
    /// Total indicatrix length.
    total: f64,
}

impl Indicatrix {
    /// `d tau / ds`: curvature over total indicatrix length.
    fn tau_rate(&self, c: &ParamCurve, u: f64) -> Result<f64> {
        Ok(indicatrix_speed(c, u)? / (self.s_of_u.slope(u) * self.total))
    }
}

fn indicatrix_speed(c: &ParamCurve, u: f64) -> Result<f64> {
    let (_, dt) = unit_tangent_jet(c, u)?;
    let speed = dt.lorentz_norm();
    if speed <= MIN_INDICATRIX_SPEED
        || causal_character(dt, DEFAULT_TOL_NULL) == CausalCharacter::Null
    {
        return Err(Error::DegenerateIndicatrix { at: u });
    }
    Ok(speed)
}

fn indicatrix(c: &ParamCurve) -> Result<Indicatrix> {
    let arc = arc_length_table(c)?;
    let u = &arc.u;
    let mut speed = Vec::with_capacity(u.len());
    speed.push(indicatrix_speed(c, u[0])?);
    let mut iota = Vec::with_capacity(u.len());
    iota.push(0.0);
    for i in 1..u.len() {
        let mid = indicatrix_speed(c, 0.5 * (u[i - 1] + u[i]))?;
        let end = indicatrix_speed(c, u[i])?;
        let prev = iota[i - 1];
        iota.push(prev + simpson_panel(u[i - 1], u[i], speed[i - 1], mid, end));
        speed.push(end);
    }
    let total = iota[iota.len() - 1];
    let tau: Vec<f64> = iota.iter().map(|x| x / total).collect();
    let dtau: Vec<f64> = speed.iter().map(|x| x / total).collect();
    let u_of_tau = MonotoneTable::with_slopes(u.clone(), tau, dtau).inverse();
    Ok(Indicatrix { character: arc.character, s_of_u: arc.table(), u_of_tau, total })
}

/// Decides whether `alpha` and `beta` are similar curves and recovers the
/// variable transformation.
///
/// Tangents are compared pointwise (Euclidean norm of the difference) at
/// equal normalized indicatrix arc length; the pair is similar when the
/// deviation stays within `tol` and the induced `s_alpha(s_beta)` is strictly
/// increasing. `lambda = ds_alpha/ds_beta` is the ratio of the rates at
/// which the two normalized indicatrices are traversed.
pub fn are_similar_curves(alpha: &ParamCurve, beta: &ParamCurve, tol: f64) -> Result<SimilarCurveReport> {
    let ia = indicatrix(alpha)?;
    let ib = indicatrix(beta)?;
    let mut notes = Vec::new();
    if ia.character != ib.character {
        notes.push(format!(
            "tangents have different causal characters ({:?} vs {:?})",
            ia.character, ib.character
        ));
    }
    let m = alpha.samples().max(beta.samples());
    let mut matched = Vec::with_capacity(m);
    let mut table = Vec::with_capacity(m);
    let mut lambda = Vec::with_capacity(m);
    let mut max_dev: f64 = 0.0;
    for tau in linspace(0.0, 1.0, m) {
        let ua = ia.u_of_tau.eval(tau);
        let ub = ib.u_of_tau.eval(tau);
        let (ta, _) = unit_tangent_jet(alpha, ua)?;
        let (tb, _) = unit_tangent_jet(beta, ub)?;
        max_dev = max_dev.max((ta - tb).euclid_norm());
        matched.push((ub, ua));
        let sb = ib.s_of_u.eval(ub);
        table.push((sb, ia.s_of_u.eval(ua)));
        lambda.push((sb, ib.tau_rate(beta, ub)? / ia.tau_rate(alpha, ua)?));
    }
    let monotone = table.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1);
    let positive = lambda.iter().all(|(_, l)| *l > 0.0);
    if !monotone {
        notes.push(String::from("matched arc-length table is not strictly increasing"));
    }
    let is_similar = max_dev <= tol && monotone && positive && ia.character == ib.character;
    Ok(SimilarCurveReport {
        is_similar,
        lambda_samples: lambda,
        s_alpha_of_s_beta: table,
        matched_parameters: matched,
        max_tangent_deviation: max_dev,
        notes,
    })
}

/// Trapezoid integral of `lambda ds_beta` over a lambda table.
pub fn integrate_lambda(lambda: &[(f64, f64)]) -> f64 {
    lambda
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum()
}
