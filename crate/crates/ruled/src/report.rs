//! Machine-readable reports. Field order is fixed and nothing depends on
//! time or environment, so identical inputs serialize to identical bytes.

use serde::Serialize;

use ruled_core::similarity::{DevelopableSimilarity, SimilarityMode, SimilarityReport};
use ruled_core::surfaces::{Developability, FrenetResiduals};
use ruled_core::verify::CheckResult;
use ruled_core::Sign;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn pairs(v: &[(f64, f64)]) -> Vec<[f64; 2]> {
    v.iter().map(|&(a, b)| [a, b]).collect()
}

pub fn sign(s: Sign) -> i8 {
    s.value() as i8
}

/// Top-level wrapper keeping the version apart from the payload.
#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub version: &'static str,
    pub report: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(report: T) -> Self {
        Envelope { version: VERSION, report }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FrenetSummary {
    pub derivative: f64,
    pub identity: f64,
    pub orthonormality: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl FrenetSummary {
    pub fn new(r: &FrenetResiduals, tolerance: f64) -> Self {
        FrenetSummary {
            derivative: r.derivative(),
            identity: r.identity,
            orthonormality: r.orthonormality,
            tolerance,
            passed: r.max() <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DevelopabilitySummary {
    pub developable: bool,
    pub developable_by_delta: bool,
    pub max_tangent_deviation: f64,
    pub max_abs_delta: f64,
    pub theta_delta_agreement: Option<f64>,
    pub character_mismatch: bool,
}

impl DevelopabilitySummary {
    pub fn new(d: &Developability, tol: f64) -> Self {
        DevelopabilitySummary {
            developable: d.developable,
            developable_by_delta: d.developable_by_delta(tol),
            max_tangent_deviation: d.max_tangent_deviation,
            max_abs_delta: d.max_abs_delta,
            theta_delta_agreement: d.theta_delta_agreement,
            character_mismatch: d.character_mismatch,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub classification: String,
    pub kind: Option<String>,
    pub eps_q: i8,
    pub eps_h: Option<i8>,
    pub eps_a: Option<i8>,
    pub interval: [f64; 2],
    pub samples: usize,
    pub delta_range: Option<[f64; 2]>,
    pub k1_range: Option<[f64; 2]>,
    pub k2_range: Option<[f64; 2]>,
    pub f_range: Option<[f64; 2]>,
    pub striction_arc_length: Option<f64>,
    pub total_phi: Option<f64>,
    pub frenet: Option<FrenetSummary>,
    pub developability: Option<DevelopabilitySummary>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DevelopableSection {
    pub surfaces_similar: bool,
    pub striction_curves_similar: bool,
    pub theorem_holds: bool,
    pub characters_agree: bool,
    pub curve_lambda_table: Vec<[f64; 2]>,
    pub notes: Vec<String>,
}

impl DevelopableSection {
    pub fn new(d: &DevelopableSimilarity) -> Self {
        DevelopableSection {
            surfaces_similar: d.surfaces_similar,
            striction_curves_similar: d.striction_curves_similar,
            theorem_holds: d.theorem_holds,
            characters_agree: d.characters_agree,
            curve_lambda_table: pairs(&d.curve_report.lambda_samples),
            notes: d.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub first: String,
    pub second: String,
    pub mode: &'static str,
    pub tolerance: f64,
    pub similar: bool,
    pub kind: &'static str,
    pub f_profile_deviation: f64,
    pub lambda_consistency: Option<f64>,
    pub phi_overlap: [f64; 2],
    pub phi_offset: f64,
    pub ruling_deviation: Option<f64>,
    pub central_normal_deviation: Option<f64>,
    pub asymptotic_normal_sign: Option<i8>,
    pub asymptotic_normal_deviation: Option<f64>,
    /// `[s_second, lambda]`.
    pub lambda_table: Vec<[f64; 2]>,
    /// `[s_second, s_first]`.
    pub s_first_of_s_second: Vec<[f64; 2]>,
    /// `[phi, f]` of each surface.
    pub f_first: Vec<[f64; 2]>,
    pub f_second: Vec<[f64; 2]>,
    pub developable: Option<DevelopableSection>,
    pub notes: Vec<String>,
}

pub fn mode_name(m: SimilarityMode) -> &'static str {
    match m {
        SimilarityMode::ByInvariants => "invariants",
        SimilarityMode::ByDefinition => "definition",
    }
}

impl CompareReport {
    pub fn new(first: &str, second: &str, kind: &'static str, tolerance: f64, r: &SimilarityReport) -> Self {
        CompareReport {
            first: first.to_string(),
            second: second.to_string(),
            mode: mode_name(r.mode),
            tolerance,
            similar: r.is_similar,
            kind,
            f_profile_deviation: r.f_profile_deviation,
            lambda_consistency: r.lambda_consistency,
            phi_overlap: [r.phi_overlap.0, r.phi_overlap.1],
            phi_offset: r.phi_offset,
            ruling_deviation: r.ruling_deviation,
            central_normal_deviation: r.central_normal_deviation,
            asymptotic_normal_sign: r.asymptotic_normal_sign.map(sign),
            asymptotic_normal_deviation: r.asymptotic_normal_deviation,
            lambda_table: pairs(&r.lambda_table),
            s_first_of_s_second: pairs(&r.s_alpha_of_s_beta),
            f_first: pairs(&r.f_alpha),
            f_second: pairs(&r.f_beta),
            developable: None,
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub subject: String,
    pub passed: bool,
    pub value: f64,
    pub limit: f64,
    pub detail: Option<String>,
}

impl From<&CheckResult> for CheckRow {
    fn from(c: &CheckResult) -> Self {
        CheckRow {
            name: c.name.clone(),
            subject: c.subject.clone(),
            passed: c.passed,
            value: c.value,
            limit: c.limit,
            detail: c.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn new(checks: &[CheckResult]) -> Self {
        VerifyReport {
            total: checks.len(),
            failed: checks.iter().filter(|c| !c.passed).count(),
            checks: checks.iter().map(CheckRow::from).collect(),
        }
    }
}

/// Compact number for human-readable output: ten significant digits,
/// exponent form outside `[1e-4, 1e6)`.
pub fn short(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let r: f64 = format!("{x:.9e}").parse().unwrap_or(x);
    if r == 0.0 {
        return "0".into();
    }
    if !(1e-4..1e6).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_numbers() {
        assert_eq!(short(1.0000000000002), "1");
        assert_eq!(short(-0.25), "-0.25");
        assert_eq!(short(3.2e-9), "3.2e-9");
        assert_eq!(short(0.0), "0");
        assert_eq!(short(-0.0), "0");
        assert_eq!(short(2.5e7), "2.5e7");
    }

    #[test]
    fn envelope_keeps_version_separate() {
        let json = Envelope::new(VerifyReport::new(&[])).to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["version"], VERSION);
        assert_eq!(v["report"]["total"], 0);
    }
}
