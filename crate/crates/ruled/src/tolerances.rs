use ruled_core::lorentz::DEFAULT_TOL_NULL;
use ruled_core::similarity::DEFAULT_SIMILARITY_TOL;

use crate::error::{CliError, CliResult};
use crate::keyvalue::parse_number;

/// Environment variable with comma-separated `key=value` tolerance
/// overrides. Command-line flags take precedence.
pub const OVERRIDES_VAR: &str = "RULED_TOL_OVERRIDES";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative band for null classification.
    pub null: f64,
    /// Frenet and identity residual limit.
    pub frame: f64,
    /// Invariant-profile deviation limit for similarity.
    pub similar: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { null: DEFAULT_TOL_NULL, frame: 1e-6, similar: DEFAULT_SIMILARITY_TOL }
    }
}

/// Values given on the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TolFlags {
    pub null: Option<f64>,
    pub frame: Option<f64>,
    pub similar: Option<f64>,
}

impl Tolerances {
    /// Defaults, then `env` overrides, then flags.
    pub fn resolve(flags: TolFlags, env: Option<&str>) -> CliResult<Self> {
        let mut t = Tolerances::default();
        for item in env.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("{OVERRIDES_VAR}: expected key=value, got `{item}`")))?;
            let value = parse_number(value.trim())
                .ok_or_else(|| CliError::Usage(format!("{OVERRIDES_VAR}: `{key}` needs a number")))?;
            match key.trim().replace('-', "_").as_str() {
                "tol_null" | "null" => t.null = value,
                "tol_frame" | "frame" => t.frame = value,
                "tol_similar" | "similar" => t.similar = value,
                other => return Err(CliError::Usage(format!("{OVERRIDES_VAR}: unknown tolerance `{other}`"))),
            }
        }
        t.null = flags.null.unwrap_or(t.null);
        t.frame = flags.frame.unwrap_or(t.frame);
        t.similar = flags.similar.unwrap_or(t.similar);
        for (name, v) in [("null", t.null), ("frame", t.frame), ("similar", t.similar)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(CliError::Usage(format!("tolerance `{name}` must be finite and non-negative")));
            }
        }
        Ok(t)
    }

    pub fn from_env(flags: TolFlags) -> CliResult<Self> {
        Self::resolve(flags, std::env::var(OVERRIDES_VAR).ok().as_deref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_environment() {
        let flags = TolFlags { frame: Some(1e-3), ..TolFlags::default() };
        let t = Tolerances::resolve(flags, Some("tol_frame=1e-2, tol-similar=5e-4")).unwrap();
        assert_eq!(t.frame, 1e-3);
        assert_eq!(t.similar, 5e-4);
        assert_eq!(t.null, DEFAULT_TOL_NULL);
    }

    #[test]
    fn bad_overrides_are_usage_errors() {
        for env in ["tol_frame", "tol_frame=abc", "tol_bogus=1", "tol_null=-1"] {
            let e = Tolerances::resolve(TolFlags::default(), Some(env)).unwrap_err();
            assert!(matches!(e, CliError::Usage(_)), "{env}");
        }
    }
}
