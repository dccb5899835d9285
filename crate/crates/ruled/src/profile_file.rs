//! Invariant profiles for `reconstruct`.
//!
//! ```text
//! name = helix
//! kind = timelike      # or spacelike
//! eps_q = -1           # ruling character of a timelike surface
//! f = 0.5              # expression in u, read as phi
//! k1 = 1               # expression in u, read as striction arc length
//! phi = 0, 2
//! steps = 1000
//! developable = true   # or: theta = 0.3, an expression in arc length
//! v = -1, 1
//! v_steps = 16
//! ```

use std::path::Path;

use ruled_core::reconstruct::{InvariantProfile, ProfileKind, MIN_STEPS};
use ruled_core::scalar::ScalarFn;
use ruled_core::Sign;

use crate::error::{CliError, CliResult};
use crate::keyvalue::{format_error, KeyValues};

const KEYS: [&str; 11] = ["name", "kind", "eps_q", "f", "k1", "phi", "steps", "developable", "theta", "v", "v_steps"];

pub const DEFAULT_STEPS: usize = 1000;
pub const DEFAULT_V_STEPS: usize = 16;

#[derive(Debug, Clone)]
pub struct ProfileFile {
    pub name: String,
    pub profile: InvariantProfile,
    pub steps: usize,
    /// `None` builds the developable surface.
    pub theta: Option<ScalarFn>,
    pub v_range: (f64, f64),
    pub v_steps: usize,
}

impl ProfileFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let kv = KeyValues::read(path)?;
        kv.check_keys(&KEYS)?;
        let name = kv.get("name").map_or_else(|| String::from("reconstructed"), |e| e.value.clone());
        if name.is_empty() || name.contains(['/', '\\']) {
            return Err(format_error(path, kv.require("name")?.line, "`name` must be a plain file stem"));
        }
        let kind_entry = kv.require("kind")?;
        let eps_q = match kv.get("eps_q") {
            Some(e) => match kv.number(e)? {
                x if x == 1.0 => Some(Sign::Plus),
                x if x == -1.0 => Some(Sign::Minus),
                _ => return Err(format_error(path, e.line, "`eps_q` must be 1 or -1")),
            },
            None => None,
        };
        let kind = match (kind_entry.value.as_str(), eps_q) {
            ("timelike", Some(e)) => ProfileKind::Timelike(e),
            ("timelike", None) => return Err(format_error(path, kind_entry.line, "a timelike profile needs `eps_q`")),
            ("spacelike", None | Some(Sign::Plus)) => ProfileKind::Spacelike,
            ("spacelike", Some(Sign::Minus)) => {
                return Err(format_error(path, kv.require("eps_q")?.line, "spacelike surfaces have spacelike rulings"))
            }
            (other, _) => {
                return Err(format_error(path, kind_entry.line, format!("`kind` must be timelike or spacelike, got `{other}`")))
            }
        };
        let f = ScalarFn::expr(kv.expr(kv.require("f")?)?);
        let k1 = match kv.get("k1") {
            Some(e) => ScalarFn::expr(kv.expr(e)?),
            None => ScalarFn::Const(1.0),
        };
        let phi = kv.range(kv.require("phi")?)?;
        let steps = kv.get("steps").map(|e| kv.count(e)).transpose()?.unwrap_or(DEFAULT_STEPS);
        let developable = kv.get("developable").map(|e| kv.flag(e)).transpose()?;
        let theta = kv.get("theta").map(|e| kv.expr(e)).transpose()?.map(ScalarFn::expr);
        if developable == Some(true) && theta.is_some() {
            return Err(format_error(path, kv.require("theta")?.line, "`theta` contradicts `developable = true`"));
        }
        if developable == Some(false) && theta.is_none() {
            return Err(format_error(path, kv.require("developable")?.line, "`developable = false` needs `theta`"));
        }
        let v_range = kv.get("v").map(|e| kv.range(e)).transpose()?.unwrap_or((-1.0, 1.0));
        let v_steps = kv.get("v_steps").map(|e| kv.count(e)).transpose()?.unwrap_or(DEFAULT_V_STEPS);
        let profile = InvariantProfile::new(f, kind, phi, k1, kind.standard_frame()).map_err(CliError::Geometry)?;
        Ok(ProfileFile { name, profile, steps, theta, v_range, v_steps })
    }

    pub fn check_steps(steps: usize) -> CliResult<()> {
        if steps < MIN_STEPS {
            return Err(CliError::Usage(format!("steps must be at least {MIN_STEPS}, got {steps}")));
        }
        Ok(())
    }
}
