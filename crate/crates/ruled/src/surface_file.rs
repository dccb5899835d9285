//! Surface definition files.
//!
//! ```text
//! # helicoid
//! name = H1
//! kind = analytic
//! base_x = u
//! base_y = 0
//! base_z = 0
//! ruling_x = 0
//! ruling_y = cos(u)
//! ruling_z = sin(u)
//! domain = 0, 2
//! samples = 512
//! ```
//!
//! A sampled surface replaces the six expressions by `sampled = file.csv`,
//! a table with header `u,kx,ky,kz,qx,qy,qz`; relative paths are resolved
//! against the definition file's directory.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use ruled_core::curves::{ExprCurve, ParamCurve, SampledCurve, DEFAULT_SAMPLES};
use ruled_core::exprdsl::Expr;
use ruled_core::surfaces::RuledSurfaceSpec;

use crate::error::{CliError, CliResult};
use crate::keyvalue::{format_error, KeyValues};
use crate::table::SampleTable;

const BASE_KEYS: [&str; 3] = ["base_x", "base_y", "base_z"];
const RULING_KEYS: [&str; 3] = ["ruling_x", "ruling_y", "ruling_z"];
const KEYS: [&str; 11] = [
    "name", "kind", "base_x", "base_y", "base_z", "ruling_x", "ruling_y", "ruling_z", "sampled", "domain", "samples",
];

#[derive(Debug, Clone)]
pub struct ExprTriple {
    pub text: [String; 3],
    pub exprs: [Expr; 3],
}

impl ExprTriple {
    fn curve(&self) -> ExprCurve {
        let [x, y, z] = self.exprs.clone();
        ExprCurve::new(x, y, z)
    }
}

#[derive(Debug, Clone)]
pub enum SurfaceSource {
    Analytic { base: ExprTriple, ruling: ExprTriple },
    /// CSV path as written in the file, and resolved.
    Sampled { file: String, path: PathBuf },
}

#[derive(Debug, Clone)]
pub struct SurfaceDefinition {
    pub name: String,
    pub source: SurfaceSource,
    /// Required for analytic surfaces; defaults to the table's range for
    /// sampled ones.
    pub domain: Option<(f64, f64)>,
    pub samples: usize,
}

impl SurfaceDefinition {
    pub fn load(path: &Path) -> CliResult<Self> {
        let kv = KeyValues::read(path)?;
        Self::from_key_values(&kv)
    }

    pub fn from_key_values(kv: &KeyValues) -> CliResult<Self> {
        kv.check_keys(&KEYS)?;
        let path = kv.path();
        let name = kv.require("name")?.value.clone();
        if name.is_empty() {
            return Err(format_error(path, kv.require("name")?.line, "`name` is empty"));
        }
        let kind = kv.require("kind")?;
        let has_exprs = BASE_KEYS.iter().chain(&RULING_KEYS).find_map(|k| kv.get(k));
        let source = match kind.value.as_str() {
            "analytic" => {
                if let Some(e) = kv.get("sampled") {
                    return Err(format_error(path, e.line, "`sampled` is not allowed for an analytic surface"));
                }
                let triple = |keys: [&str; 3]| -> CliResult<ExprTriple> {
                    let e = [kv.require(keys[0])?, kv.require(keys[1])?, kv.require(keys[2])?];
                    Ok(ExprTriple {
                        text: [e[0].value.clone(), e[1].value.clone(), e[2].value.clone()],
                        exprs: [kv.expr(e[0])?, kv.expr(e[1])?, kv.expr(e[2])?],
                    })
                };
                SurfaceSource::Analytic { base: triple(BASE_KEYS)?, ruling: triple(RULING_KEYS)? }
            }
            "sampled" => {
                if let Some(e) = has_exprs {
                    return Err(format_error(path, e.line, format!("`{}` is not allowed for a sampled surface", e.key)));
                }
                let file = kv.require("sampled")?.value.clone();
                let dir = path.parent().unwrap_or(Path::new(""));
                SurfaceSource::Sampled { path: dir.join(&file), file }
            }
            other => {
                return Err(format_error(path, kind.line, format!("`kind` must be analytic or sampled, got `{other}`")))
            }
        };
        let domain = kv.get("domain").map(|e| kv.range(e)).transpose()?;
        if domain.is_none() && matches!(source, SurfaceSource::Analytic { .. }) {
            return Err(format_error(path, 0, "missing key `domain`"));
        }
        let samples = match kv.get("samples") {
            Some(e) => {
                let n = kv.count(e)?;
                if n < 5 {
                    return Err(format_error(path, e.line, "`samples` must be at least 5"));
                }
                n
            }
            None => DEFAULT_SAMPLES,
        };
        Ok(SurfaceDefinition { name, source, domain, samples })
    }

    /// Builds the surface, reading the sample table if there is one.
    pub fn to_spec(&self, tol_null: f64) -> CliResult<RuledSurfaceSpec> {
        let (base, ruling) = match &self.source {
            SurfaceSource::Analytic { base, ruling } => {
                let (a, b) = self.domain.expect("analytic surfaces carry a domain");
                (
                    ParamCurve::from_source(base.curve(), a, b, self.samples)?,
                    ParamCurve::from_source(ruling.curve(), a, b, self.samples)?,
                )
            }
            SurfaceSource::Sampled { path, .. } => {
                let t = SampleTable::read(path)?;
                let (lo, hi) = t.range();
                let (a, b) = self.domain.unwrap_or((lo, hi));
                if a < lo || b > hi {
                    return Err(CliError::Usage(format!(
                        "domain [{a}, {b}] exceeds the sampled range [{lo}, {hi}] of {}",
                        path.display()
                    )));
                }
                (
                    ParamCurve::from_source(SampledCurve::new(t.u.clone(), t.base)?, a, b, self.samples)?,
                    ParamCurve::from_source(SampledCurve::new(t.u, t.ruling)?, a, b, self.samples)?,
                )
            }
        };
        Ok(RuledSurfaceSpec::with_tol_null(self.name.clone(), base, ruling, tol_null)?)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name = {}", self.name);
        match &self.source {
            SurfaceSource::Analytic { base, ruling } => {
                let _ = writeln!(out, "kind = analytic");
                for (k, v) in BASE_KEYS.iter().zip(&base.text).chain(RULING_KEYS.iter().zip(&ruling.text)) {
                    let _ = writeln!(out, "{k} = {v}");
                }
            }
            SurfaceSource::Sampled { file, .. } => {
                let _ = writeln!(out, "kind = sampled");
                let _ = writeln!(out, "sampled = {file}");
            }
        }
        if let Some((a, b)) = self.domain {
            let _ = writeln!(out, "domain = {a:?}, {b:?}");
        }
        let _ = writeln!(out, "samples = {}", self.samples);
        out
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        std::fs::write(path, self.render()).map_err(|e| CliError::io(path, e))
    }

    /// Samples `s` on its grid and writes `<stem>.csv` and `<stem>.surf`
    /// into `dir`, returning both paths (definition first).
    pub fn write_sampled(s: &RuledSurfaceSpec, dir: &Path, stem: &str) -> CliResult<(PathBuf, PathBuf)> {
        let mut table = SampleTable { u: Vec::new(), base: Vec::new(), ruling: Vec::new() };
        for u in s.base().grid() {
            table.u.push(u);
            table.base.push(s.base().position(u)?);
            table.ruling.push(s.ruling().position(u)?);
        }
        let csv = dir.join(format!("{stem}.csv"));
        table.write(&csv)?;
        let def = SurfaceDefinition {
            name: s.name.clone(),
            source: SurfaceSource::Sampled { file: format!("{stem}.csv"), path: csv.clone() },
            domain: None,
            samples: table.len(),
        };
        let surf = dir.join(format!("{stem}.surf"));
        def.write(&surf)?;
        Ok((surf, csv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ruled_core::surfaces::{classify, SurfaceType};

    const H1: &str = "name = H1\nkind = analytic\nbase_x = u\nbase_y = 0\nbase_z = 0\n\
                      ruling_x = 0\nruling_y = cos(u)\nruling_z = sin(u)\ndomain = 0, 2\n";

    fn parse(text: &str) -> CliResult<SurfaceDefinition> {
        SurfaceDefinition::from_key_values(&KeyValues::parse(Path::new("dir/x.surf"), text)?)
    }

    #[test]
    fn helicoid_file() {
        let d = parse(H1).unwrap();
        assert_eq!(d.samples, 512);
        let s = d.to_spec(1e-9).unwrap();
        assert_eq!(classify(&s).unwrap(), SurfaceType::NPlus);
        let again = parse(&d.render()).unwrap();
        assert_eq!(again.render(), d.render());
    }

    #[test]
    fn exactly_one_source() {
        let mixed = format!("{H1}sampled = t.csv\n");
        assert!(matches!(parse(&mixed), Err(CliError::Format { line: 10, .. })));
        let e = parse("name = s\nkind = sampled\nsampled = t.csv\nbase_x = u\n").unwrap_err();
        assert!(matches!(e, CliError::Format { line: 4, .. }));
        match parse("name = s\nkind = sampled\nsampled = t.csv\n").unwrap().source {
            SurfaceSource::Sampled { path, .. } => assert_eq!(path, Path::new("dir/t.csv")),
            _ => unreachable!(),
        }
    }

    #[test]
    fn required_keys() {
        assert!(parse(&H1.replace("domain = 0, 2\n", "")).is_err());
        assert!(parse(&H1.replace("domain = 0, 2", "domain = 2, 2")).is_err());
        assert!(parse(&H1.replace("kind = analytic", "kind = other")).is_err());
        assert!(parse(&format!("{H1}colour = red\n")).is_err());
    }
}
