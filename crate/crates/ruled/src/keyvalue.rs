//! Flat `key = value` text files with `#` comments.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use ruled_core::exprdsl::{self, Expr};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    /// 1-based line number.
    pub line: usize,
    /// 1-based byte column where the value starts.
    pub column: usize,
}

#[derive(Debug, Clone)]
pub struct KeyValues {
    path: PathBuf,
    entries: Vec<Entry>,
}

impl KeyValues {
    pub fn parse(path: &Path, text: &str) -> CliResult<Self> {
        let mut entries: Vec<Entry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let Some(eq) = body.find('=') else {
                return Err(format_error(path, line, "expected `key = value`"));
            };
            let key = body[..eq].trim();
            if key.is_empty() || !key.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_') {
                return Err(format_error(path, line, format!("invalid key `{key}`")));
            }
            if entries.iter().any(|e| e.key == key) {
                return Err(format_error(path, line, format!("duplicate key `{key}`")));
            }
            let rest = &body[eq + 1..];
            let lead = rest.len() - rest.trim_start().len();
            entries.push(Entry {
                key: key.to_string(),
                value: rest.trim().to_string(),
                line,
                column: eq + 2 + lead,
            });
        }
        Ok(KeyValues { path: path.to_path_buf(), entries })
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(path, &text)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn require(&self, key: &str) -> CliResult<&Entry> {
        self.get(key).ok_or_else(|| format_error(&self.path, 0, format!("missing key `{key}`")))
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> CliResult<()> {
        let allowed: BTreeSet<&str> = allowed.iter().copied().collect();
        match self.entries.iter().find(|e| !allowed.contains(e.key.as_str())) {
            Some(e) => Err(format_error(&self.path, e.line, format!("unknown key `{}`", e.key))),
            None => Ok(()),
        }
    }

    pub fn number(&self, e: &Entry) -> CliResult<f64> {
        parse_number(&e.value).ok_or_else(|| self.bad(e, "a finite number"))
    }

    pub fn count(&self, e: &Entry) -> CliResult<usize> {
        e.value.parse().map_err(|_| self.bad(e, "a non-negative integer"))
    }

    pub fn flag(&self, e: &Entry) -> CliResult<bool> {
        match e.value.as_str() {
            "true" | "yes" | "1" => Ok(true),
            "false" | "no" | "0" => Ok(false),
            _ => Err(self.bad(e, "true or false")),
        }
    }

    /// `a, b` with `a < b`.
    pub fn range(&self, e: &Entry) -> CliResult<(f64, f64)> {
        let mut parts = e.value.split(',').map(|p| parse_number(p.trim()));
        match (parts.next().flatten(), parts.next().flatten(), parts.next()) {
            (Some(a), Some(b), None) if a < b => Ok((a, b)),
            _ => Err(self.bad(e, "an increasing pair `a, b`")),
        }
    }

    pub fn expr(&self, e: &Entry) -> CliResult<Expr> {
        exprdsl::parse(&e.value).map_err(|source| CliError::Expr {
            path: self.path.clone(),
            line: e.line,
            column: e.column + source.offset,
            key: e.key.clone(),
            source,
        })
    }

    fn bad(&self, e: &Entry, expected: &str) -> CliError {
        format_error(&self.path, e.line, format!("`{}` must be {expected}, got `{}`", e.key, e.value))
    }
}

pub(crate) fn parse_number(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

pub(crate) fn format_error(path: &Path, line: usize, message: impl Into<String>) -> CliError {
    CliError::Format { path: path.to_path_buf(), line, message: message.into() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kv(text: &str) -> CliResult<KeyValues> {
        KeyValues::parse(Path::new("t.surf"), text)
    }

    #[test]
    fn comments_and_columns() {
        let f = kv("# header\nname = H1  # trailing\n\n  base_x=u\n").unwrap();
        let name = f.get("name").unwrap();
        assert_eq!((name.value.as_str(), name.line, name.column), ("H1", 2, 8));
        let bx = f.get("base_x").unwrap();
        assert_eq!((bx.value.as_str(), bx.line, bx.column), ("u", 4, 10));
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        assert!(matches!(kv("a = 1\na = 2"), Err(CliError::Format { line: 2, .. })));
        assert!(matches!(kv("no equals sign"), Err(CliError::Format { line: 1, .. })));
        assert!(matches!(kv("Bad Key = 1"), Err(CliError::Format { line: 1, .. })));
    }

    #[test]
    fn expression_error_points_into_the_line() {
        let f = kv("base_x = sin(u +)").unwrap();
        let e = f.expr(f.get("base_x").unwrap()).unwrap_err();
        match e {
            CliError::Expr { line, column, source, .. } => {
                assert_eq!(line, 1);
                assert_eq!(column, 10 + source.offset);
                assert_eq!(source.offset, 7);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ranges() {
        let f = kv("d = 0, 2\ne = 2, 0\ng = 1").unwrap();
        assert_eq!(f.range(f.get("d").unwrap()).unwrap(), (0.0, 2.0));
        assert!(f.range(f.get("e").unwrap()).is_err());
        assert!(f.range(f.get("g").unwrap()).is_err());
    }
}
