//! CSV tables: sampled surfaces and plot-ready analysis output.
//!
//! Numbers are written with 17 significant digits in exponent form, rows end
//! with a bare LF.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use ruled_core::curves::MIN_SAMPLED_ROWS;
use ruled_core::MVec3;

use crate::error::{CliError, CliResult};
use crate::keyvalue::{format_error, parse_number};

pub const SAMPLE_HEADER: [&str; 7] = ["u", "kx", "ky", "kz", "qx", "qy", "qz"];

/// Base points `k(u)` and ruling directions `q(u)` on a parameter grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable {
    pub u: Vec<f64>,
    pub base: Vec<MVec3>,
    pub ruling: Vec<MVec3>,
}

impl SampleTable {
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn range(&self) -> (f64, f64) {
        (self.u[0], self.u[self.u.len() - 1])
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let file = File::open(path).map_err(|e| CliError::io(path, e))?;
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(file);
        let header = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
        if header.iter().ne(SAMPLE_HEADER) {
            return Err(format_error(path, 1, format!("header must be `{}`", SAMPLE_HEADER.join(","))));
        }
        let mut t = SampleTable { u: Vec::new(), base: Vec::new(), ruling: Vec::new() };
        for rec in rdr.records() {
            let rec = rec.map_err(|e| csv_error(path, e))?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            let mut v = [0.0; 7];
            if rec.len() != 7 {
                return Err(format_error(path, line, format!("expected 7 fields, got {}", rec.len())));
            }
            for (slot, field) in v.iter_mut().zip(rec.iter()) {
                *slot = parse_number(field).ok_or_else(|| format_error(path, line, format!("not a finite number: `{field}`")))?;
            }
            if t.u.last().is_some_and(|&prev| v[0] <= prev) {
                return Err(format_error(path, line, "u must be strictly increasing"));
            }
            t.u.push(v[0]);
            t.base.push(MVec3::new(v[1], v[2], v[3]));
            t.ruling.push(MVec3::new(v[4], v[5], v[6]));
        }
        if t.len() < MIN_SAMPLED_ROWS {
            return Err(format_error(path, 0, format!("need at least {MIN_SAMPLED_ROWS} rows, got {}", t.len())));
        }
        Ok(t)
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let rows = (0..self.len()).map(|i| {
            let (k, q) = (self.base[i], self.ruling[i]);
            vec![self.u[i], k.x1(), k.x2(), k.x3(), q.x1(), q.x2(), q.x3()]
        });
        write_table(path, &SAMPLE_HEADER, rows)
    }
}

pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes a numeric table with the given header.
pub fn write_table<I>(path: &Path, header: &[&str], rows: I) -> CliResult<()>
where
    I: IntoIterator<Item = Vec<f64>>,
{
    let mut buf = Vec::new();
    {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut buf);
        let io = |e: csv::Error| CliError::io(path, e.into());
        w.write_record(header).map_err(io)?;
        for row in rows {
            debug_assert_eq!(row.len(), header.len());
            w.write_record(row.iter().map(|x| format_number(*x))).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::io(path, e))?;
    }
    let mut f = File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(&buf).map_err(|e| CliError::io(path, e))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    let line = e.position().map_or(0, |p| p.line() as usize);
    format_error(path, line, e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize) -> SampleTable {
        let u: Vec<f64> = (0..n).map(|i| i as f64 / 7.0).collect();
        SampleTable {
            base: u.iter().map(|&t| MVec3::new(t, 0.0, 0.1 * t)).collect(),
            ruling: u.iter().map(|&t| MVec3::new(0.0, t.cos(), t.sin())).collect(),
            u,
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        let t = table(20);
        t.write(&p).unwrap();
        assert_eq!(SampleTable::read(&p).unwrap(), t);
        let text = std::fs::read_to_string(&p).unwrap();
        assert!(text.starts_with("u,kx,ky,kz,qx,qy,qz\n"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_number(0.1), "1.0000000000000001e-1");
        assert_eq!(format_number(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn validation() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.csv");
        table(10).write(&p).unwrap();
        assert!(matches!(SampleTable::read(&p), Err(CliError::Format { .. })));

        let mut t = table(20);
        t.u[5] = t.u[4];
        t.write(&p).unwrap();
        match SampleTable::read(&p) {
            Err(CliError::Format { line, .. }) => assert_eq!(line, 7),
            other => panic!("{other:?}"),
        }

        std::fs::write(&p, "u,x\n1,2\n").unwrap();
        assert!(matches!(SampleTable::read(&p), Err(CliError::Format { line: 1, .. })));
    }
}
