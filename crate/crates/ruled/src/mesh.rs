//! Triangulated quad-strip meshes of a surface patch, written as OBJ.

use std::fmt::Write as _;
use std::path::Path;

use ruled_core::surfaces::RuledSurfaceSpec;
use ruled_core::numeric::linspace;
use ruled_core::MVec3;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshGrid {
    pub u_steps: usize,
    pub v_range: (f64, f64),
    pub v_steps: usize,
}

impl MeshGrid {
    pub fn new(u_steps: usize, v_range: (f64, f64), v_steps: usize) -> CliResult<Self> {
        if u_steps < 1 || v_steps < 1 {
            return Err(CliError::Usage("mesh needs at least one step in u and v".into()));
        }
        if !(v_range.0 < v_range.1) {
            return Err(CliError::Usage(format!("empty v range [{}, {}]", v_range.0, v_range.1)));
        }
        Ok(MeshGrid { u_steps, v_range, v_steps })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<MVec3>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

impl Mesh {
    /// Samples `phi(u, v) = k(u) + v q(u)` on the grid; each grid cell
    /// becomes two triangles.
    pub fn of_surface(s: &RuledSurfaceSpec, g: &MeshGrid) -> CliResult<Self> {
        let (u0, u1) = s.interval();
        let us = linspace(u0, u1, g.u_steps + 1);
        let vs = linspace(g.v_range.0, g.v_range.1, g.v_steps + 1);
        let mut vertices = Vec::with_capacity(us.len() * vs.len());
        for &u in &us {
            for &v in &vs {
                vertices.push(s.point(u, v)?);
            }
        }
        let row = vs.len();
        let mut triangles = Vec::with_capacity(2 * g.u_steps * g.v_steps);
        for i in 0..g.u_steps {
            for j in 0..g.v_steps {
                let p = i * row + j;
                triangles.push([p, p + row, p + 1]);
                triangles.push([p + 1, p + row, p + row + 1]);
            }
        }
        Ok(Mesh { vertices, triangles })
    }

    pub fn to_obj(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "o {name}");
        for v in &self.vertices {
            let _ = writeln!(out, "v {:?} {:?} {:?}", v.x1(), v.x2(), v.x3());
        }
        for t in &self.triangles {
            let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
        }
        out
    }

    pub fn write_obj(&self, path: &Path, name: &str) -> CliResult<()> {
        std::fs::write(path, self.to_obj(name)).map_err(|e| CliError::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ruled_core::corpus;

    #[test]
    fn strip_layout() {
        let s = corpus::helicoid();
        let m = Mesh::of_surface(&s, &MeshGrid::new(4, (-1.0, 1.0), 2).unwrap()).unwrap();
        assert_eq!(m.vertices.len(), 15);
        assert_eq!(m.triangles.len(), 16);
        assert!(m.triangles.iter().flatten().all(|&i| i < 15));
        // first vertex is k(0) - q(0)
        assert!((m.vertices[0] - MVec3::new(0.0, -1.0, 0.0)).euclid_norm() < 1e-15);
        let obj = m.to_obj("H1");
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 15);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 16);
        assert!(obj.lines().any(|l| l == "f 1 4 2"));
    }

    #[test]
    fn rejects_empty_grid() {
        assert!(MeshGrid::new(0, (0.0, 1.0), 3).is_err());
        assert!(MeshGrid::new(3, (1.0, 1.0), 3).is_err());
    }
}
