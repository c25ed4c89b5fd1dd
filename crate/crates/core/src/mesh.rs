//! Triangle meshes of defect solids in Wavefront OBJ.
//!
//! Each voxel is drawn as a cube a quarter of a cell wide, and face-adjacent
//! voxels of one solid are joined by a bar of the same cross-section. The
//! surface is the boundary of that shape on a grid four times finer than
//! the logical lattice, so dual solids (offset by half a cell) land on it
//! exactly. Coordinates are in logical cells.
//!
//! Metadata for each object follows its `o` line as a comment of the form
//! `#@ {"kind":"primal","role":"defect","tags":[]}` so that plain OBJ
//! readers ignore it.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{validate, DefectSolid, Geometry, Kind, NEIGHBOURS};
use crate::verify::SurfaceWitness;

const SUB: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectRole {
    Defect,
    /// A correlation surface drawn over the defects, meant to be translucent.
    Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectMeta {
    pub kind: Kind,
    pub role: ObjectRole,
    #[serde(default)]
    pub tags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshObject {
    pub name: String,
    pub meta: ObjectMeta,
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

impl MeshObject {
    /// V - E + F of the triangulated surface.
    pub fn euler_characteristic(&self) -> i64 {
        let mut edges = BTreeSet::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        self.vertices.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }

    /// Genus of a closed orientable surface with one component.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub objects: Vec<MeshObject>,
}

/// Collects quads on the fine grid and shares vertices between them.
#[derive(Default)]
struct Builder {
    index: HashMap<[i64; 3], usize>,
    vertices: Vec<[f64; 3]>,
    triangles: Vec<[usize; 3]>,
}

impl Builder {
    fn vertex(&mut self, p: [i64; 3], scale: f64) -> usize {
        let next = self.vertices.len();
        *self.index.entry(p).or_insert_with(|| {
            self.vertices.push(p.map(|c| c as f64 / scale));
            next
        })
    }

    /// Unit square with lowest corner `p` and normal along `axis`, wound so
    /// the normal points to +axis when `positive`.
    fn quad(&mut self, axis: usize, p: [i64; 3], positive: bool, scale: f64) {
        let (u, w) = ((axis + 1) % 3, (axis + 2) % 3);
        let step = |q: [i64; 3], a: usize| {
            let mut q = q;
            q[a] += 1;
            q
        };
        let mut corners = [p, step(p, u), step(step(p, u), w), step(p, w)];
        if !positive {
            corners.reverse();
        }
        let ids = corners.map(|c| self.vertex(c, scale));
        self.triangles.push([ids[0], ids[1], ids[2]]);
        self.triangles.push([ids[0], ids[2], ids[3]]);
    }

    fn finish(self, name: String, meta: ObjectMeta) -> MeshObject {
        MeshObject {
            name,
            meta,
            vertices: self.vertices,
            triangles: self.triangles,
        }
    }
}

fn fine_cells(d: &DefectSolid) -> BTreeSet<[i64; 3]> {
    let off = match d.kind {
        Kind::Primal => 0,
        Kind::Dual => SUB / 2,
    };
    let base = |v: [i32; 3]| v.map(|c| SUB * c as i64 + off);
    let mut cells = BTreeSet::new();
    for &v in &d.voxels {
        let b = base(v);
        cells.insert(b);
        for n in NEIGHBOURS.iter().filter(|n| n.iter().sum::<i32>() > 0) {
            let w = [v[0] + n[0], v[1] + n[1], v[2] + n[2]];
            if d.voxels.contains(&w) {
                let axis = (0..3).find(|&a| n[a] != 0).expect("unit step");
                for k in 1..SUB {
                    let mut c = b;
                    c[axis] += k;
                    cells.insert(c);
                }
            }
        }
    }
    cells
}

pub fn solid_mesh(d: &DefectSolid) -> MeshObject {
    let cells = fine_cells(d);
    let mut b = Builder::default();
    for &c in &cells {
        for axis in 0..3 {
            for positive in [false, true] {
                let mut n = c;
                n[axis] += if positive { 1 } else { -1 };
                if !cells.contains(&n) {
                    let mut p = c;
                    if positive {
                        p[axis] += 1;
                    }
                    b.quad(axis, p, positive, SUB as f64);
                }
            }
        }
    }
    b.finish(
        d.id.clone(),
        ObjectMeta {
            kind: d.kind,
            role: ObjectRole::Defect,
            tags: d.tags.clone(),
        },
    )
}

/// One object per defect solid, in file order.
pub fn export_mesh(g: &Geometry) -> Result<Mesh> {
    let report = validate(g);
    if !report.is_empty() {
        return Err(Error::Invalid(report));
    }
    Ok(Mesh {
        objects: g.defects.iter().map(solid_mesh).collect(),
    })
}

/// The faces of a correlation-surface witness as an open surface.
pub fn witness_mesh(w: &SurfaceWitness, name: impl Into<String>) -> MeshObject {
    let scale = (2 * w.resolution) as f64;
    let mut b = Builder::default();
    for f in &w.faces {
        let p = [
            w.origin[0] + f[1] as i64,
            w.origin[1] + f[2] as i64,
            w.origin[2] + f[3] as i64,
        ];
        b.quad(f[0], p, true, scale);
    }
    b.finish(
        name.into(),
        ObjectMeta {
            kind: w.kind,
            role: ObjectRole::Witness,
            tags: Vec::new(),
        },
    )
}

impl Mesh {
    pub fn to_obj(&self) -> String {
        let mut out = String::from("# braidwork mesh, units of one logical cell\n");
        let mut base = 1;
        for o in &self.objects {
            let meta = serde_json::to_string(&o.meta).expect("plain metadata");
            let _ = writeln!(out, "o {}\n#@ {meta}", o.name);
            for v in &o.vertices {
                let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
            }
            for t in &o.triangles {
                let _ = writeln!(out, "f {} {} {}", t[0] + base, t[1] + base, t[2] + base);
            }
            base += o.vertices.len();
        }
        out
    }

    /// Read back a document written by [`Mesh::to_obj`].
    pub fn from_obj(text: &str) -> Result<Mesh> {
        let bad = |line: usize, message: String| Error::Parse {
            line,
            column: 1,
            field: "obj".into(),
            message,
        };
        let mut objects: Vec<MeshObject> = Vec::new();
        let mut base = 1;
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("o") => {
                    if let Some(o) = objects.last() {
                        base += o.vertices.len();
                    }
                    objects.push(MeshObject {
                        name: parts.collect::<Vec<_>>().join(" "),
                        meta: ObjectMeta { kind: Kind::Primal, role: ObjectRole::Defect, tags: Vec::new() },
                        vertices: Vec::new(),
                        triangles: Vec::new(),
                    });
                }
                Some("#@") => {
                    let o = objects.last_mut().ok_or_else(|| bad(ln, "metadata before object".into()))?;
                    o.meta = serde_json::from_str(line[2..].trim()).map_err(|e| bad(ln, e.to_string()))?;
                }
                Some("v") => {
                    let o = objects.last_mut().ok_or_else(|| bad(ln, "vertex before object".into()))?;
                    let c: Vec<f64> = parts.map(str::parse).collect::<Result<_, _>>().map_err(|e| bad(ln, format!("{e}")))?;
                    let [x, y, z] = c[..] else { return Err(bad(ln, "vertex needs 3 coordinates".into())) };
                    o.vertices.push([x, y, z]);
                }
                Some("f") => {
                    let o = objects.last_mut().ok_or_else(|| bad(ln, "face before object".into()))?;
                    let c: Vec<usize> = parts.map(str::parse).collect::<Result<_, _>>().map_err(|e| bad(ln, format!("{e}")))?;
                    let [a, b, c] = c[..] else { return Err(bad(ln, "only triangles are written".into())) };
                    let local = |k: usize| k.checked_sub(base).ok_or_else(|| bad(ln, "face index out of range".into()));
                    o.triangles.push([local(a)?, local(b)?, local(c)?]);
                }
                _ => {}
            }
        }
        Ok(Mesh { objects })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_is_a_torus() {
        let ring = DefectSolid::new("r", Kind::Dual, [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]);
        let m = solid_mesh(&ring);
        assert_eq!(m.genus(), 1);
    }

    #[test]
    fn single_voxel_is_a_cube() {
        let m = solid_mesh(&DefectSolid::new("p", Kind::Primal, [[2, 3, 4]]));
        assert_eq!((m.vertices.len(), m.triangles.len()), (8, 12));
        assert_eq!(m.genus(), 0);
        assert!(m.vertices.iter().all(|v| v[0] >= 2.0 && v[0] <= 2.25));
    }

    #[test]
    fn obj_round_trip() {
        let ring = DefectSolid::new("r", Kind::Dual, [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]);
        let mesh = Mesh { objects: vec![solid_mesh(&ring), solid_mesh(&DefectSolid::new("p", Kind::Primal, [[5, 5, 5]]))] };
        assert_eq!(Mesh::from_obj(&mesh.to_obj()).unwrap(), mesh);
    }
}
