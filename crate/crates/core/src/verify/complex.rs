//! Refinement of a geometry into a cubical cell complex.
//!
//! Each logical cell becomes `2r` micro-cubes per axis. A defect voxel fills
//! an `r/2`-wide node block; primal blocks start at the cell corner and dual
//! blocks half a cell further along every axis, so the two sublattices
//! interleave without touching. Face-adjacent voxels of one solid are joined
//! by a segment of the same cross-section.

use serde::{Deserialize, Serialize};

use super::grid::{Grid, Pos};
use super::solver::Problem;
use crate::error::{Error, Result};
use crate::geometry::{self, validate, Geometry, Kind, SignatureRole, Voxel};

pub const DEFAULT_RESOLUTION: usize = 2;
pub const DEFAULT_MAX_CELLS: usize = 40_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    /// Micro-cells per logical cell per sublattice; must be even.
    pub resolution: usize,
    pub max_cells: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            resolution: DEFAULT_RESOLUTION,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeLabel {
    Empty,
    Defect(Kind),
    /// Removed from the manifold at an injection point.
    Hole,
}

/// The two boundary cycles through which a port exposes its logical qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortCycles {
    pub label: String,
    pub kind: Kind,
    pub role: SignatureRole,
    /// Path joining the pair, bounded by surfaces of the port's own kind.
    pub ribbon: Vec<usize>,
    /// Loop around one strand, bounded by surfaces of the opposite kind.
    pub ring: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CellComplex {
    pub grid: Grid,
    pub factor: usize,
    pub width: usize,
    /// Micro coordinate of grid index 0 along each axis.
    pub origin: [i64; 3],
    pub labels: Vec<CubeLabel>,
    /// Index into `Geometry::defects` for defect cubes.
    pub owner: Vec<u32>,
    pub ports: Vec<PortCycles>,
}

const NO_OWNER: u32 = u32::MAX;

pub fn build_complex(g: &Geometry, opts: BuildOptions) -> Result<CellComplex> {
    let report = validate(g);
    if !report.is_empty() {
        return Err(Error::Invalid(report));
    }
    if opts.resolution < 2 || opts.resolution % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "resolution {} (must be even and at least 2)",
            opts.resolution
        )));
    }
    let factor = 2 * opts.resolution;
    let width = opts.resolution / 2;
    let region = g.bounding_region;
    let ext = region.extent();
    let n: Pos = [
        factor * ext[0] as usize,
        factor * ext[1] as usize,
        factor * ext[2] as usize,
    ];
    let grid = Grid::new(n);
    if grid.num_cells() > opts.max_cells {
        return Err(Error::ResourceCap {
            needed: grid.num_cells(),
            cap: opts.max_cells,
        });
    }
    let origin = [
        (factor as i64) * region.min[0] as i64,
        (factor as i64) * region.min[1] as i64,
        (factor as i64) * region.min[2] as i64,
    ];
    let mut cx = CellComplex {
        labels: vec![CubeLabel::Empty; grid.num_cubes()],
        owner: vec![NO_OWNER; grid.num_cubes()],
        grid,
        factor,
        width,
        origin,
        ports: Vec::new(),
    };

    for (i, d) in g.defects.iter().enumerate() {
        for &v in &d.voxels {
            let base = cx.node_base(v, d.kind);
            cx.fill(base, [width; 3], d.kind, i);
            for a in 0..3 {
                let mut nb = v;
                nb[a] += 1;
                if d.voxels.contains(&nb) {
                    let mut start = base;
                    start[a] += width as i64;
                    let mut size = [width; 3];
                    size[a] = factor - width;
                    cx.fill(start, size, d.kind, i);
                }
            }
        }
    }

    // Strands carrying a port run out to the boundary plane.
    for p in &g.ports {
        let a = p.face.side.axis();
        let d = g
            .defects
            .iter()
            .position(|d| d.kind == p.kind && d.voxels.contains(&p.face.anchors[0]))
            .expect("validated anchor");
        for anchor in p.face.anchors {
            let base = cx.node_base(anchor, p.kind);
            let mut start = base;
            let mut size = [width; 3];
            if p.face.side.is_max() {
                start[a] += width as i64;
                size[a] = (cx.origin[a] + cx.grid.n[a] as i64 - start[a]) as usize;
            } else {
                start[a] = cx.origin[a];
                size[a] = (base[a] - cx.origin[a]) as usize;
            }
            cx.fill(start, size, p.kind, d);
        }
    }

    let mut cycles: Vec<(SignatureRole, PortCycles)> = Vec::new();
    for p in &g.ports {
        let role = match p.role {
            geometry::Role::Input => SignatureRole::Input,
            geometry::Role::Output => SignatureRole::Output,
        };
        cycles.push((role, cx.port_cycles(p)?));
    }

    for inj in &g.injections {
        let host = g.defect(&inj.host).expect("validated host");
        let axis = geometry::straight_axis_of(&host.voxels, inj.voxel).expect("validated run");
        let base = cx.node_base(inj.voxel, host.kind);
        let mut start = base;
        start[axis] -= width as i64;
        let mut size = [width; 3];
        size[axis] = 3 * width;
        cx.fill_label(start, size, CubeLabel::Hole, NO_OWNER);

        let local = cx.local(base);
        let (b, c) = tangent(axis);
        let mut ribbon = Vec::new();
        for k in 0..3 * width {
            let mut p = local;
            p[axis] = local[axis] - width + k;
            ribbon.push(cx.grid.edge(axis, p));
        }
        let ring = cx.square_loop(axis, local[axis], [local[b], local[c]], width);
        cycles.push((
            SignatureRole::Injection,
            PortCycles {
                label: inj.label.clone(),
                kind: host.kind,
                role: SignatureRole::Injection,
                ribbon,
                ring,
            },
        ));
    }

    // Same order as Geometry::signature.
    for want in [
        SignatureRole::Input,
        SignatureRole::Injection,
        SignatureRole::Output,
    ] {
        for (role, pc) in &cycles {
            if *role == want {
                cx.ports.push(pc.clone());
            }
        }
    }
    Ok(cx)
}

fn tangent(a: usize) -> (usize, usize) {
    match a {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

impl CellComplex {
    /// Micro coordinate of the lowest corner of a voxel's node block.
    pub fn node_base(&self, v: Voxel, kind: Kind) -> [i64; 3] {
        let off = match kind {
            Kind::Primal => 0,
            Kind::Dual => (self.factor / 2) as i64,
        };
        [
            self.factor as i64 * v[0] as i64 + off,
            self.factor as i64 * v[1] as i64 + off,
            self.factor as i64 * v[2] as i64 + off,
        ]
    }

    fn local(&self, p: [i64; 3]) -> Pos {
        [
            (p[0] - self.origin[0]) as usize,
            (p[1] - self.origin[1]) as usize,
            (p[2] - self.origin[2]) as usize,
        ]
    }

    fn fill(&mut self, start: [i64; 3], size: [usize; 3], kind: Kind, owner: usize) {
        self.fill_label(start, size, CubeLabel::Defect(kind), owner as u32);
    }

    fn fill_label(&mut self, start: [i64; 3], size: [usize; 3], label: CubeLabel, owner: u32) {
        for i in 0..size[0] as i64 {
            for j in 0..size[1] as i64 {
                for k in 0..size[2] as i64 {
                    let p = [
                        start[0] + i - self.origin[0],
                        start[1] + j - self.origin[1],
                        start[2] + k - self.origin[2],
                    ];
                    if let Some(c) = self.grid.cube_at(p) {
                        self.labels[c] = label;
                        self.owner[c] = owner;
                    }
                }
            }
        }
    }

    /// Perimeter of the square `[lo, lo + side]` in the plane `axis = plane`,
    /// pushed out by one micro-cell on every side.
    fn square_loop_around(&self, axis: usize, plane: usize, lo: [usize; 2], side: usize) -> Vec<usize> {
        self.square_loop(axis, plane, [lo[0] - 1, lo[1] - 1], side + 2)
    }

    fn square_loop(&self, axis: usize, plane: usize, lo: [usize; 2], side: usize) -> Vec<usize> {
        let (b, c) = tangent(axis);
        let at = |u: usize, v: usize| {
            let mut p = [0; 3];
            p[axis] = plane;
            p[b] = u;
            p[c] = v;
            p
        };
        let mut out = Vec::new();
        for k in 0..side {
            out.push(self.grid.edge(b, at(lo[0] + k, lo[1])));
            out.push(self.grid.edge(b, at(lo[0] + k, lo[1] + side)));
            out.push(self.grid.edge(c, at(lo[0], lo[1] + k)));
            out.push(self.grid.edge(c, at(lo[0] + side, lo[1] + k)));
        }
        out
    }

    fn port_cycles(&self, p: &geometry::Port) -> Result<PortCycles> {
        let a = p.face.side.axis();
        let (b, c) = tangent(a);
        let plane = if p.face.side.is_max() { self.grid.n[a] } else { 0 };
        let [ba, bb] = p.face.anchors.map(|v| self.local(self.node_base(v, p.kind)));
        for corner in [ba, bb] {
            for t in [b, c] {
                if corner[t] == 0 || corner[t] + self.width + 1 > self.grid.n[t] {
                    return Err(Error::Precondition(format!(
                        "port `{}` anchor is on the edge of the bounding region",
                        p.id
                    )));
                }
            }
        }
        let mut ribbon = Vec::new();
        let at = |u: usize, v: usize| {
            let mut q = [0; 3];
            q[a] = plane;
            q[b] = u;
            q[c] = v;
            q
        };
        let (u0, u1) = (ba[b].min(bb[b]), ba[b].max(bb[b]));
        for u in u0..u1 {
            ribbon.push(self.grid.edge(b, at(u, ba[c])));
        }
        let (v0, v1) = (ba[c].min(bb[c]), ba[c].max(bb[c]));
        for v in v0..v1 {
            ribbon.push(self.grid.edge(c, at(bb[b], v)));
        }
        let ring = self.square_loop_around(a, plane, [ba[b], ba[c]], self.width);
        Ok(PortCycles {
            label: p.label.clone(),
            kind: p.kind,
            role: match p.role {
                geometry::Role::Input => SignatureRole::Input,
                geometry::Role::Output => SignatureRole::Output,
            },
            ribbon,
            ring,
        })
    }

    pub fn is_defect(&self, cube: usize, kind: Kind) -> bool {
        self.labels[cube] == CubeLabel::Defect(kind)
    }

    /// Surfaces of `kind` may use this face.
    pub fn face_allowed(&self, f: usize, kind: Kind) -> bool {
        let cubes = self.grid.face_cubes(f);
        let mut inside = false;
        for c in cubes.into_iter().flatten() {
            match self.labels[c] {
                CubeLabel::Defect(k) if k != kind => return false,
                CubeLabel::Hole => {}
                _ => inside = true,
            }
        }
        inside
    }

    pub fn problem(&self, kind: Kind) -> Problem<'_> {
        let g = &self.grid;
        let allowed_face: Vec<bool> = (0..g.num_faces()).map(|f| self.face_allowed(f, kind)).collect();
        let usable_cube: Vec<bool> = (0..g.num_cubes())
            .map(|c| {
                !matches!(self.labels[c], CubeLabel::Hole)
                    && !self.is_defect(c, kind.opposite())
                    && g.cube_faces(c).iter().all(|&f| allowed_face[f])
            })
            .collect();
        let slack_edge: Vec<bool> = (0..g.num_edges())
            .map(|e| g.edge_cubes(e).any(|c| self.is_defect(c, kind)))
            .collect();
        Problem {
            grid: g,
            allowed_face,
            usable_cube,
            slack_edge,
        }
    }

    /// ∂∘∂ = 0 for edges→vertices after faces→edges, and for faces→edges
    /// after cubes→faces.
    pub fn check_boundary_squares(&self) -> bool {
        let g = &self.grid;
        let mut vertex_parity = std::collections::HashMap::new();
        for f in 0..g.num_faces() {
            vertex_parity.clear();
            for e in g.face_edges(f) {
                for v in g.edge_vertices(e) {
                    *vertex_parity.entry(v).or_insert(false) ^= true;
                }
            }
            if vertex_parity.values().any(|&odd| odd) {
                return false;
            }
        }
        let mut edge_parity = std::collections::HashMap::new();
        for c in 0..g.num_cubes() {
            edge_parity.clear();
            for f in g.cube_faces(c) {
                for e in g.face_edges(f) {
                    *edge_parity.entry(e).or_insert(false) ^= true;
                }
            }
            if edge_parity.values().any(|&odd| odd) {
                return false;
            }
        }
        true
    }

    /// Logical cells whose node block is flagged as defect `index`.
    pub fn owned_cube_count(&self, index: usize) -> usize {
        self.owner.iter().filter(|&&o| o == index as u32).count()
    }
}
