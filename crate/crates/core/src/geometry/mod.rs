//! Space-time defect geometry: the lattice, defect solids, ports and
//! injection points, plus structural validation, volume and file I/O.
//!
//! Coordinates are integer logical cells. A primal voxel `(x, y, z)` sits at
//! the corner of cell `(x, y, z)`; a dual voxel with the same indices sits at
//! the cell centre, i.e. offset by half a cell on every axis. Both claim the
//! cell `(x, y, z)` for volume accounting. The x axis is time.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};


pub const FORMAT_VERSION: u64 = 1;

pub type Voxel = [i32; 3];

pub const NEIGHBOURS: [Voxel; 6] = [
    [1, 0, 0],
    [-1, 0, 0],
    [0, 1, 0],
    [0, -1, 0],
    [0, 0, 1],
    [0, 0, -1],
];

pub fn add(a: Voxel, b: Voxel) -> Voxel {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Primal,
    Dual,
}

impl Kind {
    pub fn opposite(self) -> Kind {
        match self {
            Kind::Primal => Kind::Dual,
            Kind::Dual => Kind::Primal,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Primal => "primal",
            Kind::Dual => "dual",
        })
    }
}

/// A voxel together with its sublattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeCoord {
    pub x: i32,
    pub y: i32,
    pub z: i32,
    pub sublattice: Kind,
}

impl LatticeCoord {
    pub fn new(v: Voxel, sublattice: Kind) -> Self {
        LatticeCoord {
            x: v[0],
            y: v[1],
            z: v[2],
            sublattice,
        }
    }

    pub fn voxel(&self) -> Voxel {
        [self.x, self.y, self.z]
    }

    /// Position in half-cell units.
    pub fn doubled(&self) -> Voxel {
        let o = match self.sublattice {
            Kind::Primal => 0,
            Kind::Dual => 1,
        };
        [2 * self.x + o, 2 * self.y + o, 2 * self.z + o]
    }
}

/// Inclusive axis-aligned box of logical cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub min: Voxel,
    pub max: Voxel,
}

impl Region {
    pub fn contains(&self, v: Voxel) -> bool {
        (0..3).all(|a| v[a] >= self.min[a] && v[a] <= self.max[a])
    }

    pub fn extent(&self) -> Voxel {
        [
            self.max[0] - self.min[0] + 1,
            self.max[1] - self.min[1] + 1,
            self.max[2] - self.min[2] + 1,
        ]
    }

    pub fn cell_count(&self) -> u64 {
        self.extent().iter().map(|&e| e.max(0) as u64).product()
    }

    pub fn translated(&self, by: Voxel) -> Region {
        Region {
            min: add(self.min, by),
            max: add(self.max, by),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectSolid {
    pub id: String,
    pub kind: Kind,
    pub voxels: BTreeSet<Voxel>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

impl DefectSolid {
    pub fn new(id: impl Into<String>, kind: Kind, voxels: impl IntoIterator<Item = Voxel>) -> Self {
        DefectSolid {
            id: id.into(),
            kind,
            voxels: voxels.into_iter().collect(),
            tags: Vec::new(),
        }
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tags.push(tag.into());
        self
    }

    pub fn coords(&self) -> impl Iterator<Item = LatticeCoord> + '_ {
        self.voxels.iter().map(|&v| LatticeCoord::new(v, self.kind))
    }

    pub fn degree(&self, v: Voxel) -> usize {
        NEIGHBOURS
            .iter()
            .filter(|d| self.voxels.contains(&add(v, **d)))
            .count()
    }

    pub fn is_connected(&self) -> bool {
        connected_components(&self.voxels).len() <= 1
    }
}

/// Split a voxel set into 6-connected components.
pub fn connected_components(voxels: &BTreeSet<Voxel>) -> Vec<BTreeSet<Voxel>> {
    let mut seen: HashSet<Voxel> = HashSet::new();
    let mut out = Vec::new();
    for &start in voxels {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            comp.insert(v);
            for d in NEIGHBOURS {
                let n = add(v, d);
                if voxels.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Input,
    Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "-x")]
    XMin,
    #[serde(rename = "+x")]
    XMax,
    #[serde(rename = "-y")]
    YMin,
    #[serde(rename = "+y")]
    YMax,
    #[serde(rename = "-z")]
    ZMin,
    #[serde(rename = "+z")]
    ZMax,
}

impl Side {
    pub fn axis(self) -> usize {
        match self {
            Side::XMin | Side::XMax => 0,
            Side::YMin | Side::YMax => 1,
            Side::ZMin | Side::ZMax => 2,
        }
    }

    pub fn is_max(self) -> bool {
        matches!(self, Side::XMax | Side::YMax | Side::ZMax)
    }
}

/// Where a port meets the boundary: the face of the bounding region and the
/// two strand ends (a defect pair) that carry the logical qubit through it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortFace {
    pub side: Side,
    pub anchors: [Voxel; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Port {
    pub id: String,
    pub kind: Kind,
    pub role: Role,
    pub face: PortFace,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MagicState {
    Y,
    A,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectionPoint {
    pub id: String,
    pub host: String,
    pub voxel: Voxel,
    pub state: MagicState,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Geometry {
    pub bounding_region: Region,
    pub code_distance: u32,
    pub defects: Vec<DefectSolid>,
    #[serde(default)]
    pub ports: Vec<Port>,
    #[serde(default)]
    pub injections: Vec<InjectionPoint>,
}

/// How a logical qubit surfaces at the geometry boundary, in verification order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PortSignature {
    pub label: String,
    pub kind: Kind,
    pub role: SignatureRole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignatureRole {
    Input,
    Injection,
    Output,
}

impl Geometry {
    pub fn new(bounding_region: Region, code_distance: u32) -> Self {
        Geometry {
            bounding_region,
            code_distance,
            defects: Vec::new(),
            ports: Vec::new(),
            injections: Vec::new(),
        }
    }

    pub fn defect(&self, id: &str) -> Option<&DefectSolid> {
        self.defects.iter().find(|d| d.id == id)
    }

    pub fn defect_mut(&mut self, id: &str) -> Option<&mut DefectSolid> {
        self.defects.iter_mut().find(|d| d.id == id)
    }

    /// Ports and injection points in canonical order: inputs, then
    /// injections, then outputs, each in declaration order.
    pub fn signature(&self) -> Vec<PortSignature> {
        let mut sig = Vec::new();
        for p in self.ports.iter().filter(|p| p.role == Role::Input) {
            sig.push(PortSignature {
                label: p.label.clone(),
                kind: p.kind,
                role: SignatureRole::Input,
            });
        }
        for inj in &self.injections {
            let kind = self.defect(&inj.host).map(|d| d.kind).unwrap_or(Kind::Primal);
            sig.push(PortSignature {
                label: inj.label.clone(),
                kind,
                role: SignatureRole::Injection,
            });
        }
        for p in self.ports.iter().filter(|p| p.role == Role::Output) {
            sig.push(PortSignature {
                label: p.label.clone(),
                kind: p.kind,
                role: SignatureRole::Output,
            });
        }
        sig
    }

    /// Defect ids that carry a port anchor.
    pub fn port_touching_defects(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for p in &self.ports {
            for a in p.face.anchors {
                for d in self.defects.iter().filter(|d| d.kind == p.kind) {
                    if d.voxels.contains(&a) {
                        out.insert(d.id.clone());
                    }
                }
            }
        }
        out
    }

    pub fn translated(&self, by: Voxel) -> Geometry {
        let mut g = self.clone();
        g.bounding_region = g.bounding_region.translated(by);
        for d in &mut g.defects {
            d.voxels = d.voxels.iter().map(|&v| add(v, by)).collect();
        }
        for p in &mut g.ports {
            p.face.anchors = p.face.anchors.map(|a| add(a, by));
        }
        for i in &mut g.injections {
            i.voxel = add(i.voxel, by);
        }
        g
    }

    /// Smallest region containing every voxel.
    pub fn occupied_extent(&self) -> Option<Region> {
        let mut it = self.defects.iter().flat_map(|d| d.voxels.iter().copied());
        let first = it.next()?;
        let mut r = Region {
            min: first,
            max: first,
        };
        for v in it {
            for a in 0..3 {
                r.min[a] = r.min[a].min(v[a]);
                r.max[a] = r.max[a].max(v[a]);
            }
        }
        Some(r)
    }
}

mod io;
mod validate;
mod volume;

pub use io::{load, save, from_str, to_string};
pub(crate) use io::check_version;
pub use validate::{straight_axis as straight_axis_of, validate, ValidationReport, Violation};
pub use volume::{bounding_box_volume, occupied_cells, physical_scale, volume, PhysicalEstimate};
