use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{add, Geometry, Kind, Voxel, NEIGHBOURS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    EmptySolid { defect: String },
    Disconnected { defect: String, components: usize },
    Overlap { voxel: Voxel, kind: Kind, defects: [String; 2] },
    OutOfBounds { item: String, voxel: Voxel },
    DuplicateId { id: String },
    DuplicateLabel { label: String },
    PortOffFace { port: String, voxel: Voxel },
    PortAnchor { port: String, reason: String },
    Injection { injection: String, reason: String },
    BadDistance { d: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptySolid { defect } => write!(f, "defect `{defect}` has no voxels"),
            Violation::Disconnected { defect, components } => {
                write!(f, "defect `{defect}` is not 6-connected ({components} components)")
            }
            Violation::Overlap { voxel, kind, defects } => write!(
                f,
                "{kind} voxel {voxel:?} shared by `{}` and `{}`",
                defects[0], defects[1]
            ),
            Violation::OutOfBounds { item, voxel } => {
                write!(f, "`{item}` voxel {voxel:?} lies outside the bounding region")
            }
            Violation::DuplicateId { id } => write!(f, "duplicate id `{id}`"),
            Violation::DuplicateLabel { label } => write!(f, "duplicate port label `{label}`"),
            Violation::PortOffFace { port, voxel } => {
                write!(f, "port `{port}` anchor {voxel:?} is not on its boundary face")
            }
            Violation::PortAnchor { port, reason } => write!(f, "port `{port}`: {reason}"),
            Violation::Injection { injection, reason } => {
                write!(f, "injection `{injection}`: {reason}")
            }
            Violation::BadDistance { d } => write!(f, "code distance {d} is not positive"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  - {v}")?;
        }
        Ok(())
    }
}

pub fn validate(g: &Geometry) -> ValidationReport {
    let mut out = Vec::new();
    let region = g.bounding_region;

    if g.code_distance == 0 {
        out.push(Violation::BadDistance { d: 0 });
    }

    let mut ids = BTreeSet::new();
    for id in g
        .defects
        .iter()
        .map(|d| &d.id)
        .chain(g.ports.iter().map(|p| &p.id))
        .chain(g.injections.iter().map(|i| &i.id))
    {
        if !ids.insert(id.clone()) {
            out.push(Violation::DuplicateId { id: id.clone() });
        }
    }
    let mut labels = BTreeSet::new();
    for label in g
        .ports
        .iter()
        .map(|p| &p.label)
        .chain(g.injections.iter().map(|i| &i.label))
    {
        if !labels.insert(label.clone()) {
            out.push(Violation::DuplicateLabel {
                label: label.clone(),
            });
        }
    }

    let mut owner: BTreeMap<(Kind, Voxel), &str> = BTreeMap::new();
    for d in &g.defects {
        if d.voxels.is_empty() {
            out.push(Violation::EmptySolid {
                defect: d.id.clone(),
            });
            continue;
        }
        let comps = super::connected_components(&d.voxels).len();
        if comps > 1 {
            out.push(Violation::Disconnected {
                defect: d.id.clone(),
                components: comps,
            });
        }
        for &v in &d.voxels {
            if !region.contains(v) {
                out.push(Violation::OutOfBounds {
                    item: d.id.clone(),
                    voxel: v,
                });
            }
            if let Some(prev) = owner.insert((d.kind, v), &d.id) {
                out.push(Violation::Overlap {
                    voxel: v,
                    kind: d.kind,
                    defects: [prev.to_string(), d.id.clone()],
                });
            }
        }
    }

    let mut anchors = BTreeSet::new();
    for p in &g.ports {
        let axis = p.face.side.axis();
        let layer = if p.face.side.is_max() {
            region.max[axis]
        } else {
            region.min[axis]
        };
        if p.face.anchors[0] == p.face.anchors[1] {
            out.push(Violation::PortAnchor {
                port: p.id.clone(),
                reason: "both anchors are the same voxel".into(),
            });
        }
        for a in p.face.anchors {
            if !region.contains(a) {
                out.push(Violation::OutOfBounds {
                    item: p.id.clone(),
                    voxel: a,
                });
            }
            if a[axis] != layer {
                out.push(Violation::PortOffFace {
                    port: p.id.clone(),
                    voxel: a,
                });
            }
            if !owner.contains_key(&(p.kind, a)) {
                out.push(Violation::PortAnchor {
                    port: p.id.clone(),
                    reason: format!("anchor {a:?} is not a {} defect voxel", p.kind),
                });
            }
            anchors.insert((p.kind, a));
        }
    }

    for inj in &g.injections {
        let Some(host) = g.defect(&inj.host) else {
            out.push(Violation::Injection {
                injection: inj.id.clone(),
                reason: format!("host defect `{}` does not exist", inj.host),
            });
            continue;
        };
        if !host.voxels.contains(&inj.voxel) {
            out.push(Violation::Injection {
                injection: inj.id.clone(),
                reason: format!("voxel {:?} is not part of `{}`", inj.voxel, host.id),
            });
            continue;
        }
        if straight_axis(&host.voxels, inj.voxel).is_none() {
            out.push(Violation::Injection {
                injection: inj.id.clone(),
                reason: "injection voxel must sit on a straight run of its host".into(),
            });
        }
        if anchors.contains(&(host.kind, inj.voxel)) {
            out.push(Violation::Injection {
                injection: inj.id.clone(),
                reason: "injection voxel is also a port anchor".into(),
            });
        }
    }
    for (i, a) in g.injections.iter().enumerate() {
        for b in &g.injections[i + 1..] {
            let same_host = g.defect(&a.host).map(|d| d.kind) == g.defect(&b.host).map(|d| d.kind);
            let close = (0..3).all(|k| (a.voxel[k] - b.voxel[k]).abs() <= 1);
            if same_host && close {
                out.push(Violation::Injection {
                    injection: b.id.clone(),
                    reason: format!("too close to injection `{}`", a.id),
                });
            }
        }
    }

    ValidationReport { violations: out }
}

/// If `v` has exactly two neighbours in `voxels` and they are opposite,
/// return the axis of that run.
pub fn straight_axis(voxels: &BTreeSet<Voxel>, v: Voxel) -> Option<usize> {
    let present: Vec<usize> = (0..6)
        .filter(|&i| voxels.contains(&add(v, NEIGHBOURS[i])))
        .collect();
    match present.as_slice() {
        [a, b] if a / 2 == b / 2 => Some(a / 2),
        _ => None,
    }
}
