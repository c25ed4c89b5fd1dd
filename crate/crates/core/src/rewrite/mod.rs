//! Rewrites of defect geometries.
//!
//! Every move is a pure function from one geometry to another. Bridges and
//! voxel edits carry their own parameters; the macro moves share a
//! [`Patch`] that replaces, creates or deletes whole solids and injection
//! points. Structural checking validates the result; semantic checking
//! also requires the logical map to be unchanged.

mod script;
mod suggest;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use suggest::{cap_retractions, injection_slides, Suggestion};
pub use script::{replay, MoveRecord, MoveScript, ReplayReport, StepCheck, StepReport, SCRIPT_VERSION};

use crate::error::{Error, Result};
use crate::geometry::{
    validate, DefectSolid, Geometry, InjectionPoint, Kind, Region, Voxel, NEIGHBOURS,
};
use crate::verify::{verify_with, BuildOptions, LogicalMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Structural,
    #[default]
    Semantic,
}

/// A replacement for whole solids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolidPatch {
    pub id: String,
    /// Required when creating a solid; changes the kind of an existing one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    /// New voxel set. Absent with `remove` false means keep the voxels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub voxels: Option<BTreeSet<Voxel>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub remove: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Patch {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub solids: Vec<SolidPatch>,
    /// Inserted, or replacing the injection with the same id.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub injections: Vec<InjectionPoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub remove_injections: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Move {
    VoxelEdit {
        defect: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        add: Vec<Voxel>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        remove: Vec<Voxel>,
    },
    /// Join two closed same-kind solids with a tube of voxels.
    Bridge { a: String, b: String, path: Vec<Voxel> },
    BraidReverse(Patch),
    PassThrough(Patch),
    DoubleBraidCancel(Patch),
    CnotFormSwap(Patch),
    InjectionConvert(Patch),
    RemoveRedundantConverter(Patch),
    /// Exchange the sublattices of every solid and port. The logical map
    /// comes out with X and Z exchanged, which is only the same computation
    /// when the encoded code is self-dual; the caller states why.
    PrimalDualSwap { justification: String },
}

impl Move {
    pub const KINDS: [&'static str; 9] = [
        "VoxelEdit",
        "Bridge",
        "BraidReverse",
        "PassThrough",
        "DoubleBraidCancel",
        "CnotFormSwap",
        "InjectionConvert",
        "RemoveRedundantConverter",
        "PrimalDualSwap",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Move::VoxelEdit { .. } => "VoxelEdit",
            Move::Bridge { .. } => "Bridge",
            Move::BraidReverse(_) => "BraidReverse",
            Move::PassThrough(_) => "PassThrough",
            Move::DoubleBraidCancel(_) => "DoubleBraidCancel",
            Move::CnotFormSwap(_) => "CnotFormSwap",
            Move::InjectionConvert(_) => "InjectionConvert",
            Move::RemoveRedundantConverter(_) => "RemoveRedundantConverter",
            Move::PrimalDualSwap { .. } => "PrimalDualSwap",
        }
    }

    pub fn swaps_kinds(&self) -> bool {
        matches!(self, Move::PrimalDualSwap { .. })
    }
}

/// Apply `m` to `g` and check the result. `g` is left untouched.
pub fn apply(g: &Geometry, m: &Move, check: Check) -> Result<Geometry> {
    apply_with(g, m, check, BuildOptions::default())
}

pub fn apply_with(g: &Geometry, m: &Move, check: Check, opts: BuildOptions) -> Result<Geometry> {
    let out = rewrite(g, m)?;
    if check == Check::Semantic {
        let before = verify_with(g, opts)?;
        semantic_check(&before, &out, m, opts)?;
    }
    Ok(out)
}

/// Compare the map of `after` with `before`, allowing for a kind swap.
pub(crate) fn semantic_check(
    before: &LogicalMap,
    after: &Geometry,
    m: &Move,
    opts: BuildOptions,
) -> Result<LogicalMap> {
    let got = verify_with(after, opts)?;
    let want = if m.swaps_kinds() { before.kind_swapped() } else { before.clone() };
    if got != want {
        return Err(Error::MoveRejected { diff: want.diff(&got) });
    }
    Ok(got)
}

/// The structural part of [`apply`]: rewrite and validate.
pub fn rewrite(g: &Geometry, m: &Move) -> Result<Geometry> {
    let mut out = g.clone();
    match m {
        Move::VoxelEdit { defect, add, remove } => voxel_edit(&mut out, defect, add, remove)?,
        Move::Bridge { a, b, path } => bridge(&mut out, a, b, path)?,
        Move::PrimalDualSwap { justification } => {
            if justification.trim().is_empty() {
                return Err(Error::Precondition(
                    "a primal/dual swap needs a recorded justification".into(),
                ));
            }
            out = swap_kinds(g);
        }
        Move::BraidReverse(p)
        | Move::PassThrough(p)
        | Move::DoubleBraidCancel(p)
        | Move::CnotFormSwap(p)
        | Move::InjectionConvert(p)
        | Move::RemoveRedundantConverter(p) => {
            check_patch_shape(g, m, p)?;
            apply_patch(&mut out, p)?;
        }
    }
    let report = validate(&out);
    if !report.is_empty() {
        return Err(Error::Invalid(report));
    }
    Ok(out)
}

fn missing(id: &str) -> Error {
    Error::Precondition(format!("no defect `{id}`"))
}

fn voxel_edit(g: &mut Geometry, id: &str, add: &[Voxel], remove: &[Voxel]) -> Result<()> {
    let d = g.defect_mut(id).ok_or_else(|| missing(id))?;
    for v in remove {
        if !d.voxels.remove(v) {
            return Err(Error::Precondition(format!("`{id}` has no voxel {v:?}")));
        }
    }
    d.voxels.extend(add.iter().copied());
    if d.voxels.is_empty() {
        return Err(Error::Precondition(format!("edit would leave `{id}` empty")));
    }
    Ok(())
}

fn adjacent_or_inside(v: Voxel, set: &BTreeSet<Voxel>) -> bool {
    set.contains(&v)
        || NEIGHBOURS
            .iter()
            .any(|n| set.contains(&[v[0] + n[0], v[1] + n[1], v[2] + n[2]]))
}

fn bridge(g: &mut Geometry, a: &str, b: &str, path: &[Voxel]) -> Result<()> {
    let pre = |msg: String| Error::TheoremPrecondition(msg);
    if a == b {
        return Err(pre(format!("bridge joins `{a}` to itself")));
    }
    let da = g.defect(a).ok_or_else(|| missing(a))?;
    let db = g.defect(b).ok_or_else(|| missing(b))?;
    if da.kind != db.kind {
        return Err(pre(format!("`{a}` is {} but `{b}` is {}", da.kind, db.kind)));
    }
    let touching = g.port_touching_defects();
    for id in [a, b] {
        if touching.contains(id) {
            return Err(pre(format!("`{id}` reaches a port")));
        }
    }
    let kind = da.kind;
    let joined = |v: Voxel, set: &BTreeSet<Voxel>| adjacent_or_inside(v, set);
    let ends_ok = match (path.first(), path.last()) {
        (Some(&f), Some(&l)) => joined(f, &da.voxels) && joined(l, &db.voxels),
        _ => da.voxels.iter().any(|&v| joined(v, &db.voxels)),
    };
    if !ends_ok {
        return Err(pre(format!("bridge path does not run from `{a}` to `{b}`")));
    }
    for w in path.windows(2) {
        let step: i32 = (0..3).map(|k| (w[0][k] - w[1][k]).abs()).sum();
        if step != 1 {
            return Err(pre(format!("bridge path jumps from {:?} to {:?}", w[0], w[1])));
        }
    }
    for d in g.defects.iter().filter(|d| d.kind == kind && d.id != a && d.id != b) {
        if let Some(v) = path.iter().find(|v| d.voxels.contains(*v)) {
            return Err(pre(format!("bridge path enters `{}` at {v:?}", d.id)));
        }
    }

    let taken = g.defects.iter().position(|d| d.id == b).expect("looked up");
    let absorbed = g.defects.remove(taken);
    let host = g.defect_mut(a).expect("looked up");
    host.voxels.extend(absorbed.voxels);
    host.voxels.extend(path.iter().copied());
    for t in absorbed.tags {
        if !host.tags.contains(&t) {
            host.tags.push(t);
        }
    }
    for inj in g.injections.iter_mut().filter(|i| i.host == b) {
        inj.host = a.to_string();
    }
    Ok(())
}

/// Per-kind limits on what a patch may touch.
fn check_patch_shape(g: &Geometry, m: &Move, p: &Patch) -> Result<()> {
    let bad = |msg: &str| Err(Error::Precondition(format!("{}: {msg}", m.name())));
    let creates_or_removes = p.solids.iter().any(|s| s.remove || g.defect(&s.id).is_none());
    let rekinds = p
        .solids
        .iter()
        .any(|s| matches!((s.kind, g.defect(&s.id)), (Some(k), Some(d)) if k != d.kind));
    let touches_injections = !p.injections.is_empty() || !p.remove_injections.is_empty();
    let kinds: BTreeSet<Kind> = p
        .solids
        .iter()
        .filter_map(|s| s.kind.or_else(|| g.defect(&s.id).map(|d| d.kind)))
        .collect();
    match m {
        Move::BraidReverse(_) | Move::PassThrough(_) | Move::DoubleBraidCancel(_) => {
            if creates_or_removes || rekinds || touches_injections {
                return bad("only reshapes existing solids");
            }
            if matches!(m, Move::PassThrough(_)) && kinds.len() > 1 {
                return bad("solids passing through each other must share a kind");
            }
            if !matches!(m, Move::PassThrough(_)) && kinds.len() < 2 {
                return bad("a braid involves a primal and a dual solid");
            }
        }
        Move::CnotFormSwap(_) => {
            if touches_injections {
                return bad("does not move injection points");
            }
        }
        Move::InjectionConvert(_) => {
            if !touches_injections {
                return bad("must change at least one injection point");
            }
        }
        Move::RemoveRedundantConverter(_) => {
            if !p.solids.iter().any(|s| s.remove) {
                return bad("must remove at least one solid");
            }
        }
        _ => {}
    }
    Ok(())
}

fn apply_patch(g: &mut Geometry, p: &Patch) -> Result<()> {
    for s in &p.solids {
        let pos = g.defects.iter().position(|d| d.id == s.id);
        match (pos, s.remove) {
            (Some(i), true) => {
                g.defects.remove(i);
            }
            (None, true) => return Err(missing(&s.id)),
            (Some(i), false) => {
                let d = &mut g.defects[i];
                if let Some(k) = s.kind {
                    d.kind = k;
                }
                if let Some(v) = &s.voxels {
                    d.voxels = v.clone();
                }
            }
            (None, false) => {
                let (Some(kind), Some(voxels)) = (s.kind, &s.voxels) else {
                    return Err(Error::Precondition(format!(
                        "new solid `{}` needs a kind and voxels",
                        s.id
                    )));
                };
                g.defects.push(DefectSolid::new(s.id.clone(), kind, voxels.iter().copied()));
            }
        }
    }
    for id in &p.remove_injections {
        let before = g.injections.len();
        g.injections.retain(|i| &i.id != id);
        if g.injections.len() == before {
            return Err(Error::Precondition(format!("no injection `{id}`")));
        }
    }
    for inj in &p.injections {
        match g.injections.iter_mut().find(|i| i.id == inj.id) {
            Some(slot) => *slot = inj.clone(),
            None => g.injections.push(inj.clone()),
        }
    }
    Ok(())
}

/// Move every object half a cell towards the origin on each axis, which
/// exchanges the sublattices: primal `v` lands on dual `v - 1`, dual `v` on
/// primal `v`. Port strands are then extended by one voxel where needed so
/// that anchors stay on the boundary face.
pub fn swap_kinds(g: &Geometry) -> Geometry {
    let map = |v: Voxel, k: Kind| match k {
        Kind::Primal => [v[0] - 1, v[1] - 1, v[2] - 1],
        Kind::Dual => v,
    };
    let r = g.bounding_region;
    let region = Region {
        min: r.min.map(|c| c - 1),
        max: r.max,
    };
    let mut out = Geometry::new(region, g.code_distance);
    let mut kinds: BTreeMap<String, Kind> = BTreeMap::new();
    for d in &g.defects {
        kinds.insert(d.id.clone(), d.kind);
        let mut nd = DefectSolid::new(
            d.id.clone(),
            d.kind.opposite(),
            d.voxels.iter().map(|&v| map(v, d.kind)),
        );
        nd.tags = d.tags.clone();
        out.defects.push(nd);
    }
    for p in &g.ports {
        let mut np = p.clone();
        np.kind = p.kind.opposite();
        let axis = p.face.side.axis();
        let layer = if p.face.side.is_max() { region.max[axis] } else { region.min[axis] };
        for a in np.face.anchors.iter_mut() {
            let moved = map(*a, p.kind);
            let mut tip = moved;
            tip[axis] = layer;
            if tip != moved {
                if let Some(d) = out
                    .defects
                    .iter_mut()
                    .find(|d| d.kind == np.kind && d.voxels.contains(&moved))
                {
                    d.voxels.insert(tip);
                }
            }
            *a = tip;
        }
        out.ports.push(np);
    }
    for inj in &g.injections {
        let kind = kinds.get(&inj.host).copied().unwrap_or(Kind::Primal);
        out.injections.push(InjectionPoint {
            voxel: map(inj.voxel, kind),
            ..inj.clone()
        });
    }
    out
}

#[cfg(test)]
mod tests;
