//! Candidate moves found by local inspection.
//!
//! Suggestions are structural guesses. They keep the geometry valid but
//! are not known to preserve the logical map until checked.

use std::collections::BTreeSet;

use super::{Move, Patch, SolidPatch};
use crate::geometry::{DefectSolid, Geometry, InjectionPoint, Kind, Voxel};

/// A move with a short note on what it does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suggestion {
    pub mv: Move,
    pub note: String,
}

/// Which end of a solid along x a cap sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Low,
    High,
}

fn at(v: Voxel, x: i32) -> Voxel {
    [x, v[1], v[2]]
}

/// The cross-section of `voxels` at `x` when it is a straight segment
/// perpendicular to x, as its two ends.
fn segment(voxels: &BTreeSet<Voxel>, x: i32) -> Option<(Voxel, Voxel)> {
    let slice: Vec<Voxel> = voxels.iter().copied().filter(|v| v[0] == x).collect();
    let (first, last) = (*slice.first()?, *slice.last()?);
    let axis = if first[1] != last[1] { 1 } else { 2 };
    let other = 3 - axis;
    let span = last[axis] - first[axis];
    let straight = span >= 2
        && first[other] == last[other]
        && slice.len() as i32 == span + 1;
    straight.then_some((first, last))
}

fn cells_between(p: Voxel, q: Voxel, x: i32) -> Vec<Voxel> {
    let axis = if p[1] != q[1] { 1 } else { 2 };
    (p[axis]..=q[axis])
        .map(|c| {
            let mut v = at(p, x);
            v[axis] = c;
            v
        })
        .collect()
}

/// The U-turn closing one end of a solid along x.
struct Cap<'a> {
    g: &'a Geometry,
    d: &'a DefectSolid,
    start: i32,
    step: i32,
    p: Voxel,
    q: Voxel,
}

impl<'a> Cap<'a> {
    fn find(g: &'a Geometry, id: &str, end: End) -> Option<Self> {
        let d = g.defect(id)?;
        let xs: BTreeSet<i32> = d.voxels.iter().map(|v| v[0]).collect();
        let (start, step) = match end {
            End::Low => (*xs.first()?, 1),
            End::High => (*xs.last()?, -1),
        };
        let (p, q) = segment(&d.voxels, start)?;
        Some(Cap { g, d, start, step, p, q })
    }

    fn x(&self, j: i32) -> i32 {
        self.start + self.step * j
    }

    /// Another solid comes within one cell of the cap swept to slice `x`.
    fn crowded(&self, x: i32) -> bool {
        let (p, q) = (self.p, self.q);
        let axis = if p[1] != q[1] { 1 } else { 2 };
        let other = 3 - axis;
        self.g.defects.iter().filter(|o| o.id != self.d.id).any(|o| {
            o.voxels.iter().any(|v| {
                (v[0] - x).abs() <= 1
                    && v[axis] >= p[axis] - 1
                    && v[axis] <= q[axis] + 1
                    && (v[other] - p[other]).abs() <= 1
            })
        })
    }

    /// Number of slices past the cap where the solid is just its two
    /// strands, none of them pinned, with the strands going on beyond.
    fn bare_run(&self, pinned: &BTreeSet<Voxel>) -> i32 {
        let (p, q) = (self.p, self.q);
        if cells_between(p, q, self.start).iter().any(|v| pinned.contains(v)) || self.crowded(self.start) {
            return 0;
        }
        let bare = |x: i32| {
            let slice: BTreeSet<Voxel> = self.d.voxels.iter().copied().filter(|v| v[0] == x).collect();
            slice == BTreeSet::from([at(p, x), at(q, x)])
        };
        let mut k = 0;
        loop {
            let x = self.x(k + 1);
            let beyond = x + self.step;
            let ok = bare(x)
                && !pinned.contains(&at(p, x))
                && !pinned.contains(&at(q, x))
                && !self.crowded(x)
                && self.d.voxels.contains(&at(p, beyond))
                && self.d.voxels.contains(&at(q, beyond));
            if !ok {
                return k;
            }
            k += 1;
        }
    }

    /// The solid with this cap moved `k` slices inward.
    fn moved(&self, k: i32) -> (Vec<Voxel>, Vec<Voxel>) {
        let (p, q) = (self.p, self.q);
        let mut remove: Vec<Voxel> = cells_between(p, q, self.start);
        for j in 1..k {
            remove.extend([at(p, self.x(j)), at(q, self.x(j))]);
        }
        let add: Vec<Voxel> = cells_between(p, q, self.x(k))
            .into_iter()
            .filter(|v| !self.d.voxels.contains(v))
            .collect();
        (add, remove)
    }

    fn label(&self) -> &'static str {
        if self.step > 0 { "near" } else { "far" }
    }
}

fn anchors(g: &Geometry, kind: Kind) -> impl Iterator<Item = Voxel> + '_ {
    g.ports.iter().filter(move |p| p.kind == kind).flat_map(|p| p.face.anchors)
}

/// Slide the U-turn at one end of `id` inward as far as the strands run
/// bare, leaving a clear margin around everything else.
fn retract(g: &Geometry, id: &str, end: End) -> Option<Suggestion> {
    let cap = Cap::find(g, id, end)?;
    let pinned: BTreeSet<Voxel> = anchors(g, cap.d.kind)
        .chain(g.injections.iter().filter(|i| i.host == id).map(|i| i.voxel))
        .collect();
    let k = cap.bare_run(&pinned);
    if k == 0 {
        return None;
    }
    let (add, remove) = cap.moved(k);
    Some(Suggestion {
        mv: Move::VoxelEdit { defect: id.to_string(), add, remove },
        note: format!("retract the {} cap of {id} by {k}", cap.label()),
    })
}

/// Move an injection and the cap behind it inward together, keeping
/// their spacing.
fn slide(g: &Geometry, inj: &InjectionPoint, end: End) -> Option<Suggestion> {
    let cap = Cap::find(g, &inj.host, end)?;
    let setback = (inj.voxel[0] - cap.start) * cap.step;
    if setback <= 0 {
        return None;
    }
    let pinned: BTreeSet<Voxel> = anchors(g, cap.d.kind).collect();
    let k = cap.bare_run(&pinned) - setback;
    if k <= 0 {
        return None;
    }
    let (add, remove) = cap.moved(k);
    let mut voxels = cap.d.voxels.clone();
    for v in &remove {
        voxels.remove(v);
    }
    voxels.extend(add);
    let mut moved = inj.clone();
    moved.voxel[0] += cap.step * k;
    Some(Suggestion {
        mv: Move::InjectionConvert(Patch {
            solids: vec![SolidPatch { id: inj.host.clone(), kind: None, voxels: Some(voxels), remove: false }],
            injections: vec![moved],
            remove_injections: Vec::new(),
        }),
        note: format!("slide {} and the {} cap of {} in by {k}", inj.id, cap.label(), inj.host),
    })
}

/// Cap retractions available on every solid.
pub fn cap_retractions(g: &Geometry) -> Vec<Suggestion> {
    g.defects
        .iter()
        .flat_map(|d| [End::Low, End::High].map(|e| retract(g, &d.id, e)))
        .flatten()
        .collect()
}

/// Injection slides available on every injection.
pub fn injection_slides(g: &Geometry) -> Vec<Suggestion> {
    g.injections
        .iter()
        .flat_map(|i| [End::Low, End::High].map(|e| slide(g, i, e)))
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Region;
    use crate::rewrite::rewrite;

    fn loop_solid(x0: i32, x1: i32) -> DefectSolid {
        let mut v: Vec<Voxel> = (x0..=x1).flat_map(|x| [[x, 1, 1], [x, 3, 1]]).collect();
        v.extend([[x0, 2, 1], [x1, 2, 1]]);
        DefectSolid::new("l", Kind::Primal, v)
    }

    #[test]
    fn retracts_a_bare_loop_to_two_slices() {
        let mut g = Geometry::new(Region { min: [0, 0, 0], max: [10, 4, 2] }, 3);
        g.defects.push(loop_solid(0, 10));
        let s = cap_retractions(&g);
        assert_eq!(s.len(), 2);
        let g1 = rewrite(&g, &s[0].mv).unwrap();
        let xs: BTreeSet<i32> = g1.defects[0].voxels.iter().map(|v| v[0]).collect();
        assert_eq!(xs, BTreeSet::from([9, 10]));
        assert!(cap_retractions(&g1).is_empty());
    }

    #[test]
    fn stops_short_of_a_neighbour() {
        let mut g = Geometry::new(Region { min: [0, 0, 0], max: [10, 4, 3] }, 3);
        g.defects.push(loop_solid(0, 10));
        g.defects.push(DefectSolid::new("r", Kind::Dual, [[4, 1, 2]]));
        let s = cap_retractions(&g);
        let near = s.iter().find(|s| s.note.contains("near")).unwrap();
        let Move::VoxelEdit { add, .. } = &near.mv else { panic!() };
        assert!(add.iter().all(|v| v[0] == 2));
    }
}
