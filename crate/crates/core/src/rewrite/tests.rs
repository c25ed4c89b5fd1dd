use super::*;
use crate::geometry::{Port, PortFace, Role, Side};
use crate::verify::verify;

fn square(x: i32, y: i32, z: i32) -> Vec<Voxel> {
    vec![[x, y, z], [x + 1, y, z], [x, y, z + 1], [x + 1, y, z + 1]]
}

/// A primal wire with two small dual rings floating above it.
fn wire_with_rings() -> Geometry {
    let len = 9;
    let mut g = Geometry::new(Region { min: [0, 0, 0], max: [len, 4, 5] }, 3);
    for (id, y) in [("a", 1), ("b", 3)] {
        g.defects.push(DefectSolid::new(id, Kind::Primal, (0..=len).map(|x| [x, y, 1])));
    }
    g.defects.push(DefectSolid::new("r1", Kind::Dual, square(2, 1, 3)));
    g.defects.push(DefectSolid::new("r2", Kind::Dual, square(6, 1, 3)));
    for (label, side, x, role) in [("in", Side::XMin, 0, Role::Input), ("out", Side::XMax, len, Role::Output)] {
        g.ports.push(Port {
            id: format!("port:{label}"),
            kind: Kind::Primal,
            role,
            face: PortFace { side, anchors: [[x, 1, 1], [x, 3, 1]] },
            label: label.into(),
        });
    }
    g
}

fn bridge_rings() -> Move {
    Move::Bridge { a: "r1".into(), b: "r2".into(), path: vec![[4, 1, 3], [5, 1, 3]] }
}

#[test]
fn bridge_keeps_map() {
    let g = wire_with_rings();
    let h = apply(&g, &bridge_rings(), Check::Semantic).unwrap();
    assert_eq!(h.defects.len(), 3);
    assert_eq!(verify(&g).unwrap(), verify(&h).unwrap());
}

#[test]
fn apply_leaves_input_alone() {
    let g = wire_with_rings();
    let copy = g.clone();
    apply(&g, &bridge_rings(), Check::Structural).unwrap();
    assert_eq!(g, copy);
}

#[test]
fn bridge_to_port_strand_is_refused() {
    let g = wire_with_rings();
    let m = Move::Bridge { a: "r1".into(), b: "a".into(), path: vec![] };
    assert!(matches!(apply(&g, &m, Check::Structural), Err(Error::TheoremPrecondition(_))));
}

#[test]
fn bridge_across_kinds_is_refused() {
    let mut g = wire_with_rings();
    g.defects.push(DefectSolid::new("p", Kind::Primal, square(6, 3, 4)));
    let m = Move::Bridge { a: "r1".into(), b: "p".into(), path: vec![[4, 1, 3]] };
    assert!(matches!(apply(&g, &m, Check::Structural), Err(Error::TheoremPrecondition(_))));
}

#[test]
fn disconnecting_edit_is_structural_error() {
    let g = wire_with_rings();
    let m = Move::VoxelEdit { defect: "a".into(), add: vec![], remove: vec![[4, 1, 1]] };
    assert!(matches!(apply(&g, &m, Check::Structural), Err(Error::Invalid(_))));
}

#[test]
fn cutting_the_bridge_restores_the_map() {
    let g = wire_with_rings();
    let h = apply(&g, &bridge_rings(), Check::Semantic).unwrap();
    let cut = apply(
        &h,
        &Move::VoxelEdit { defect: "r1".into(), add: vec![], remove: vec![[4, 1, 3], [5, 1, 3]] },
        Check::Structural,
    );
    assert!(matches!(cut, Err(Error::Invalid(_))), "a cut leaves one disconnected solid");
    let mut split = h.clone();
    let r = split.defect_mut("r1").unwrap();
    r.voxels.remove(&[4, 1, 3]);
    r.voxels.remove(&[5, 1, 3]);
    let parts = crate::geometry::connected_components(&r.voxels);
    assert_eq!(parts.len(), 2);
    split.defects.retain(|d| d.id != "r1");
    for (k, part) in parts.into_iter().enumerate() {
        split.defects.push(DefectSolid::new(format!("r{k}"), Kind::Dual, part));
    }
    assert_eq!(verify(&split).unwrap(), verify(&g).unwrap());
}

#[test]
fn semantic_check_rejects_a_cut_wire() {
    let mut g = wire_with_rings();
    let a = g.defect_mut("a").unwrap();
    a.voxels.insert([4, 2, 1]);
    a.voxels.insert([4, 3, 1]);
    let b = g.defect_mut("b").unwrap();
    b.voxels.remove(&[4, 3, 1]);
    // The pair is now joined mid-wire by a measurement bar; undoing it as a
    // voxel edit is fine structurally but changes the map.
    let m = Move::VoxelEdit { defect: "a".into(), add: vec![], remove: vec![[4, 2, 1]] };
    let r = apply(&g, &m, Check::Semantic);
    assert!(r.is_err(), "{r:?}");
}

#[test]
fn swap_needs_justification() {
    let g = wire_with_rings();
    let m = Move::PrimalDualSwap { justification: " ".into() };
    assert!(matches!(apply(&g, &m, Check::Structural), Err(Error::Precondition(_))));
}

#[test]
fn swap_exchanges_letters() {
    let g = wire_with_rings();
    let m = Move::PrimalDualSwap { justification: "identity wire is self-dual".into() };
    let h = apply(&g, &m, Check::Semantic).unwrap();
    assert!(h.ports.iter().all(|p| p.kind == Kind::Dual));
}

#[test]
fn patch_kinds_are_policed() {
    let g = wire_with_rings();
    let p = Patch {
        solids: vec![SolidPatch { id: "r2".into(), kind: None, voxels: None, remove: true }],
        ..Patch::default()
    };
    assert!(apply(&g, &Move::PassThrough(p.clone()), Check::Structural).is_err());
    let h = apply(&g, &Move::RemoveRedundantConverter(p), Check::Semantic).unwrap();
    assert_eq!(h.defects.len(), 3);
}

#[test]
fn empty_replay_is_identity() {
    let g = wire_with_rings();
    let (report, out) = replay(&MoveScript::new("x.geom"), &g, Check::Semantic, BuildOptions::default()).unwrap();
    assert!(report.steps.is_empty());
    assert_eq!(out, g);
}

#[test]
fn replay_reports_failing_index() {
    let g = wire_with_rings();
    let mut s = MoveScript::new("x.geom");
    s.push(bridge_rings(), "join the rings");
    s.push(bridge_rings(), "again");
    let err = replay(&s, &g, Check::Structural, BuildOptions::default()).unwrap_err();
    assert!(matches!(err, Error::Replay { index: 1, .. }));
}

#[test]
fn script_round_trip() {
    let mut s = MoveScript::new("start.geom");
    s.push(bridge_rings(), "join");
    s.push(Move::PassThrough(Patch::default()), "");
    s.expected_final_volume = Some(18);
    assert_eq!(MoveScript::from_str(&s.to_string()).unwrap(), s);
}
