use super::*;
use crate::geometry::{DefectSolid, Port, PortFace, Region, Role, Side};

fn pair_wire(kind: Kind, len: i32) -> Geometry {
    let mut g = Geometry::new(
        Region {
            min: [0, 0, 0],
            max: [len, 4, 2],
        },
        3,
    );
    for (id, y) in [("a", 1), ("b", 3)] {
        g.defects
            .push(DefectSolid::new(id, kind, (0..=len).map(|x| [x, y, 1])));
    }
    for (id, side, x, role) in [("in", Side::XMin, 0, Role::Input), ("out", Side::XMax, len, Role::Output)] {
        g.ports.push(Port {
            id: id.into(),
            kind,
            role,
            face: PortFace {
                side,
                anchors: [[x, 1, 1], [x, 3, 1]],
            },
            label: id.into(),
        });
    }
    g
}

#[test]
fn wire_is_identity() {
    for kind in [Kind::Primal, Kind::Dual] {
        let g = pair_wire(kind, 3);
        let map = verify(&g).unwrap();
        let xx = operator(&g, &[("in", Letter::X), ("out", Letter::X)]).unwrap();
        let zz = operator(&g, &[("in", Letter::Z), ("out", Letter::Z)]).unwrap();
        assert!(map.contains(&xx), "{kind}: {map}");
        assert!(map.contains(&zz), "{kind}: {map}");
        assert_eq!(map.dimension(), 2, "{map}");
    }
}

#[test]
fn lone_port_operator_has_no_surface() {
    let g = pair_wire(Kind::Primal, 3);
    let cx = build_complex(&g, BuildOptions::default()).unwrap();
    let z_in = operator(&g, &[("in", Letter::Z)]).unwrap();
    assert!(surface_exists(&cx, &z_in).is_none());
    let zz = operator(&g, &[("in", Letter::Z), ("out", Letter::Z)]).unwrap();
    let w = surface_exists(&cx, &zz).expect("ZZ surface");
    assert_eq!(w.len(), 1);
    assert!(!w[0].faces.is_empty());
}

#[test]
fn boundary_of_boundary_vanishes() {
    let cx = build_complex(&pair_wire(Kind::Dual, 2), BuildOptions::default()).unwrap();
    assert!(cx.check_boundary_squares());
}

#[test]
fn translation_and_resolution_do_not_change_the_map() {
    let g = pair_wire(Kind::Primal, 2);
    let base = logical_map(&g, BuildOptions::default()).unwrap();
    let moved = logical_map(&g.translated([5, -2, 7]), BuildOptions::default()).unwrap();
    assert_eq!(base, moved);
    let fine = logical_map(
        &g,
        BuildOptions {
            resolution: 4,
            ..BuildOptions::default()
        },
    )
    .unwrap();
    assert_eq!(base, fine);
}

#[test]
fn cut_wire_is_underdetermined() {
    let mut g = pair_wire(Kind::Primal, 4);
    g.defects[0].voxels.retain(|v| v[0] < 2);
    g.defects.push(DefectSolid::new("a2", Kind::Primal, (3..=4).map(|x| [x, 1, 1])));
    match verify(&g) {
        Err(Error::UnderdeterminedStructure { .. }) => {}
        other => panic!("expected underdetermined, got {other:?}"),
    }
}

/// Dual pair whose first strand winds once around the first primal strand.
fn dual_around_primal() -> Geometry {
    let mut g = Geometry::new(
        Region {
            min: [0, 0, 0],
            max: [6, 4, 5],
        },
        3,
    );
    g.defects
        .push(DefectSolid::new("a", Kind::Primal, (0..=6).map(|x| [x, 1, 1])));
    g.defects
        .push(DefectSolid::new("b", Kind::Primal, (0..=6).map(|x| [x, 3, 1])));
    let mut c: Vec<[i32; 3]> = (0..=2).map(|x| [x, 0, 2]).collect();
    c.extend([[2, 0, 1], [2, 0, 0], [2, 1, 0], [2, 2, 0], [2, 2, 1], [2, 2, 2]]);
    c.extend([[3, 2, 2], [4, 2, 2], [4, 1, 2]]);
    c.extend((4..=6).map(|x| [x, 0, 2]));
    g.defects.push(DefectSolid::new("c", Kind::Dual, c));
    g.defects
        .push(DefectSolid::new("d", Kind::Dual, (0..=6).map(|x| [x, 0, 4])));
    for (id, kind, side, role, anchors) in [
        ("p_in", Kind::Primal, Side::XMin, Role::Input, [[0, 1, 1], [0, 3, 1]]),
        ("d_in", Kind::Dual, Side::XMin, Role::Input, [[0, 0, 2], [0, 0, 4]]),
        ("p_out", Kind::Primal, Side::XMax, Role::Output, [[6, 1, 1], [6, 3, 1]]),
        ("d_out", Kind::Dual, Side::XMax, Role::Output, [[6, 0, 2], [6, 0, 4]]),
    ] {
        g.ports.push(Port {
            id: id.into(),
            kind,
            role,
            face: PortFace { side, anchors },
            label: id.into(),
        });
    }
    g
}

#[test]
fn braid_is_cnot_with_dual_control() {
    let g = dual_around_primal();
    let map = verify(&g).unwrap();
    use Letter::{X, Z};
    let expect = [
        operator(&g, &[("p_in", X), ("p_out", X)]).unwrap(),
        operator(&g, &[("p_in", Z), ("p_out", Z), ("d_out", Z)]).unwrap(),
        operator(&g, &[("d_in", X), ("d_out", X), ("p_out", X)]).unwrap(),
        operator(&g, &[("d_in", Z), ("d_out", Z)]).unwrap(),
    ];
    let want = LogicalMap::from_generators(g.signature(), &expect);
    assert_eq!(map, want, "got\n{map}\nwant\n{want}");
}
