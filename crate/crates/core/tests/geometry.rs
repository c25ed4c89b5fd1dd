mod common;

use proptest::prelude::*;

use braidwork::geometry::{
    self, bounding_box_volume, occupied_cells, validate, volume, DefectSolid, Geometry, Kind, Region, Voxel,
};
use braidwork::Error;

use common::load;

const STEPS: [Voxel; 6] = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]];

/// One to three connected solids, each a random walk inside a 6-cube.
fn arb_geometry() -> impl Strategy<Value = Geometry> {
    let walk = (any::<bool>(), (0i32..6, 0i32..6, 0i32..6), prop::collection::vec(0usize..6, 0..10));
    prop::collection::vec(walk, 1..4)
        .prop_map(|walks| {
            let mut g = Geometry::new(Region { min: [-1, -1, -1], max: [7, 7, 7] }, 3);
            for (i, (primal, start, steps)) in walks.into_iter().enumerate() {
                let kind = if primal { Kind::Primal } else { Kind::Dual };
                let mut at = [start.0, start.1, start.2];
                let mut voxels = vec![at];
                for s in steps {
                    let next = geometry::add(at, STEPS[s]);
                    if next.iter().all(|c| (0..6).contains(c)) {
                        at = next;
                        voxels.push(at);
                    }
                }
                g.defects.push(DefectSolid::new(format!("d{i}"), kind, voxels));
            }
            g
        })
        .prop_filter("overlapping solids", |g| validate(g).is_empty())
}

#[test]
fn fixture_text_round_trips() {
    for name in ["cnot_min.geom", "y_canonical.geom"] {
        let g = load(name);
        assert_eq!(geometry::from_str(&geometry::to_string(&g)).unwrap(), g);
    }
}

#[test]
fn unknown_version_is_refused() {
    let text = geometry::to_string(&load("cnot_min.geom"));
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["version"] = 99.into();
    assert!(matches!(geometry::from_str(&v.to_string()), Err(Error::Version { .. })));
    assert!(matches!(geometry::from_str("not a document"), Err(Error::Parse { .. })));
}

#[test]
fn duplicate_ids_are_reported() {
    let mut g = load("cnot_min.geom");
    g.defects[1].id = g.defects[0].id.clone();
    assert!(!validate(&g).is_empty());
}

#[test]
fn hand_cnot_volume() {
    let g = load("cnot_min.geom");
    assert_eq!(volume(&g).unwrap(), 15);
    assert!(occupied_cells(&g) <= 15);
}

proptest! {
    #[test]
    fn text_round_trip(g in arb_geometry()) {
        prop_assert_eq!(geometry::from_str(&geometry::to_string(&g)).unwrap(), g);
    }

    #[test]
    fn volume_bounds(g in arb_geometry()) {
        let v = volume(&g).unwrap();
        prop_assert!(occupied_cells(&g) <= v);
        prop_assert!(v <= bounding_box_volume(&g));
    }

    #[test]
    fn volume_is_translation_invariant(g in arb_geometry(), by in (-3i32..3, -3i32..3, -3i32..3)) {
        let moved = g.translated([by.0, by.1, by.2]);
        prop_assert_eq!(volume(&moved).unwrap(), volume(&g).unwrap());
        prop_assert_eq!(occupied_cells(&moved), occupied_cells(&g));
    }

    #[test]
    fn adding_a_solid_never_shrinks_volume(g in arb_geometry(), at in (0i32..6, 0i32..6, 0i32..6)) {
        let mut h = g.clone();
        h.defects.push(DefectSolid::new("extra", Kind::Primal, [[at.0, at.1, at.2]]));
        prop_assume!(validate(&h).is_empty());
        prop_assert!(volume(&h).unwrap() >= volume(&g).unwrap());
    }
}
