//! Regenerate `crates/core/fixtures`.
//!
//! Lowers the built-in circuits, then compresses the Y and A encoders
//! greedily: every suggested move is applied only if the logical map is
//! unchanged, and the accepted moves are written out as scripts. Run with
//! `cargo run --release --example gen_fixtures`; the A encoder takes a few
//! minutes.

use std::path::{Path, PathBuf};

use braidwork::canonicalize::lower;
use braidwork::geometry::{
    self, volume, DefectSolid, Geometry, Kind, Port, PortFace, Region, Role, Side, Voxel,
};
use braidwork::rewrite::{apply, cap_retractions, injection_slides, Check, MoveScript, Suggestion};
use braidwork::tableau::{library, CliffordCircuit};

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn save(name: &str, g: &Geometry) {
    geometry::save(g, dir().join(name)).expect("write fixture");
    println!("{name}: volume {}", volume(g).expect("valid"));
}

/// A three-slice CNOT: the dual control strand makes one turn around the
/// first primal target strand while its partner rides on the second.
fn cnot_min() -> Geometry {
    let mut g = Geometry::new(Region { min: [0, -1, -1], max: [2, 6, 2] }, 3);
    let line = |y, z| (0..=2).map(move |x| [x, y, z]);
    let turn: [Voxel; 7] = [[0, 2, 0], [0, 3, 0], [1, 3, 0], [1, 3, 1], [2, 3, 1], [2, 2, 1], [2, 2, 0]];
    g.defects = vec![
        DefectSolid::new("c.a", Kind::Dual, turn).with_tag("qubit:c"),
        DefectSolid::new("c.b", Kind::Dual, line(5, 1)).with_tag("qubit:c"),
        DefectSolid::new("t.a", Kind::Primal, line(3, 1)).with_tag("qubit:t"),
        DefectSolid::new("t.b", Kind::Primal, line(5, 1)).with_tag("qubit:t"),
    ];
    let port = |label: &str, kind, role, side, anchors: [Voxel; 2]| Port {
        id: format!("port:{label}"),
        kind,
        role,
        face: PortFace { side, anchors },
        label: label.into(),
    };
    g.ports = vec![
        port("c.in", Kind::Dual, Role::Input, Side::XMin, [[0, 2, 0], [0, 5, 1]]),
        port("c.out", Kind::Dual, Role::Output, Side::XMax, [[2, 2, 0], [2, 5, 1]]),
        port("t.in", Kind::Primal, Role::Input, Side::XMin, [[0, 3, 1], [0, 5, 1]]),
        port("t.out", Kind::Primal, Role::Output, Side::XMax, [[2, 3, 1], [2, 5, 1]]),
    ];
    g
}

/// Apply suggestions from `propose` until none is accepted.
fn compress(
    g: &mut Geometry,
    script: &mut MoveScript,
    propose: fn(&Geometry) -> Vec<Suggestion>,
) {
    'outer: loop {
        for s in propose(g) {
            match apply(g, &s.mv, Check::Semantic) {
                Ok(next) => {
                    println!("  {} -> {}", s.note, volume(&next).expect("valid"));
                    *g = next;
                    script.push(s.mv, s.note);
                    continue 'outer;
                }
                Err(e) => println!("  {} rejected: {e}", s.note),
            }
        }
        return;
    }
}

fn sequence(prefix: &str, circuit: &CliffordCircuit) -> (Geometry, Geometry) {
    let canonical = lower(circuit).expect("lowering");
    save(&format!("{prefix}_canonical.geom"), &canonical);
    let mut script = MoveScript::new(format!("{prefix}_canonical.geom"));
    let mut g = canonical;
    compress(&mut g, &mut script, cap_retractions);
    let midpoint = g.clone();
    compress(&mut g, &mut script, injection_slides);
    compress(&mut g, &mut script, cap_retractions);
    script.expected_final_volume = Some(volume(&g).expect("valid"));
    script.save(dir().join(format!("{prefix}_sequence.moves"))).expect("write script");
    println!("{prefix}_sequence.moves: {} moves", script.moves.len());
    (midpoint, g)
}

fn main() {
    std::fs::create_dir_all(dir()).expect("fixture dir");
    let wires = CliffordCircuit::new(["c", "t"]);
    wires.check().expect("empty circuit");
    for (name, c) in [
        ("y_distillation.circuit", library::y_distillation()),
        ("a_distillation.circuit", library::a_distillation()),
        ("cnot.circuit", library::single_cnot()),
        ("wires.circuit", wires.clone()),
    ] {
        c.save(dir().join(name)).expect("write circuit");
    }
    save("cnot_min.geom", &cnot_min());
    save("cnot_canonical.geom", &lower(&library::single_cnot()).expect("lowering"));
    save("wires.geom", &lower(&wires).expect("lowering"));

    let (mid, compressed) = sequence("y", &library::y_distillation());
    save("y_midpoint.geom", &mid);
    save("y_compressed.geom", &compressed);
    let (_, compressed) = sequence("a", &library::a_distillation());
    save("a_compressed.geom", &compressed);
}
