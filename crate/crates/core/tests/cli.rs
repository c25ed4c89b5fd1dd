use std::path::{Path, PathBuf};

use braidwork::canonicalize::lower;
use braidwork::cli::run;
use braidwork::geometry::{self, volume};
use braidwork::mesh::{Mesh, ObjectRole};
use braidwork::rewrite::ReplayReport;
use braidwork::tableau::{library, CliffordCircuit};
use braidwork::verify::LogicalMapDoc;

fn fixture(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("braidwork").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn volume_prints_the_count() {
    let path = fixture("cnot_min.geom");
    let (code, out, _) = cli(&["volume", &path]);
    assert_eq!(code, 0);
    let g = geometry::load(&path).unwrap();
    assert_eq!(out.trim(), volume(&g).unwrap().to_string());
}

#[test]
fn structured_volume_is_json() {
    let (code, out, _) = cli(&["--format", "structured", "volume", &fixture("cnot_min.geom")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["bounding_box"].as_u64().unwrap() >= v["volume"].as_u64().unwrap());
    assert!(v["volume"].as_u64().unwrap() >= v["occupied_cells"].as_u64().unwrap());
}

#[test]
fn missing_file_exits_2() {
    let (code, out, err) = cli(&["verify", "missing.geom"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("missing.geom"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&["volume", "--bogus", "x"]).0, 2);
    assert_eq!(cli(&[]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
}

#[test]
fn validate_reports_ok() {
    let (code, out, _) = cli(&["validate", &fixture("y_canonical.geom")]);
    assert_eq!((code, out.trim()), (0, "ok"));
}

#[test]
fn validate_flags_a_broken_file() {
    let dir = tempfile::tempdir().unwrap();
    let mut g = geometry::load(fixture_path("cnot_min.geom")).unwrap();
    g.defects[1].id = g.defects[0].id.clone();
    let p = dir.path().join("broken.geom");
    geometry::save(&g, &p).unwrap();
    let (code, out, _) = cli(&["--format", "structured", "validate", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: geometry::ValidationReport = serde_json::from_str(&out).unwrap();
    assert!(!report.is_empty());
}

#[test]
fn verify_structured_round_trips() {
    let (code, out, _) = cli(&["--format", "structured", "verify", &fixture("cnot_min.geom")]);
    assert_eq!(code, 0);
    let doc: LogicalMapDoc = serde_json::from_str(&out).unwrap();
    let want = braidwork::tableau::expected_logical_map(&library::single_cnot()).unwrap();
    assert_eq!(doc, want.to_doc());
}

#[test]
fn equiv_distinguishes_cnot_from_wires() {
    let (code, out, _) = cli(&["equiv", &fixture("cnot_min.geom"), &fixture("cnot_canonical.geom")]);
    assert_eq!((code, out.trim()), (0, "equivalent"));
    let (code, out, _) = cli(&["equiv", &fixture("cnot_min.geom"), &fixture("wires.geom")]);
    assert_eq!((code, out.trim()), (1, "not equivalent"));
}

#[test]
fn lower_matches_the_library() {
    let (code, out, _) = cli(&["lower", &fixture("cnot.circuit")]);
    assert_eq!(code, 0);
    let c = CliffordCircuit::load(fixture_path("cnot.circuit")).unwrap();
    assert_eq!(geometry::from_str(&out).unwrap(), lower(&c).unwrap());
}

#[test]
fn lower_prints_a_tableau() {
    let (code, out, _) = cli(&["lower", "--tableau", &fixture("y_distillation.circuit")]);
    assert_eq!(code, 0);
    assert!(out.contains("out"), "{out}");
    let (code, out, _) = cli(&["--format", "structured", "lower", "--tableau", &fixture("y_distillation.circuit")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 8);
}

#[test]
fn structural_replay_prints_a_table() {
    let (code, out, _) = cli(&["replay", "--check", "structural", &fixture("y_sequence.moves")]);
    assert_eq!(code, 0);
    assert!(out.contains("final volume"));
    let (code, out, _) = cli(&["--format", "structured", "replay", "--check", "structural", &fixture("y_sequence.moves")]);
    assert_eq!(code, 0);
    let report: ReplayReport = serde_json::from_str(&out).unwrap();
    assert!(report.meets_expectation());
    let end = geometry::load(fixture_path("y_compressed.geom")).unwrap();
    assert_eq!(report.final_volume, volume(&end).unwrap());
}

#[test]
fn replay_with_wrong_expectation_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let mut script = braidwork::rewrite::MoveScript::load(fixture_path("y_sequence.moves")).unwrap();
    script.initial = fixture("y_canonical.geom");
    script.expected_final_volume = Some(1);
    let p = dir.path().join("off.moves");
    script.save(&p).unwrap();
    let (code, out, _) = cli(&["replay", "--check", "structural", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("expected 1"));
}

#[test]
fn distill_and_scale_tables() {
    let (code, out, _) = cli(&["distill", "--protocol", "a", "--levels", "2", "-p", "0.01"]);
    assert_eq!(code, 0);
    assert!(out.contains("552"));
    assert!(out.lines().next().unwrap().contains("output error"));
    let (code, _, err) = cli(&["distill", "--levels", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("unsupported"));
    let (code, out, _) = cli(&["--format", "structured", "scale", "--n-f", "1,10"]);
    assert_eq!(code, 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 2);
}

#[test]
fn mesh_export_with_witness() {
    let g = geometry::load(fixture_path("cnot_min.geom")).unwrap();
    let (code, out, _) = cli(&["export-mesh", &fixture("cnot_min.geom")]);
    assert_eq!(code, 0);
    let mesh = Mesh::from_obj(&out).unwrap();
    assert_eq!(mesh.objects.len(), g.defects.len());
    for (o, d) in mesh.objects.iter().zip(&g.defects) {
        assert_eq!((o.meta.kind, &o.meta.tags), (d.kind, &d.tags));
    }
    let (code, out, err) = cli(&["export-mesh", &fixture("cnot_min.geom"), "--witness", "Z:t.in,Z:t.out,Z:c.out"]);
    assert_eq!(code, 0, "{err}");
    let mesh = Mesh::from_obj(&out).unwrap();
    assert!(mesh.objects.iter().any(|o| o.meta.role == ObjectRole::Witness));
    let (code, _, _) = cli(&["export-mesh", &fixture("cnot_min.geom"), "--witness", "Z:t.in"]);
    assert_eq!(code, 1);
}

#[test]
fn fixture_root_resolves_relative_names() {
    std::env::set_var(braidwork::cli::FIXTURE_ENV, fixture_path(""));
    let (code, out, _) = cli(&["volume", "cnot_min.geom"]);
    assert_eq!(code, 0);
    assert!(out.trim().parse::<u64>().is_ok());
}
