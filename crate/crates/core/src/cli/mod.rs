//! Command-line front end.

mod serve;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use serve::{router, Session};

use crate::calc::{
    distill_volume_with, output_error, scaling_volume, DistillationSpec, HalfDistanceFirstLevel,
    LevelPolicy, Protocol, ScalingModel, UniformDistance,
};
use crate::canonicalize::lower;
use crate::error::Error;
use crate::geometry::{self, bounding_box_volume, occupied_cells, volume, Geometry};
use crate::mesh::{export_mesh, witness_mesh};
use crate::pauli::Letter;
use crate::rewrite::{replay, Check, MoveScript};
use crate::tableau::{propagate_to_injections, CliffordCircuit};
use crate::verify::{build_complex, equivalent, operator, surface_exists, verify_with, BuildOptions, DEFAULT_MAX_CELLS};

/// Directory searched for relative paths that do not exist as given.
pub const FIXTURE_ENV: &str = "BRAIDWORK_FIXTURES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "braidwork", version, about = "Surface-code defect geometry workbench")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest cell complex the verifier may build.
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS, global = true)]
    pub max_cells: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Structural,
    Semantic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    Y,
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    HalfFirst,
    Uniform,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a geometry for structural problems.
    Validate { geometry: PathBuf },
    /// Count the logical cells a geometry occupies.
    Volume { geometry: PathBuf },
    /// Lower a circuit file to its canonical geometry.
    Lower {
        circuit: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print the stabilizer tableau at the injection boundary instead.
        #[arg(long)]
        tableau: bool,
    },
    /// Replay a move script against its initial geometry.
    Replay {
        script: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckArg::Semantic)]
        check: CheckArg,
        /// Write the final geometry here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the logical map of a geometry.
    Verify { geometry: PathBuf },
    /// Decide whether two geometries perform the same computation.
    Equiv { first: PathBuf, second: PathBuf },
    /// Distillation output error and volume.
    Distill {
        #[arg(long, value_enum, default_value_t = ProtocolArg::A)]
        protocol: ProtocolArg,
        #[arg(long, default_value_t = 1)]
        levels: u32,
        #[arg(short, long, default_value_t = 0.01)]
        p: f64,
        #[arg(long, value_enum, default_value_t = PolicyArg::HalfFirst)]
        policy: PolicyArg,
    },
    /// Volume against failure order for concatenated and topological codes.
    Scale {
        /// Values of n_f to tabulate.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 2.0, 4.0, 8.0, 16.0])]
        n_f: Vec<f64>,
    },
    /// Write a triangle mesh of every defect solid.
    ExportMesh {
        geometry: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Overlay the surfaces realizing this operator, e.g. `Z:out,Z:R`.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Serve a geometry session over local HTTP.
    Serve {
        geometry: PathBuf,
        #[arg(long, default_value_t = 7878)]
        port: u16,
    },
}

/// Resolve `p` as given, or under the fixture root when it does not exist.
pub fn resolve(p: &Path) -> PathBuf {
    if p.exists() || p.is_absolute() {
        return p.to_path_buf();
    }
    match std::env::var_os(FIXTURE_ENV) {
        Some(root) if Path::new(&root).join(p).exists() => Path::new(&root).join(p),
        _ => p.to_path_buf(),
    }
}

fn load_geometry(p: &Path) -> Result<Geometry, Error> {
    geometry::load(resolve(p))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { source, .. } if source.kind() == std::io::ErrorKind::NotFound => 2,
        Error::Replay { source, .. } => exit_code(source),
        _ => 1,
    }
}

/// Parse `argv` and run, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Error> {
    writeln!(out, "{}", crate::textfmt::to_string(value).trim_end()).map_err(|e| Error::io("<stdout>", e))
}

fn say(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), Error> {
    writeln!(out, "{text}").map_err(|e| Error::io("<stdout>", e))
}

fn write_or_print(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => out.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e)),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let opts = BuildOptions {
        max_cells: cli.max_cells,
        ..BuildOptions::default()
    };
    let structured = cli.format == Format::Structured;
    match &cli.command {
        Command::Validate { geometry } => {
            let g = load_geometry(geometry)?;
            let report = geometry::validate(&g);
            if structured {
                emit(out, &report)?;
            } else if report.is_empty() {
                say(out, "ok")?;
            } else {
                say(out, &report)?;
            }
            Ok(if report.is_empty() { 0 } else { 1 })
        }
        Command::Volume { geometry } => {
            let g = load_geometry(geometry)?;
            let v = volume(&g)?;
            if structured {
                #[derive(Serialize)]
                struct Doc {
                    volume: u64,
                    occupied_cells: u64,
                    bounding_box: u64,
                }
                emit(out, &Doc { volume: v, occupied_cells: occupied_cells(&g), bounding_box: bounding_box_volume(&g) })?;
            } else {
                say(out, v)?;
            }
            Ok(0)
        }
        Command::Lower { circuit, output, tableau } => {
            let c = CliffordCircuit::load(resolve(circuit))?;
            if *tableau {
                let t = propagate_to_injections(&c)?;
                if structured {
                    let rows: Vec<String> = t.canonical().iter().map(|p| p.letters()).collect();
                    emit(out, &serde_json::json!({ "qubits": c.qubits, "generators": rows }))?;
                } else {
                    say(out, &t)?;
                }
                return Ok(0);
            }
            let g = lower(&c)?;
            write_or_print(out, output, &geometry::to_string(&g))?;
            Ok(0)
        }
        Command::Replay { script, check, output } => {
            let path = resolve(script);
            let s = MoveScript::load(&path)?;
            let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
            let initial = geometry::load(s.initial_path(&dir))?;
            let check = match check {
                CheckArg::Structural => Check::Structural,
                CheckArg::Semantic => Check::Semantic,
            };
            let (report, g) = replay(&s, &initial, check, opts)?;
            if structured {
                emit(out, &report)?;
            } else {
                say(out, &report)?;
            }
            if let Some(p) = output {
                geometry::save(&g, p)?;
            }
            Ok(if report.meets_expectation() { 0 } else { 1 })
        }
        Command::Verify { geometry } => {
            let g = load_geometry(geometry)?;
            let map = verify_with(&g, opts)?;
            if structured {
                emit(out, &map.to_doc())?;
            } else {
                say(out, &map)?;
            }
            Ok(0)
        }
        Command::Equiv { first, second } => {
            let (a, b) = (load_geometry(first)?, load_geometry(second)?);
            let same = equivalent(&a, &b, opts)?;
            if structured {
                emit(out, &serde_json::json!({ "equivalent": same }))?;
            } else {
                say(out, if same { "equivalent" } else { "not equivalent" })?;
            }
            Ok(if same { 0 } else { 1 })
        }
        Command::Distill { protocol, levels, p, policy } => {
            let protocol = match protocol {
                ProtocolArg::Y => Protocol::Y,
                ProtocolArg::A => Protocol::A,
            };
            let spec = DistillationSpec::new(protocol, *levels, *p);
            let e = output_error(&spec)?;
            let policy: &dyn LevelPolicy = match policy {
                PolicyArg::HalfFirst => &HalfDistanceFirstLevel,
                PolicyArg::Uniform => &UniformDistance,
            };
            let v = distill_volume_with(&spec, policy)?;
            if structured {
                emit(out, &serde_json::json!({
                    "protocol": protocol, "p": p, "levels": levels,
                    "output_error": e.probability, "valid": e.valid,
                    "volume": v, "cnot_units": v.cnot_units(),
                }))?;
            } else {
                say(out, format!("{:<8} {:>8} {:>6} {:>14} {:>10} {:>10}", "protocol", "p", "levels", "output error", "volume", "cnots"))?;
                let vol = v.exact().map_or(format!("{:.3}", v.cells()), |n| n.to_string());
                let flag = if e.valid { "" } else { "  (outside the formula's range)" };
                say(out, format!("{:<8} {:>8} {:>6} {:>14.4e} {:>10} {:>10.3}{flag}", format!("{protocol:?}"), p, levels, e.probability, vol, v.cnot_units()))?;
            }
            Ok(0)
        }
        Command::Scale { n_f } => {
            let (c, t) = (ScalingModel::concatenated(), ScalingModel::topological());
            let rows: Vec<(f64, f64, f64)> = n_f
                .iter()
                .map(|&n| Ok((n, scaling_volume(c, n)?, scaling_volume(t, n)?)))
                .collect::<Result<_, Error>>()?;
            if structured {
                let doc: Vec<_> = rows
                    .iter()
                    .map(|(n, a, b)| serde_json::json!({ "n_f": n, "concatenated": a, "topological": b }))
                    .collect();
                emit(out, &doc)?;
            } else {
                say(out, format!("{:>8} {:>16} {:>16}", "n_f", "concatenated", "topological"))?;
                for (n, a, b) in rows {
                    say(out, format!("{n:>8} {a:>16.4e} {b:>16.4e}"))?;
                }
            }
            Ok(0)
        }
        Command::ExportMesh { geometry, output, witness } => {
            let g = load_geometry(geometry)?;
            let mut mesh = export_mesh(&g)?;
            if let Some(spec) = witness {
                let terms = parse_terms(spec)?;
                let refs: Vec<(&str, Letter)> = terms.iter().map(|(l, x)| (l.as_str(), *x)).collect();
                let op = operator(&g, &refs)?;
                let cx = build_complex(&g, opts)?;
                let found = surface_exists(&cx, &op)
                    .ok_or_else(|| Error::Precondition(format!("no correlation surface realizes {spec}")))?;
                for (k, w) in found.iter().enumerate() {
                    mesh.objects.push(witness_mesh(w, format!("witness{k}")));
                }
            }
            write_or_print(out, output, &mesh.to_obj())?;
            Ok(0)
        }
        Command::Serve { geometry, port } => {
            let g = load_geometry(geometry)?;
            let name = geometry.display().to_string();
            serve::serve(Session::new(g, name, opts), *port)?;
            Ok(0)
        }
    }
}

/// `Z:out,X:R` into labelled letters.
pub fn parse_terms(spec: &str) -> Result<Vec<(String, Letter)>, Error> {
    spec.split(',')
        .map(|t| {
            let (l, label) = t
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Precondition(format!("term `{t}` is not LETTER:label")))?;
            let letter = match l {
                "X" => Letter::X,
                "Y" => Letter::Y,
                "Z" => Letter::Z,
                _ => return Err(Error::Precondition(format!("unknown Pauli letter `{l}`"))),
            };
            Ok((label.to_string(), letter))
        })
        .collect()
}
