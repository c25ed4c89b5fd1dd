//! Correlation-surface verification.
//!
//! A geometry is refined into a cell complex; for every port the complex
//! provides a primal and a dual boundary cycle. A set of port cycles is
//! realizable when some 2-chain avoiding the other sublattice has exactly
//! that boundary modulo defect surfaces of its own kind. The realizable
//! combinations span the logical map.

mod complex;
mod grid;
mod logical;
mod solver;

use serde::Serialize;

pub use complex::{
    build_complex, BuildOptions, CellComplex, CubeLabel, PortCycles, DEFAULT_MAX_CELLS,
    DEFAULT_RESOLUTION,
};
pub use grid::Grid;
pub use logical::{same_ports, signature, LogicalMap, LogicalMapDoc, TransitionDoc};
pub use solver::{Problem, Solution, MAX_TARGETS};

use crate::error::{Error, Result};
use crate::geometry::{Geometry, Kind, SignatureRole};
use crate::gf2::{self, BitVec};
use crate::pauli::{Letter, PauliString};

/// Letter carried by surfaces of a given kind: primal surfaces carry Z.
pub fn letter_of(kind: Kind) -> Letter {
    match kind {
        Kind::Primal => Letter::Z,
        Kind::Dual => Letter::X,
    }
}

/// Boundary cycle of port `p` that surfaces of `kind` must attach to.
fn cycle_for<'a>(p: &'a PortCycles, kind: Kind) -> &'a [usize] {
    if p.kind == kind {
        &p.ribbon
    } else {
        &p.ring
    }
}

fn solve_kind(cx: &CellComplex, kind: Kind) -> Result<Solution> {
    if cx.ports.len() > MAX_TARGETS {
        return Err(Error::Unsupported(format!(
            "{} ports exceed the {MAX_TARGETS}-port solver limit",
            cx.ports.len()
        )));
    }
    let targets: Vec<Vec<usize>> = cx.ports.iter().map(|p| cycle_for(p, kind).to_vec()).collect();
    Ok(cx.problem(kind).solve(&targets))
}

fn realizable_basis(sol: &Solution, n: usize) -> Vec<BitVec> {
    let rows: Vec<BitVec> = sol
        .constraints
        .iter()
        .map(|&m| BitVec::from_bits(n, (0..n).filter(|&i| m >> i & 1 == 1)))
        .collect();
    gf2::kernel(&rows, n)
}

/// Logical map of a complex, without checking that inputs are determined.
pub fn logical_map_of(g: &Geometry, cx: &CellComplex) -> Result<LogicalMap> {
    let n = cx.ports.len();
    let (zs, xs) = std::thread::scope(|s| {
        let z = s.spawn(|| solve_kind(cx, Kind::Primal));
        let x = solve_kind(cx, Kind::Dual);
        (z.join().expect("solver thread"), x)
    });
    let (zs, xs) = (zs?, xs?);
    let mut gens = Vec::new();
    for v in realizable_basis(&zs, n) {
        gens.push(PauliString::uniform(n, v.ones(), Letter::Z));
    }
    for v in realizable_basis(&xs, n) {
        gens.push(PauliString::uniform(n, v.ones(), Letter::X));
    }
    Ok(LogicalMap::from_generators(g.signature(), &gens))
}

pub fn logical_map(g: &Geometry, opts: BuildOptions) -> Result<LogicalMap> {
    let cx = build_complex(g, opts)?;
    logical_map_of(g, &cx)
}

/// Full verification: every input generator must be carried to the outputs.
pub fn verify_with(g: &Geometry, opts: BuildOptions) -> Result<LogicalMap> {
    let map = logical_map(g, opts)?;
    if let Some(generator) = map.undetermined_input() {
        return Err(Error::UnderdeterminedStructure { generator });
    }
    Ok(map)
}

pub fn verify(g: &Geometry) -> Result<LogicalMap> {
    verify_with(g, BuildOptions::default())
}

/// Both maps are computed and compared canonically.
pub fn equivalent(a: &Geometry, b: &Geometry, opts: BuildOptions) -> Result<bool> {
    let (sa, sb) = (a.signature(), b.signature());
    if !same_ports(&sa, &sb) {
        return Err(Error::SignatureMismatch(format!(
            "{} ports vs {} ports or differing labels/roles",
            sa.len(),
            sb.len()
        )));
    }
    Ok(logical_map(a, opts)? == logical_map(b, opts)?)
}

/// A 2-chain realizing one CSS half of a port operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceWitness {
    pub kind: Kind,
    pub resolution: usize,
    /// Micro coordinate of face index 0; one logical cell is
    /// `2 * resolution` micro-cells.
    pub origin: [i64; 3],
    /// `[normal axis, x, y, z]` of each face's lowest corner, in micro-cells
    /// relative to `origin`.
    pub faces: Vec<[usize; 4]>,
}

/// Find surfaces realizing `op` on `cx`, one per non-trivial CSS half.
/// Each witness is re-checked against the boundary operator before return.
pub fn surface_exists(cx: &CellComplex, op: &PauliString) -> Option<Vec<SurfaceWitness>> {
    let n = cx.ports.len();
    assert_eq!(op.len(), n, "operator length must match port count");
    let mut out = Vec::new();
    for kind in [Kind::Primal, Kind::Dual] {
        let letter = letter_of(kind);
        let bits: Vec<usize> = (0..n)
            .filter(|&q| {
                let (x, z) = op.get(q).bits();
                match letter {
                    Letter::Z => z,
                    _ => x,
                }
            })
            .collect();
        if bits.is_empty() {
            continue;
        }
        let problem = cx.problem(kind);
        let mut target: Vec<usize> = Vec::new();
        for &q in &bits {
            target.extend_from_slice(cycle_for(&cx.ports[q], kind));
        }
        let sol = problem.solve(std::slice::from_ref(&target));
        if !sol.realizable(1) {
            return None;
        }
        let faces = sol.witness(1);
        if !problem.check_witness(&faces, &target) {
            return None;
        }
        out.push(SurfaceWitness {
            kind,
            resolution: cx.factor / 2,
            origin: cx.origin,
            faces: faces
                .into_iter()
                .map(|f| {
                    let (a, p) = cx.grid.face_pos(f);
                    [a, p[0], p[1], p[2]]
                })
                .collect(),
        });
    }
    Some(out)
}

/// Operator on the ports of `g` written as letters per label.
pub fn operator(g: &Geometry, terms: &[(&str, Letter)]) -> Result<PauliString> {
    let sig = g.signature();
    let mut p = PauliString::identity(sig.len());
    for (label, l) in terms {
        let q = sig
            .iter()
            .position(|s| s.label == *label)
            .ok_or_else(|| Error::Precondition(format!("no port labelled `{label}`")))?;
        p.set(q, *l);
    }
    Ok(p)
}

/// Inputs (true inputs only) of the map, by label.
pub fn input_labels(map: &LogicalMap) -> Vec<String> {
    map.signature
        .iter()
        .filter(|p| p.role == SignatureRole::Input)
        .map(|p| p.label.clone())
        .collect()
}

#[cfg(test)]
mod tests;
