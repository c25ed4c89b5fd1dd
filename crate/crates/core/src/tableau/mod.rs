//! Stabilizer simulation of init/CNOT circuits with injection markers.

mod circuit;
pub mod library;
mod tiling;

use std::fmt;

pub use circuit::{CliffordCircuit, Gate, CIRCUIT_VERSION};
pub use tiling::{surface_code_tiling, TilingOperator};

use crate::error::{Error, Result};
use crate::geometry::{Kind, MagicState, PortSignature, SignatureRole};
use crate::pauli::{canonical_group, Letter, PauliString};
use crate::verify::LogicalMap;

/// Stabilizer generators of a (possibly partial) stabilizer state.
#[derive(Debug, Clone)]
pub struct PauliTableau {
    pub qubits: Vec<String>,
    pub generators: Vec<PauliString>,
}

impl PauliTableau {
    /// Canonical sign-free generators: equal groups give equal vectors.
    pub fn canonical(&self) -> Vec<PauliString> {
        canonical_group(&self.generators)
    }

    pub fn same_group(&self, other: &[PauliString]) -> bool {
        self.canonical() == canonical_group(other)
    }

    pub fn commuting(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }
}

impl fmt::Display for PauliTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.qubits.iter().map(|q| q.len()).max().unwrap_or(1).max(1);
        let header: Vec<String> = self.qubits.iter().map(|q| format!("{q:>width$}")).collect();
        writeln!(f, "{}", header.join(" "))?;
        for g in &self.generators {
            let row: Vec<String> = (0..g.len())
                .map(|q| match g.get(q) {
                    Letter::I => format!("{:>width$}", ""),
                    l => format!("{:>width$}", l.symbol()),
                })
                .collect();
            writeln!(f, "{}", row.join(" ").trim_end())?;
        }
        Ok(())
    }
}

/// Conjugate `p` by CNOT(c → t), with the standard sign update.
pub fn conjugate_cnot(p: &mut PauliString, c: usize, t: usize) {
    let (xc, zc, xt, zt) = (p.x.get(c), p.z.get(c), p.x.get(t), p.z.get(t));
    if xc && zt && (xt == zc) {
        p.negative = !p.negative;
    }
    p.x.set(t, xt ^ xc);
    p.z.set(c, zc ^ zt);
}

/// Stabilizers of the state after the first `upto` gates.
pub fn propagate(c: &CliffordCircuit, upto: usize) -> Result<PauliTableau> {
    c.check()?;
    let n = c.qubits.len();
    let mut live = vec![false; n];
    let mut gens: Vec<PauliString> = Vec::new();
    for (i, g) in c.gates.iter().take(upto).enumerate() {
        match g {
            Gate::InitZero { qubit } | Gate::InitPlus { qubit } => {
                let q = c.index(qubit)?;
                let l = if matches!(g, Gate::InitZero { .. }) { Letter::Z } else { Letter::X };
                gens.push(PauliString::single(n, q, l));
                live[q] = true;
            }
            Gate::Cnot { control, target } => {
                let (a, b) = (c.index(control)?, c.index(target)?);
                for q in [a, b] {
                    if !live[q] {
                        return Err(Error::Circuit(format!(
                            "gate {i}: qubit `{}` used before initialization",
                            c.qubits[q]
                        )));
                    }
                }
                for p in &mut gens {
                    conjugate_cnot(p, a, b);
                }
            }
            other => {
                return Err(Error::Circuit(format!(
                    "gate {i}: {other:?} is not an init or CNOT"
                )))
            }
        }
    }
    Ok(PauliTableau {
        qubits: c.qubits.clone(),
        generators: gens,
    })
}

/// Stabilizers just before the first injection marker.
pub fn propagate_to_injections(c: &CliffordCircuit) -> Result<PauliTableau> {
    propagate(c, c.injection_boundary())
}

/// Sublattice each qubit line is drawn on: CNOT controls are dual and CNOT
/// targets primal. A line in no CNOT is dual when it starts in |+⟩ or ends
/// in an X measurement, so that its ends close into caps.
pub fn lane_kinds(c: &CliffordCircuit) -> Result<Vec<Kind>> {
    let n = c.qubits.len();
    let mut control = vec![false; n];
    let mut target = vec![false; n];
    for g in &c.gates {
        if let Gate::Cnot { control: a, target: b } = g {
            control[c.index(a)?] = true;
            target[c.index(b)?] = true;
        }
    }
    (0..n)
        .map(|q| match (control[q], target[q]) {
            (true, true) => Err(Error::Unsupported(format!(
                "qubit `{}` is both a CNOT control and a target",
                c.qubits[q]
            ))),
            (true, false) => Ok(Kind::Dual),
            (false, true) => Ok(Kind::Primal),
            (false, false) => {
                let label = c.qubits[q].as_str();
                let x_basis = c.gates.iter().filter(|g| g.qubits().contains(&label)).any(|g| {
                    matches!(g, Gate::InitPlus { .. } | Gate::MeasureX { .. })
                });
                Ok(if x_basis { Kind::Dual } else { Kind::Primal })
            }
        })
        .collect()
}

/// The open ends of one qubit line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinePorts {
    pub qubit: usize,
    pub kind: Kind,
    pub input: Option<String>,
    /// Label, state and gate index of the injection marker.
    pub injection: Option<(String, MagicState, usize)>,
    pub output: Option<String>,
}

/// Port labels per qubit. A line with a single open end uses the bare qubit
/// label; otherwise ends are suffixed `.in`, `.inj`, `.out`.
pub fn port_plan(c: &CliffordCircuit) -> Result<Vec<LinePorts>> {
    c.check()?;
    let kinds = lane_kinds(c)?;
    let mut out = Vec::new();
    for (q, label) in c.qubits.iter().enumerate() {
        let mine: Vec<(usize, &Gate)> = c
            .gates
            .iter()
            .enumerate()
            .filter(|(_, g)| g.qubits().contains(&label.as_str()))
            .collect();
        let has_input = mine.first().is_none_or(|(_, g)| !g.is_init());
        let injection = mine.iter().find(|(_, g)| g.is_injection()).map(|(i, g)| {
            let state = if matches!(g, Gate::SInjection { .. }) { MagicState::Y } else { MagicState::A };
            (*i, state)
        });
        let ends_closed = injection.is_some() || mine.iter().any(|(_, g)| g.is_measurement());
        let count = has_input as usize + injection.is_some() as usize + !ends_closed as usize;
        let name = |suffix: &str| {
            if count == 1 {
                label.clone()
            } else {
                format!("{label}.{suffix}")
            }
        };
        out.push(LinePorts {
            qubit: q,
            kind: kinds[q],
            input: has_input.then(|| name("in")),
            injection: injection.map(|(i, s)| (name("inj"), s, i)),
            output: (!ends_closed).then(|| name("out")),
        });
    }
    Ok(out)
}

/// Port signature in verification order: inputs by qubit, injections by
/// gate order, outputs by qubit.
pub fn circuit_signature(plan: &[LinePorts]) -> Vec<PortSignature> {
    let mut sig = Vec::new();
    for l in plan {
        if let Some(label) = &l.input {
            sig.push(PortSignature { label: label.clone(), kind: l.kind, role: SignatureRole::Input });
        }
    }
    let mut inj: Vec<&LinePorts> = plan.iter().filter(|l| l.injection.is_some()).collect();
    inj.sort_by_key(|l| l.injection.as_ref().map(|x| x.2));
    for l in inj {
        let (label, _, _) = l.injection.as_ref().expect("filtered");
        sig.push(PortSignature { label: label.clone(), kind: l.kind, role: SignatureRole::Injection });
    }
    for l in plan {
        if let Some(label) = &l.output {
            sig.push(PortSignature { label: label.clone(), kind: l.kind, role: SignatureRole::Output });
        }
    }
    sig
}

/// Reference semantics for the verifier: the group of port operators the
/// circuit correlates. Each open input is maximally entangled with a
/// reference qubit standing in for its port; a measurement that does not
/// follow an injection projects and discards its qubit.
pub fn expected_logical_map(c: &CliffordCircuit) -> Result<LogicalMap> {
    let plan = port_plan(c)?;
    let n = c.qubits.len();
    let refs: Vec<Option<usize>> = {
        let mut next = n;
        plan.iter()
            .map(|l| {
                l.input.as_ref().map(|_| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let width = n + refs.iter().flatten().count();
    let mut gens: Vec<PauliString> = Vec::new();
    for (q, r) in refs.iter().enumerate() {
        if let Some(r) = *r {
            let mut xx = PauliString::single(width, q, Letter::X);
            xx.set(r, Letter::X);
            let mut zz = PauliString::single(width, q, Letter::Z);
            zz.set(r, Letter::Z);
            gens.push(xx);
            gens.push(zz);
        }
    }
    let mut injected = vec![false; n];
    for g in &c.gates {
        match g {
            Gate::InitZero { qubit } => gens.push(PauliString::single(width, c.index(qubit)?, Letter::Z)),
            Gate::InitPlus { qubit } => gens.push(PauliString::single(width, c.index(qubit)?, Letter::X)),
            Gate::Cnot { control, target } => {
                let (a, b) = (c.index(control)?, c.index(target)?);
                for p in &mut gens {
                    conjugate_cnot(p, a, b);
                }
            }
            Gate::SInjection { qubit } | Gate::TInjection { qubit } => injected[c.index(qubit)?] = true,
            Gate::MeasureX { qubit } | Gate::MeasureZ { qubit } => {
                let q = c.index(qubit)?;
                if !injected[q] {
                    let l = if matches!(g, Gate::MeasureX { .. }) { Letter::X } else { Letter::Z };
                    measure_and_discard(&mut gens, width, q, l);
                }
            }
        }
    }

    let sig = circuit_signature(&plan);
    let column = |p: &PortSignature| -> usize {
        let l = plan
            .iter()
            .find(|l| {
                l.input.as_deref() == Some(p.label.as_str())
                    || l.output.as_deref() == Some(p.label.as_str())
                    || l.injection.as_ref().map(|x| x.0.as_str()) == Some(p.label.as_str())
            })
            .expect("label from plan");
        match p.role {
            SignatureRole::Input => refs[l.qubit].expect("input has a reference"),
            _ => l.qubit,
        }
    };
    let cols: Vec<usize> = sig.iter().map(column).collect();
    let ports: Vec<PauliString> = gens
        .iter()
        .map(|g| {
            let mut p = PauliString::identity(sig.len());
            for (k, &col) in cols.iter().enumerate() {
                p.set(k, g.get(col));
            }
            p
        })
        .collect();
    Ok(LogicalMap::from_generators(sig, &ports))
}

/// Measure `letter` on qubit `q` (outcome +1) and remove the qubit from every
/// generator. Generators are sign-tracked but the outcome is fixed.
fn measure_and_discard(gens: &mut Vec<PauliString>, width: usize, q: usize, letter: Letter) {
    let m = PauliString::single(width, q, letter);
    let anti: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].commutes_with(&m)).collect();
    if let Some((&first, rest)) = anti.split_first() {
        let pivot = gens[first].clone();
        for &i in rest {
            gens[i].mul_assign(&pivot);
        }
        gens[first] = m.clone();
    } else if !gens.contains(&m) {
        gens.push(m.clone());
    }
    // Every generator now commutes with m, so its q-part is I or `letter`.
    let holder = gens.iter().position(|g| g.x == m.x && g.z == m.z);
    for i in 0..gens.len() {
        if Some(i) != holder && gens[i].get(q) != Letter::I {
            gens[i].mul_assign(&m);
        }
    }
    if let Some(h) = holder {
        gens.remove(h);
    }
    for g in gens.iter_mut() {
        g.set(q, Letter::I);
    }
}
