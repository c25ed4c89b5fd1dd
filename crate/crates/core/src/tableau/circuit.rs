use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CIRCUIT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum Gate {
    InitZero { qubit: String },
    InitPlus { qubit: String },
    Cnot { control: String, target: String },
    SInjection { qubit: String },
    TInjection { qubit: String },
    MeasureX { qubit: String },
    MeasureZ { qubit: String },
}

impl Gate {
    pub fn qubits(&self) -> Vec<&str> {
        match self {
            Gate::Cnot { control, target } => vec![control, target],
            Gate::InitZero { qubit }
            | Gate::InitPlus { qubit }
            | Gate::SInjection { qubit }
            | Gate::TInjection { qubit }
            | Gate::MeasureX { qubit }
            | Gate::MeasureZ { qubit } => vec![qubit],
        }
    }

    pub fn is_injection(&self) -> bool {
        matches!(self, Gate::SInjection { .. } | Gate::TInjection { .. })
    }

    pub fn is_init(&self) -> bool {
        matches!(self, Gate::InitZero { .. } | Gate::InitPlus { .. })
    }

    pub fn is_measurement(&self) -> bool {
        matches!(self, Gate::MeasureX { .. } | Gate::MeasureZ { .. })
    }
}

/// An init/CNOT circuit with injection markers and terminal measurements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordCircuit {
    pub qubits: Vec<String>,
    pub gates: Vec<Gate>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    version: u32,
    #[serde(flatten)]
    circuit: CliffordCircuit,
}

impl CliffordCircuit {
    pub fn new<S: Into<String>>(qubits: impl IntoIterator<Item = S>) -> Self {
        CliffordCircuit {
            qubits: qubits.into_iter().map(Into::into).collect(),
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn init_zero(&mut self, q: &str) -> &mut Self {
        self.push(Gate::InitZero { qubit: q.into() })
    }

    pub fn init_plus(&mut self, q: &str) -> &mut Self {
        self.push(Gate::InitPlus { qubit: q.into() })
    }

    pub fn cnot(&mut self, c: &str, t: &str) -> &mut Self {
        self.push(Gate::Cnot {
            control: c.into(),
            target: t.into(),
        })
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.qubits
            .iter()
            .position(|q| q == label)
            .ok_or_else(|| Error::Circuit(format!("unknown qubit `{label}`")))
    }

    /// Index of the first injection gate, or the gate count.
    pub fn injection_boundary(&self) -> usize {
        self.gates
            .iter()
            .position(Gate::is_injection)
            .unwrap_or(self.gates.len())
    }

    /// Structural checks: known labels, distinct CNOT operands, at most one
    /// init (first) per qubit, nothing after a measurement, and nothing but a
    /// measurement after an injection.
    pub fn check(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for q in &self.qubits {
            if !seen.insert(q) {
                return Err(Error::Circuit(format!("duplicate qubit `{q}`")));
            }
        }
        let n = self.qubits.len();
        let mut touched = vec![false; n];
        let mut injected = vec![false; n];
        let mut measured = vec![false; n];
        for (i, g) in self.gates.iter().enumerate() {
            let qs = g
                .qubits()
                .into_iter()
                .map(|q| self.index(q))
                .collect::<Result<Vec<_>>>()?;
            if qs.len() == 2 && qs[0] == qs[1] {
                return Err(Error::Circuit(format!("gate {i}: CNOT on a single qubit")));
            }
            for &q in &qs {
                let label = &self.qubits[q];
                if measured[q] {
                    return Err(Error::Circuit(format!("gate {i}: `{label}` used after measurement")));
                }
                if g.is_init() && touched[q] {
                    return Err(Error::Circuit(format!("gate {i}: `{label}` initialized mid-circuit")));
                }
                if injected[q] && !g.is_measurement() {
                    return Err(Error::Circuit(format!(
                        "gate {i}: only a measurement may follow the injection on `{label}`"
                    )));
                }
                touched[q] = true;
                injected[q] |= g.is_injection();
                measured[q] |= g.is_measurement();
            }
        }
        Ok(())
    }

    pub fn from_str(text: &str) -> Result<Self> {
        crate::geometry::check_version(text, CIRCUIT_VERSION as u64)?;
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: CircuitDoc = serde_path_to_error::deserialize(de).map_err(Error::from_json)?;
        doc.circuit.check()?;
        Ok(doc.circuit)
    }

    pub fn to_string(&self) -> String {
        crate::textfmt::to_string(&CircuitDoc {
            version: CIRCUIT_VERSION,
            circuit: self.clone(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_str(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_string()).map_err(|e| Error::io(path, e))
    }
}
