use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{Kind, PortSignature, SignatureRole};
use crate::gf2::{self, BitVec};
use crate::pauli::PauliString;

/// The Pauli correlations a structure implements between its ports, kept as
/// the (sign-free) group of port operators realized by correlation surfaces.
///
/// Stored in reduced row echelon form over a column order that puts input
/// ports first, so equality of two maps is equality of their rows. Port
/// kinds are recorded but do not take part in comparisons: the Pauli letter
/// on a port means the same thing whichever sublattice carries it.
#[derive(Debug, Clone)]
pub struct LogicalMap {
    pub signature: Vec<PortSignature>,
    rows: Vec<BitVec>,
}

impl PartialEq for LogicalMap {
    fn eq(&self, other: &Self) -> bool {
        same_ports(&self.signature, &other.signature) && self.rows == other.rows
    }
}

impl Eq for LogicalMap {}

/// Labels and roles agree position by position.
pub fn same_ports(a: &[PortSignature], b: &[PortSignature]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(p, q)| p.label == q.label && p.role == q.role)
}

impl LogicalMap {
    pub fn from_generators(signature: Vec<PortSignature>, gens: &[PauliString]) -> Self {
        let order = column_order(&signature);
        let bits: Vec<BitVec> = gens.iter().map(|g| permute(&g.to_bits(), &order)).collect();
        LogicalMap {
            signature,
            rows: gf2::rref(&bits),
        }
    }

    pub fn num_ports(&self) -> usize {
        self.signature.len()
    }

    pub fn num_inputs(&self) -> usize {
        self.signature
            .iter()
            .filter(|p| p.role == SignatureRole::Input)
            .count()
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Canonical generators, indexed by port.
    pub fn generators(&self) -> Vec<PauliString> {
        let order = column_order(&self.signature);
        self.rows.iter().map(|r| unpermute(r, &order)).collect()
    }

    pub fn contains(&self, p: &PauliString) -> bool {
        let order = column_order(&self.signature);
        gf2::in_span(&self.rows, &permute(&p.to_bits(), &order))
    }

    /// Generators with no support on input ports.
    pub fn stabilizers(&self) -> Vec<PauliString> {
        let cut = 2 * self.num_inputs();
        let order = column_order(&self.signature);
        self.rows
            .iter()
            .filter(|r| r.first_one().is_some_and(|p| p >= cut))
            .map(|r| unpermute(r, &order))
            .collect()
    }

    /// For each input generator (X then Z per input port), the canonical
    /// operator it maps to, or `None` if no surface carries it.
    pub fn transitions(&self) -> Vec<(PauliString, Option<PauliString>)> {
        let n = self.num_ports();
        let order = column_order(&self.signature);
        let inputs: Vec<usize> = (0..n)
            .filter(|&i| self.signature[i].role == SignatureRole::Input)
            .collect();
        let mut out = Vec::new();
        for (slot, &port) in inputs.iter().enumerate() {
            for (letter_slot, letter) in [(0, crate::pauli::Letter::X), (1, crate::pauli::Letter::Z)] {
                let input = PauliString::single(n, port, letter);
                let col = 2 * slot + letter_slot;
                let found = self.rows.iter().find(|r| {
                    r.first_one() == Some(col) && (0..2 * inputs.len()).all(|c| c == col || !r.get(c))
                });
                let image = found.map(|r| {
                    let mut full = unpermute(r, &order);
                    for &q in &inputs {
                        full.set(q, crate::pauli::Letter::I);
                    }
                    full
                });
                out.push((input, image));
            }
        }
        out
    }

    /// First input generator without an image, if any.
    pub fn undetermined_input(&self) -> Option<String> {
        self.transitions().into_iter().find_map(|(input, image)| {
            image.is_none().then(|| self.describe(&input))
        })
    }

    /// The same map with primal and dual exchanged: port kinds flip and X
    /// and Z swap on every port.
    pub fn kind_swapped(&self) -> LogicalMap {
        let signature: Vec<PortSignature> = self
            .signature
            .iter()
            .map(|p| PortSignature {
                kind: p.kind.opposite(),
                ..p.clone()
            })
            .collect();
        let gens: Vec<PauliString> = self
            .generators()
            .into_iter()
            .map(|g| PauliString {
                x: g.z.clone(),
                z: g.x.clone(),
                negative: false,
            })
            .collect();
        LogicalMap::from_generators(signature, &gens)
    }

    /// Operator written with port labels, e.g. `X[out] Z[R]`.
    pub fn describe(&self, p: &PauliString) -> String {
        let mut parts = Vec::new();
        for q in 0..p.len() {
            let l = p.get(q);
            if l != crate::pauli::Letter::I {
                parts.push(format!("{}[{}]", l.symbol(), self.signature[q].label));
            }
        }
        if parts.is_empty() {
            "I".to_string()
        } else {
            parts.join(" ")
        }
    }

    /// Human-readable list of generators present in one map but not the other.
    pub fn diff(&self, other: &LogicalMap) -> String {
        let mut lines = Vec::new();
        if !same_ports(&self.signature, &other.signature) {
            lines.push("port signatures differ".to_string());
        }
        for g in self.generators() {
            if same_ports(&self.signature, &other.signature) && !other.contains(&g) {
                lines.push(format!("- {}", self.describe(&g)));
            }
        }
        for g in other.generators() {
            if same_ports(&self.signature, &other.signature) && !self.contains(&g) {
                lines.push(format!("+ {}", other.describe(&g)));
            }
        }
        lines.join("\n")
    }

    pub fn to_doc(&self) -> LogicalMapDoc {
        LogicalMapDoc {
            ports: self.signature.clone(),
            transitions: self
                .transitions()
                .into_iter()
                .map(|(i, o)| TransitionDoc {
                    input: i.letters(),
                    output: o.map(|o| o.letters()),
                })
                .collect(),
            stabilizers: self.stabilizers().iter().map(|s| s.letters()).collect(),
        }
    }
}

impl fmt::Display for LogicalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.signature.iter().map(|p| p.label.as_str()).collect();
        writeln!(f, "ports: {}", labels.join(" "))?;
        for (input, image) in self.transitions() {
            match image {
                Some(img) => writeln!(f, "  {} -> {}", self.describe(&input), self.describe(&img))?,
                None => writeln!(f, "  {} -> (none)", self.describe(&input))?,
            }
        }
        for s in self.stabilizers() {
            writeln!(f, "  stabilizer {}", self.describe(&s))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalMapDoc {
    pub ports: Vec<PortSignature>,
    pub transitions: Vec<TransitionDoc>,
    pub stabilizers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub input: String,
    pub output: Option<String>,
}

/// Column permutation: position k of the permuted vector holds original
/// bit `order[k]` of the `[x | z]` layout. Input ports come first, X before Z.
fn column_order(sig: &[PortSignature]) -> Vec<usize> {
    let n = sig.len();
    let mut order = Vec::with_capacity(2 * n);
    for (q, p) in sig.iter().enumerate() {
        if p.role == SignatureRole::Input {
            order.push(q);
            order.push(n + q);
        }
    }
    for (q, p) in sig.iter().enumerate() {
        if p.role != SignatureRole::Input {
            order.push(q);
            order.push(n + q);
        }
    }
    order
}

fn permute(v: &BitVec, order: &[usize]) -> BitVec {
    BitVec::from_bits(v.len(), order.iter().enumerate().filter(|(_, &o)| v.get(o)).map(|(k, _)| k))
}

fn unpermute(v: &BitVec, order: &[usize]) -> PauliString {
    let bits = BitVec::from_bits(v.len(), order.iter().enumerate().filter(|(k, _)| v.get(*k)).map(|(_, &o)| o));
    PauliString::from_bits(&bits)
}

/// Signature helper for tests and circuits: all ports of one kind.
pub fn signature(labels: &[(&str, Kind, SignatureRole)]) -> Vec<PortSignature> {
    labels
        .iter()
        .map(|(l, k, r)| PortSignature {
            label: l.to_string(),
            kind: *k,
            role: *r,
        })
        .collect()
}
