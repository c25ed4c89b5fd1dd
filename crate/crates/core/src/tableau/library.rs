//! Built-in circuits.

use super::{CliffordCircuit, Gate};

/// Qubit order of the 7→1 |Y⟩ distillation encoder.
pub const Y_QUBITS: [&str; 8] = ["out", "R", "O", "Y", "G", "B", "I", "V"];

/// Steane-code encoder that distills |Y⟩: four |+⟩ controls fan out to four
/// |0⟩ targets with 12 CNOTs; the seven non-output qubits then receive an
/// S injection and an X measurement.
pub fn y_distillation() -> CliffordCircuit {
    let mut c = CliffordCircuit::new(Y_QUBITS);
    for q in ["out", "R", "O", "G"] {
        c.init_plus(q);
    }
    for q in ["Y", "B", "I", "V"] {
        c.init_zero(q);
    }
    let fan: [(&str, [&str; 3]); 4] = [
        ("out", ["Y", "B", "I"]),
        ("R", ["Y", "B", "V"]),
        ("O", ["Y", "I", "V"]),
        ("G", ["B", "I", "V"]),
    ];
    for (ctl, targets) in fan {
        for t in targets {
            c.cnot(ctl, t);
        }
    }
    finish(&mut c, &Y_QUBITS[1..], false);
    c
}

/// Labels of the 15→1 |A⟩ encoder: `out` then `q1..q15`, where `qv` is
/// indexed by the 4-bit integer v.
pub fn a_qubits() -> Vec<String> {
    std::iter::once("out".to_string())
        .chain((1..=15).map(|v| format!("q{v}")))
        .collect()
}

/// Encoder for the 15-qubit Reed-Muller code entangled with `out`.
///
/// The weight-one qubits `q1, q2, q4, q8` and `out` start in |+⟩; `q(2^i)`
/// targets every other qubit with bit i set, and `out` targets the
/// even-weight qubits. 35 CNOTs in all.
pub fn a_distillation() -> CliffordCircuit {
    let labels = a_qubits();
    let mut c = CliffordCircuit::new(labels.clone());
    let controls = [1u32, 2, 4, 8];
    c.init_plus("out");
    for v in 1..=15u32 {
        let q = format!("q{v}");
        if controls.contains(&v) {
            c.init_plus(&q);
        } else {
            c.init_zero(&q);
        }
    }
    for v in (1..=15u32).filter(|v| v.count_ones() % 2 == 0) {
        c.cnot("out", &format!("q{v}"));
    }
    for e in controls {
        for v in (1..=15u32).filter(|&v| v & e != 0 && v != e) {
            c.cnot(&format!("q{e}"), &format!("q{v}"));
        }
    }
    let rest: Vec<&str> = labels[1..].iter().map(String::as_str).collect();
    finish(&mut c, &rest, true);
    c
}

fn finish(c: &mut CliffordCircuit, qubits: &[&str], t_gate: bool) {
    for q in qubits {
        c.push(if t_gate {
            Gate::TInjection { qubit: q.to_string() }
        } else {
            Gate::SInjection { qubit: q.to_string() }
        });
    }
    for q in qubits {
        c.push(Gate::MeasureX { qubit: q.to_string() });
    }
}

/// One CNOT between open lines `c` and `t`.
pub fn single_cnot() -> CliffordCircuit {
    let mut c = CliffordCircuit::new(["c", "t"]);
    c.cnot("c", "t");
    c
}

/// A line with no gates.
pub fn identity_wire() -> CliffordCircuit {
    CliffordCircuit::new(["q"])
}
