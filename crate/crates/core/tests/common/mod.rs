//! Oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

pub mod bridge;

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::Rng;

use braidwork::geometry::{self, Geometry};
use braidwork::pauli::{Letter, PauliString};
use braidwork::tableau::{CliffordCircuit, Gate};
use braidwork::verify::{Grid, Problem};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load(name: &str) -> Geometry {
    geometry::load(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Qubit order of the stabilizer table for the Y encoder.
pub const TABLE_QUBITS: [&str; 8] = ["out", "R", "O", "Y", "G", "B", "I", "V"];

/// The eight stabilizer rows transcribed from the published table.
pub const TABLE_ROWS: [&str; 8] = [
    "X..X.XX.",
    ".X.X.X.X",
    "..XX..XX",
    "ZZZZ....",
    "....XXXX",
    "..ZZZZ..",
    ".Z.ZZ.Z.",
    ".ZZ.Z..Z",
];

pub fn table_rows() -> Vec<PauliString> {
    TABLE_ROWS.iter().map(|r| PauliString::parse(r).unwrap()).collect()
}

// ---------------------------------------------------------------------------
// State-vector simulation of init/CNOT circuits.

/// Amplitudes over computational basis states; qubit `q` is bit `q`.
pub struct StateVector {
    pub n: usize,
    pub amp: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(n: usize) -> Self {
        let mut amp = vec![Complex64::new(0.0, 0.0); 1 << n];
        amp[0] = Complex64::new(1.0, 0.0);
        StateVector { n, amp }
    }

    pub fn hadamard(&mut self, q: usize) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amp.len() {
            if i >> q & 1 == 0 {
                let j = i | 1 << q;
                let (a, b) = (self.amp[i], self.amp[j]);
                self.amp[i] = (a + b) * s;
                self.amp[j] = (a - b) * s;
            }
        }
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        for i in 0..self.amp.len() {
            if i >> c & 1 == 1 && i >> t & 1 == 0 {
                self.amp.swap(i, i | 1 << t);
            }
        }
    }

    /// `P|ψ⟩` for a signed Pauli string with Y = iXZ.
    pub fn apply(&self, p: &PauliString) -> Vec<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amp.len()];
        for (b, a) in self.amp.iter().enumerate() {
            let mut coef = if p.negative { -*a } else { *a };
            let mut target = b;
            for q in 0..self.n {
                let bit = b >> q & 1;
                match p.get(q) {
                    Letter::I => {}
                    Letter::X => target ^= 1 << q,
                    Letter::Z => {
                        if bit == 1 {
                            coef = -coef;
                        }
                    }
                    Letter::Y => {
                        target ^= 1 << q;
                        coef *= if bit == 0 { i } else { -i };
                    }
                }
            }
            out[target] += coef;
        }
        out
    }

    pub fn stabilized_by(&self, p: &PauliString) -> bool {
        self.apply(p)
            .iter()
            .zip(&self.amp)
            .all(|(a, b)| (a - b).norm() < 1e-9)
    }
}

/// Run a circuit whose qubits are initialized before use. Qubits start in
/// |0⟩; `init_plus` applies a Hadamard to a fresh qubit.
pub fn simulate(c: &CliffordCircuit) -> StateVector {
    let mut s = StateVector::zeros(c.qubits.len());
    for g in &c.gates {
        match g {
            Gate::InitZero { .. } => {}
            Gate::InitPlus { qubit } => s.hadamard(c.index(qubit).unwrap()),
            Gate::Cnot { control, target } => s.cnot(c.index(control).unwrap(), c.index(target).unwrap()),
            other => panic!("not simulated: {other:?}"),
        }
    }
    s
}

/// Random circuit over up to `max_qubits` qubits and `max_gates` gates.
/// Each qubit is initialized once, before it is first used.
pub fn random_circuit(rng: &mut impl Rng, max_qubits: usize, max_gates: usize) -> CliffordCircuit {
    let n = rng.gen_range(1..=max_qubits);
    let labels: Vec<String> = (0..n).map(|q| format!("q{q}")).collect();
    let mut c = CliffordCircuit::new(labels.clone());
    let mut live = vec![false; n];
    let gates = rng.gen_range(0..=max_gates);
    for _ in 0..gates {
        let dead: Vec<usize> = (0..n).filter(|&q| !live[q]).collect();
        let alive: Vec<usize> = (0..n).filter(|&q| live[q]).collect();
        let init = alive.len() < 2 || (!dead.is_empty() && rng.gen_bool(0.3));
        if init {
            let Some(&q) = dead.get(rng.gen_range(0..dead.len().max(1))) else { break };
            live[q] = true;
            if rng.gen_bool(0.5) {
                c.init_zero(&labels[q]);
            } else {
                c.init_plus(&labels[q]);
            }
        } else {
            let a = alive[rng.gen_range(0..alive.len())];
            let mut b = alive[rng.gen_range(0..alive.len())];
            while b == a {
                b = alive[rng.gen_range(0..alive.len())];
            }
            c.cnot(&labels[a], &labels[b]);
        }
    }
    c
}

// ---------------------------------------------------------------------------
// Exhaustive 2-chain enumeration.

/// A random relative-boundary problem on a small grid: `allowed` lists the
/// faces a chain may use, `slack` the edges whose boundary is ignored.
pub struct SmallComplex {
    pub grid: Grid,
    pub allowed: Vec<usize>,
    pub slack: Vec<bool>,
}

impl SmallComplex {
    pub fn random(rng: &mut impl Rng) -> Self {
        let shapes: [[usize; 3]; 3] = [[2, 2, 1], [3, 1, 1], [2, 1, 1]];
        let grid = Grid::new(shapes[rng.gen_range(0..shapes.len())]);
        let keep = rng.gen_range(0.4..=1.0);
        let allowed: Vec<usize> = (0..grid.num_faces()).filter(|_| rng.gen_bool(keep)).collect();
        assert!(allowed.len() <= 20);
        let slack_p = rng.gen_range(0.0..0.4);
        let slack = (0..grid.num_edges()).map(|_| rng.gen_bool(slack_p)).collect();
        SmallComplex { grid, allowed, slack }
    }

    /// A cube may be used by the solver only if all its faces are allowed.
    pub fn problem(&self) -> Problem<'_> {
        let mut allowed_face = vec![false; self.grid.num_faces()];
        for &f in &self.allowed {
            allowed_face[f] = true;
        }
        let usable_cube = (0..self.grid.num_cubes())
            .map(|c| self.grid.cube_faces(c).iter().all(|&f| allowed_face[f]))
            .collect();
        Problem {
            grid: &self.grid,
            allowed_face,
            usable_cube,
            slack_edge: self.slack.clone(),
        }
    }

    fn face_mask(&self, f: usize) -> u64 {
        self.grid
            .face_edges(f)
            .iter()
            .filter(|&&e| !self.slack[e])
            .fold(0, |m, &e| m ^ 1 << e)
    }

    /// Every relative boundary reachable from the allowed faces, as edge
    /// bitmasks, enumerated in Gray-code order.
    pub fn reachable(&self) -> HashSet<u64> {
        assert!(self.grid.num_edges() <= 64);
        let masks: Vec<u64> = self.allowed.iter().map(|&f| self.face_mask(f)).collect();
        let mut seen = HashSet::new();
        let mut cur = 0u64;
        seen.insert(cur);
        for i in 1u32..1 << masks.len() {
            cur ^= masks[i.trailing_zeros() as usize];
            seen.insert(cur);
        }
        seen
    }

    /// Target chains: some are boundaries of random face sets, some are
    /// random edge sets.
    pub fn targets(&self, rng: &mut impl Rng, count: usize) -> Vec<Vec<usize>> {
        (0..count)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    let faces: Vec<usize> = (0..self.grid.num_faces()).filter(|_| rng.gen_bool(0.3)).collect();
                    let mut edges = Vec::new();
                    for f in faces {
                        edges.extend(self.grid.face_edges(f));
                    }
                    edges
                } else {
                    (0..self.grid.num_edges()).filter(|_| rng.gen_bool(0.15)).collect()
                }
            })
            .collect()
    }

    /// Non-slack support of a chain given as a multiset of edges.
    pub fn reduce(&self, edges: &[usize]) -> u64 {
        edges
            .iter()
            .filter(|&&e| !self.slack[e])
            .fold(0, |m, &e| m ^ 1 << e)
    }
}

/// Compare the solver with enumeration on one complex; returns a
/// description of the first disagreement.
pub fn solver_agrees(cx: &SmallComplex, targets: &[Vec<usize>]) -> Result<(), String> {
    let reachable = cx.reachable();
    let problem = cx.problem();
    let sol = problem.solve(targets);
    for combo in 0u64..1 << targets.len() {
        let mut sum = Vec::new();
        for (i, t) in targets.iter().enumerate() {
            if combo >> i & 1 == 1 {
                sum.extend_from_slice(t);
            }
        }
        let want = reachable.contains(&cx.reduce(&sum));
        let got = sol.realizable(combo);
        if want != got {
            return Err(format!("combo {combo:b}: enumeration {want}, solver {got}"));
        }
        if got && !problem.check_witness(&sol.witness(combo), &sum) {
            return Err(format!("combo {combo:b}: witness does not realize the target"));
        }
    }
    Ok(())
}
