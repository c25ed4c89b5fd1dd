//! Lowering of circuits to canonical defect geometries.
//!
//! Every qubit gets a lane: a pair of strands running along x (time), dual
//! for CNOT controls and primal otherwise. A run of CNOTs sharing a control
//! owns one time slot, in which the control's first strand climbs above the
//! other lanes and makes a single excursion that winds once around the
//! first strand of each target in turn before returning.
//! Inits and measurements in the lane's native basis join the pair with a
//! cap; an injected line is closed into a loop after its injection point.

mod signature;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use signature::{topological_signature, Signature};

use crate::error::{Error, Result};
use crate::geometry::{
    connected_components, DefectSolid, Geometry, InjectionPoint, Kind, Port, PortFace, Region,
    Role, Side, Voxel,
};
use crate::tableau::{port_plan, CliffordCircuit, Gate, LinePorts};

/// Lane and slot proportions, in logical cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub lane_pitch: i32,
    /// y offset of the second strand from the first.
    pub pair_gap: i32,
    /// z of both strands.
    pub strand_level: i32,
    /// z at which a control crosses over other lanes.
    pub transit_level: i32,
    /// Empty cells after each slot.
    pub slot_gap: i32,
    pub lead_in: i32,
    pub lead_out: i32,
    /// Cells between an injection point and the closing cap.
    pub injection_setback: i32,
}

impl Default for Template {
    fn default() -> Self {
        serde_json::from_str(include_str!("../../templates/canonical.json"))
            .expect("bundled template parses")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoweringPlan {
    pub template: Template,
    /// y of each qubit's first strand.
    pub lanes: Vec<i32>,
    pub slots: Vec<Slot>,
    pub length: i32,
}

/// Consecutive CNOTs with one control, braided in a single excursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub gates: Vec<usize>,
    pub control: usize,
    pub targets: Vec<usize>,
    pub x: i32,
}

/// Cells along x taken by one winding.
pub const TURN_LENGTH: i32 = 4;

impl Slot {
    pub fn end(&self) -> i32 {
        self.x + TURN_LENGTH * self.targets.len() as i32
    }
}

pub fn plan(c: &CliffordCircuit, template: Template) -> Result<LoweringPlan> {
    c.check()?;
    let t = &template;
    let lanes = (0..c.qubits.len() as i32).map(|i| 1 + i * t.lane_pitch).collect();
    let mut slots: Vec<Slot> = Vec::new();
    for (i, g) in c.gates.iter().enumerate() {
        let Gate::Cnot { control, target } = g else { continue };
        let (cq, tq) = (c.index(control)?, c.index(target)?);
        match slots.last_mut() {
            Some(s) if s.control == cq && s.gates.last() == Some(&(i - 1)) => {
                s.gates.push(i);
                s.targets.push(tq);
            }
            _ => slots.push(Slot { gates: vec![i], control: cq, targets: vec![tq], x: 0 }),
        }
    }
    let mut x = t.lead_in;
    for s in &mut slots {
        s.x = x;
        x = s.end() + 1 + t.slot_gap;
    }
    let length = x + t.injection_setback + t.lead_out;
    Ok(LoweringPlan {
        template,
        lanes,
        slots,
        length,
    })
}

pub fn lower(c: &CliffordCircuit) -> Result<Geometry> {
    lower_with(c, Template::default())
}

pub fn lower_with(c: &CliffordCircuit, template: Template) -> Result<Geometry> {
    let ports = port_plan(c)?;
    let p = plan(c, template)?;
    let t = &p.template;
    let z0 = t.strand_level;
    let zt = t.transit_level;
    let end = p.length;
    let n = c.qubits.len();

    let mut lane_voxels: Vec<BTreeSet<Voxel>> = vec![BTreeSet::new(); n];
    let mut starts = vec![0; n];
    let mut stops = vec![end; n];
    for lp in &ports {
        let q = lp.qubit;
        let (ya, yb) = (p.lanes[q], p.lanes[q] + t.pair_gap);
        if lp.input.is_none() {
            starts[q] = 1;
        }
        if lp.output.is_none() {
            stops[q] = end - 1;
        }
        for x in starts[q]..=stops[q] {
            lane_voxels[q].insert([x, ya, z0]);
            lane_voxels[q].insert([x, yb, z0]);
        }
        let first = first_gate(c, q);
        if lp.input.is_none() && first.is_some_and(|g| native_init(g, lp.kind)) {
            cap(&mut lane_voxels[q], starts[q], ya, yb, z0);
        }
        if lp.output.is_none() && closes_with_cap(c, q, lp) {
            cap(&mut lane_voxels[q], stops[q], ya, yb, z0);
        }
    }

    for slot in &p.slots {
        let yc = p.lanes[slot.control];
        let set = &mut lane_voxels[slot.control];
        for x in slot.x + 1..slot.end() {
            set.remove(&[x, yc, z0]);
        }
        // Climb out of the lane, hop from target to target over the other
        // lanes, and come back down at the far end.
        let mut stops = vec![(slot.x, yc)];
        for (k, &tq) in slot.targets.iter().enumerate() {
            let x0 = slot.x + TURN_LENGTH * k as i32;
            let y = p.lanes[tq];
            stops.push((x0, y - 1));
            stops.push((x0 + TURN_LENGTH, y - 1));
            // Quarter turns through the four cells around the target strand.
            for v in [
                [x0, y - 1, z0 - 1],
                [x0 + 1, y - 1, z0 - 1],
                [x0 + 1, y, z0 - 1],
                [x0 + 2, y, z0 - 1],
                [x0 + 2, y, z0],
                [x0 + 3, y, z0],
                [x0 + 3, y - 1, z0],
            ] {
                set.insert(v);
            }
        }
        stops.push((slot.end(), yc));
        for hop in stops.chunks(2) {
            let (x, y0, y1) = (hop[0].0, hop[0].1, hop[1].1);
            if y0 == y1 {
                // Two windings around one target meet at strand level.
                set.insert([x, y0, z0]);
                continue;
            }
            for (y, z) in [y0, y1].into_iter().flat_map(|y| (z0..=zt).map(move |z| (y, z))) {
                set.insert([x, y, z]);
            }
            for yy in y0.min(y1)..=y0.max(y1) {
                set.insert([x, yy, zt]);
            }
        }
    }

    let top = 1 + n as i32 * t.lane_pitch;
    let mut g = Geometry::new(
        Region {
            min: [0, 0, 0],
            max: [end, top, zt],
        },
        3,
    );
    for lp in &ports {
        let q = lp.qubit;
        let label = &c.qubits[q];
        let comps = connected_components(&lane_voxels[q]);
        let single = comps.len() == 1;
        for (k, comp) in comps.into_iter().enumerate() {
            let id = if single { label.clone() } else { format!("{label}.{k}") };
            g.defects
                .push(DefectSolid::new(id, lp.kind, comp).with_tag(format!("qubit:{label}")));
        }
    }
    let host_of = |g: &Geometry, v: Voxel, kind: Kind| -> String {
        g.defects
            .iter()
            .find(|d| d.kind == kind && d.voxels.contains(&v))
            .map(|d| d.id.clone())
            .expect("lane voxel has an owner")
    };
    for lp in &ports {
        let q = lp.qubit;
        let (ya, yb) = (p.lanes[q], p.lanes[q] + t.pair_gap);
        for (label, side, x, role) in [
            (&lp.input, Side::XMin, 0, Role::Input),
            (&lp.output, Side::XMax, end, Role::Output),
        ] {
            if let Some(label) = label {
                g.ports.push(Port {
                    id: format!("port:{label}"),
                    kind: lp.kind,
                    role,
                    face: PortFace {
                        side,
                        anchors: [[x, ya, z0], [x, yb, z0]],
                    },
                    label: label.clone(),
                });
            }
        }
    }
    let mut injected: Vec<&LinePorts> = ports.iter().filter(|l| l.injection.is_some()).collect();
    injected.sort_by_key(|l| l.injection.as_ref().map(|i| i.2));
    for lp in injected {
        let (label, state, _) = lp.injection.clone().expect("filtered");
        let q = lp.qubit;
        let v = [stops[q] - t.injection_setback, p.lanes[q] + t.pair_gap, z0];
        let host = host_of(&g, v, lp.kind);
        g.injections.push(InjectionPoint {
            id: format!("inj:{label}"),
            host,
            voxel: v,
            state,
            label,
        });
    }
    let report = crate::geometry::validate(&g);
    if !report.is_empty() {
        return Err(Error::Invalid(report));
    }
    Ok(g)
}

fn first_gate(c: &CliffordCircuit, q: usize) -> Option<&Gate> {
    let label = c.qubits[q].as_str();
    c.gates.iter().find(|g| g.qubits().contains(&label))
}

/// |0⟩ on primal and |+⟩ on dual lanes start as a joined pair.
fn native_init(g: &Gate, kind: Kind) -> bool {
    matches!(
        (g, kind),
        (Gate::InitZero { .. }, Kind::Primal) | (Gate::InitPlus { .. }, Kind::Dual)
    )
}

fn closes_with_cap(c: &CliffordCircuit, q: usize, lp: &LinePorts) -> bool {
    if lp.injection.is_some() {
        return true;
    }
    let label = c.qubits[q].as_str();
    c.gates.iter().any(|g| {
        g.qubits().contains(&label)
            && matches!(
                (g, lp.kind),
                (Gate::MeasureZ { .. }, Kind::Primal) | (Gate::MeasureX { .. }, Kind::Dual)
            )
    })
}

fn cap(set: &mut BTreeSet<Voxel>, x: i32, ya: i32, yb: i32, z: i32) {
    for y in ya..=yb {
        set.insert([x, y, z]);
    }
}
