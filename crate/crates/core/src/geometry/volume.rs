use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{validate, Geometry, Kind, Voxel};
use crate::error::{Error, Result};

/// Number of logical cells claimed by the structure.
///
/// A cell is claimed when it holds a primal voxel (at its corner) or a dual
/// voxel (at its centre). A free cell is also claimed as clearance when it
/// sits between two same-kind voxels one cell apart on either side, as the
/// gap inside a defect pair does. Other empty cells are never counted, so
/// hollowing a structure out reduces its volume.
pub fn volume(g: &Geometry) -> Result<u64> {
    let report = validate(g);
    if !report.is_empty() {
        return Err(Error::Invalid(report));
    }
    Ok(claimed_cells(g).len() as u64)
}

pub(crate) fn claimed_cells(g: &Geometry) -> BTreeSet<Voxel> {
    let mut cells = BTreeSet::new();
    for kind in [Kind::Primal, Kind::Dual] {
        let occupied: BTreeSet<Voxel> = g
            .defects
            .iter()
            .filter(|d| d.kind == kind)
            .flat_map(|d| d.voxels.iter().copied())
            .collect();
        for &v in &occupied {
            for axis in 0..3 {
                let (mut mid, mut far) = (v, v);
                mid[axis] += 1;
                far[axis] += 2;
                if occupied.contains(&far) && !occupied.contains(&mid) {
                    cells.insert(mid);
                }
            }
        }
        cells.extend(occupied);
    }
    cells
}

/// Number of voxel-holding cells, without clearance.
pub fn occupied_cells(g: &Geometry) -> u64 {
    g.defects
        .iter()
        .flat_map(|d| d.voxels.iter().copied())
        .collect::<BTreeSet<_>>()
        .len() as u64
}

/// Product of the occupied extents; a diagnostic upper bound on `volume`.
pub fn bounding_box_volume(g: &Geometry) -> u64 {
    g.occupied_extent().map_or(0, |r| r.cell_count())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalEstimate {
    pub distance: u32,
    /// Physical side length of one logical cell, in units of d (5/4).
    pub cell_pitch_d: f64,
    /// Data-plus-syndrome qubits along each spatial axis (y, z).
    pub qubits_per_axis: [f64; 2],
    pub footprint_qubits: f64,
    /// Rounds of error detection spanned by the time (x) extent.
    pub duration_rounds: f64,
    pub min_errors_to_fail: u32,
}

pub fn physical_scale(g: &Geometry, d: u32) -> Result<PhysicalEstimate> {
    if d < 3 {
        return Err(Error::InvalidDistance(d));
    }
    let extent = g
        .occupied_extent()
        .map_or([0, 0, 0], |r| r.extent());
    let pitch = 1.25 * d as f64;
    // Two qubits per unit of d spatially, one round per unit of d in time.
    let qy = extent[1] as f64 * pitch * 2.0;
    let qz = extent[2] as f64 * pitch * 2.0;
    Ok(PhysicalEstimate {
        distance: d,
        cell_pitch_d: 1.25,
        qubits_per_axis: [qy, qz],
        footprint_qubits: qy * qz,
        duration_rounds: extent[0] as f64 * pitch,
        min_errors_to_fail: d.div_ceil(2),
    })
}
