//! Random small geometries with two closed same-kind solids away from the
//! ports, and a path that can join them.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braidwork::geometry::{validate, DefectSolid, Geometry, Kind, Port, PortFace, Region, Role, Side, Voxel};
use braidwork::rewrite::{apply, Check, Move};
use braidwork::verify::verify;
use braidwork::Error;

pub struct Case {
    pub g: Geometry,
    pub solids: [String; 2],
    /// A third closed solid of the bridged kind that no path may enter.
    pub obstacle: Option<String>,
}

fn other(k: Kind) -> Kind {
    match k {
        Kind::Primal => Kind::Dual,
        Kind::Dual => Kind::Primal,
    }
}

fn wire(len: i32, kind: Kind) -> Geometry {
    let mut g = Geometry::new(Region { min: [0, 0, 0], max: [len, 5, 7] }, 3);
    for (id, y) in [("a", 1), ("b", 3)] {
        g.defects.push(DefectSolid::new(id, kind, (0..=len).map(|x| [x, y, 1])));
    }
    for (label, side, x, role) in [("in", Side::XMin, 0, Role::Input), ("out", Side::XMax, len, Role::Output)] {
        g.ports.push(Port {
            id: format!("port:{label}"),
            kind,
            role,
            face: PortFace { side, anchors: [[x, 1, 1], [x, 3, 1]] },
            label: label.into(),
        });
    }
    g
}

/// A box or a hollow ring with its low corner at `at`.
fn shape(rng: &mut impl Rng, at: Voxel) -> Vec<Voxel> {
    let mut out = Vec::new();
    if rng.gen_bool(0.5) {
        let d: [i32; 3] = [rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2)];
        for x in 0..d[0] {
            for y in 0..d[1] {
                for z in 0..d[2] {
                    out.push([at[0] + x, at[1] + y, at[2] + z]);
                }
            }
        }
    } else {
        let (u, v) = [(0, 1), (0, 2), (1, 2)][rng.gen_range(0..3)];
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) != (1, 1) {
                    let mut p = at;
                    p[u] += i;
                    p[v] += j;
                    out.push(p);
                }
            }
        }
    }
    out
}

pub fn gap(a: Voxel, b: Voxel) -> i32 {
    (0..3).map(|k| (a[k] - b[k]).abs()).max().unwrap()
}

fn clear_of(cells: &[Voxel], g: &Geometry) -> bool {
    let r = g.bounding_region;
    cells.iter().all(|c| (0..3).all(|k| c[k] >= r.min[k] && c[k] <= r.max[k]))
        && g.defects.iter().all(|d| d.voxels.iter().all(|&v| cells.iter().all(|&c| gap(c, v) >= 2)))
}

/// Place a closed solid somewhere above the wire with a one-cell gap to
/// everything else.
fn place(rng: &mut impl Rng, g: &mut Geometry, id: &str, kind: Kind) -> bool {
    let len = g.bounding_region.max[0];
    for _ in 0..50 {
        let at = [rng.gen_range(0..len - 1), rng.gen_range(0..4), rng.gen_range(3..5)];
        let cells = shape(rng, at);
        if clear_of(&cells, g) {
            g.defects.push(DefectSolid::new(id, kind, cells));
            return true;
        }
    }
    false
}

/// Axis-ordered Manhattan walk from `a` to `b`, excluding the endpoints.
pub fn walk(a: Voxel, b: Voxel, order: [usize; 3]) -> Vec<Voxel> {
    let mut cur = a;
    let mut out = Vec::new();
    for k in order {
        while cur[k] != b[k] {
            cur[k] += (b[k] - cur[k]).signum();
            if cur != b {
                out.push(cur);
            }
        }
    }
    out
}

/// A path joining the two solids that keeps a one-cell gap from every other
/// solid of any kind.
fn bridge_path(rng: &mut impl Rng, g: &Geometry, a: &str, b: &str) -> Option<Vec<Voxel>> {
    let va: Vec<Voxel> = g.defect(a)?.voxels.iter().copied().collect();
    let vb: Vec<Voxel> = g.defect(b)?.voxels.iter().copied().collect();
    let others: Vec<&DefectSolid> = g.defects.iter().filter(|d| d.id != a && d.id != b).collect();
    let inside: BTreeSet<Voxel> = va.iter().chain(&vb).copied().collect();
    let mut orders = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    orders.shuffle(rng);
    for _ in 0..20 {
        let (&p, &q) = (va.choose(rng)?, vb.choose(rng)?);
        for &o in &orders {
            let path: Vec<Voxel> = walk(p, q, o).into_iter().filter(|c| !inside.contains(c)).collect();
            let ok = !path.is_empty()
                && connected(&path)
                && others.iter().all(|d| d.voxels.iter().all(|&v| path.iter().all(|&c| gap(c, v) >= 2)));
            if ok {
                return Some(path);
            }
        }
    }
    None
}

/// The walk must leave the first solid once and enter the second once.
fn connected(path: &[Voxel]) -> bool {
    path.windows(2).all(|w| (0..3).map(|k| (w[0][k] - w[1][k]).abs()).sum::<i32>() == 1)
}

pub fn case(rng: &mut impl Rng) -> Option<(Case, Vec<Voxel>)> {
    let wire_kind = if rng.gen_bool(0.5) { Kind::Primal } else { Kind::Dual };
    let kind = if rng.gen_bool(0.5) { wire_kind } else { other(wire_kind) };
    let mut g = wire(rng.gen_range(7..=10), wire_kind);
    if !(place(rng, &mut g, "s1", kind) && place(rng, &mut g, "s2", kind)) {
        return None;
    }
    let obstacle = place(rng, &mut g, "s3", kind).then(|| "s3".to_string());
    if !validate(&g).is_empty() {
        return None;
    }
    let path = bridge_path(rng, &g, "s1", "s2")?;
    Some((Case { g, solids: ["s1".into(), "s2".into()], obstacle }, path))
}

/// Bridge `cases` random pairs and compare the logical maps before and
/// after.
pub fn preserved(seed: u64, cases: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < cases {
        attempts += 1;
        if attempts > 20 * cases {
            return Err(format!("generator starved after {done} cases"));
        }
        let Some((c, path)) = case(&mut rng) else { continue };
        let [a, b] = c.solids.clone();
        let m = Move::Bridge { a, b, path };
        let h = apply(&c.g, &m, Check::Structural).map_err(|e| format!("case {done}: {e}"))?;
        if !validate(&h).is_empty() || h.defects.len() + 1 != c.g.defects.len() {
            return Err(format!("case {done}: bridged geometry is malformed"));
        }
        let before = verify(&c.g).map_err(|e| format!("case {done}: {e}"))?;
        let after = verify(&h).map_err(|e| format!("case {done}: {e}"))?;
        if before != after {
            return Err(format!("case {done}: map changed by {m:?}\n{}", before.diff(&after)));
        }
        done += 1;
    }
    Ok(done)
}

/// Constructed violations per class: self-bridge, port-reaching target,
/// mismatched kinds, gapped path, stray end, path through a third solid.
pub fn violations(seed: u64, cases: usize) -> Result<[usize; 6], String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0usize; 6];
    let mut attempts = 0;
    let refused = |r: Result<Geometry, Error>, what: &str| match r {
        Err(Error::TheoremPrecondition(_)) => Ok(()),
        Err(e) => Err(format!("{what}: wrong error {e}")),
        Ok(_) => Err(format!("{what}: accepted")),
    };
    while counts.iter().sum::<usize>() < cases {
        attempts += 1;
        if attempts > 20 * cases {
            return Err(format!("generator starved at {counts:?}"));
        }
        let Some((c, path)) = case(&mut rng) else { continue };
        let g = &c.g;
        let kind = g.defect("s1").expect("placed").kind;
        let bridge = |a: &str, b: &str, path: Vec<Voxel>| Move::Bridge { a: a.into(), b: b.into(), path };

        refused(apply(g, &bridge("s1", "s1", path.clone()), Check::Structural), "self-bridge")?;
        counts[0] += 1;

        if kind == g.defect("a").expect("wire").kind {
            refused(apply(g, &bridge("s1", "a", vec![]), Check::Structural), "port strand")?;
            refused(apply(g, &bridge("b", "s2", path.clone()), Check::Structural), "port strand")?;
            counts[1] += 1;
        } else {
            refused(apply(g, &bridge("s1", "a", vec![]), Check::Structural), "mixed kinds")?;
            counts[2] += 1;
        }

        if path.len() >= 3 {
            let mut broken = path.clone();
            broken.remove(path.len() / 2);
            refused(apply(g, &bridge("s1", "s2", broken), Check::Structural), "gapped path")?;
            counts[3] += 1;
        }

        let far = [g.bounding_region.max[0], 5, 7];
        if !g.defect("s2").expect("placed").voxels.iter().any(|&v| gap(v, far) <= 1) {
            let mut stray = path.clone();
            stray.push(far);
            refused(apply(g, &bridge("s1", "s2", stray), Check::Structural), "stray end")?;
            counts[4] += 1;
        }

        if let Some(o) = &c.obstacle {
            let first = |id: &str| *g.defect(id).expect("placed").voxels.iter().next().expect("non-empty");
            let (p, cell, q) = (first("s1"), first(o), first("s2"));
            let mut through = vec![p];
            through.extend(walk(p, cell, [0, 1, 2]));
            through.push(cell);
            through.extend(walk(cell, q, [0, 1, 2]));
            through.push(q);
            match apply(g, &bridge("s1", "s2", through), Check::Structural) {
                Err(Error::TheoremPrecondition(msg)) if msg.contains("enters") => {}
                Err(e) => return Err(format!("path through `{o}`: wrong error {e}")),
                Ok(_) => return Err(format!("path through `{o}` accepted")),
            }
            counts[5] += 1;
        }
    }
    Ok(counts)
}
