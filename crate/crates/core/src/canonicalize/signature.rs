//! A coarse topological fingerprint of a geometry.
//!
//! Each sublattice is reduced to a graph on voxel centres. Port anchors are
//! joined through a point at infinity: primal rays close far above the
//! region and dual rays far below it, so the closures never meet. Mod-2
//! linking of a primal cycle A with a dual cycle B is the parity of B
//! crossing the half-infinite strips that A's horizontal edges sweep in +z.
//! Primal centres have even doubled coordinates and dual centres odd ones,
//! so no crossing is ever degenerate.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{Geometry, Kind, LatticeCoord, Voxel, NEIGHBOURS};
use crate::gf2::{rank, BitVec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub primal_solids: usize,
    pub dual_solids: usize,
    pub injections: usize,
    /// First Betti number of the primal graph with ports joined at infinity.
    pub primal_cycles: usize,
    pub dual_cycles: usize,
    /// GF(2) rank of the primal-by-dual linking matrix.
    pub linking_rank: usize,
}

type P = [i64; 3];

#[derive(Debug, Clone, Copy)]
struct Seg(P, P);

impl Seg {
    fn axis(&self) -> Option<usize> {
        (0..3).find(|&a| self.0[a] != self.1[a])
    }
}

/// Does `d` pass above the +z strip swept by `p`?
fn crosses(p: &Seg, d: &Seg) -> bool {
    let (Some(i), Some(j)) = (p.axis(), d.axis()) else {
        return false;
    };
    if i == 2 || j == 2 || i == j {
        return false;
    }
    let inside = |x: i64, a: i64, b: i64| a.min(b) < x && x < a.max(b);
    inside(d.0[i], p.0[i], p.1[i]) && inside(p.0[j], d.0[j], d.1[j]) && d.0[2] > p.0[2]
}

struct Graph {
    /// Node 0 is the point at infinity.
    nodes: usize,
    edges: Vec<(usize, usize, Vec<Seg>)>,
}

fn doubled(v: Voxel, kind: Kind) -> P {
    LatticeCoord::new(v, kind).doubled().map(i64::from)
}

fn build(g: &Geometry, kind: Kind) -> Result<Graph> {
    let mut index: HashMap<(usize, Voxel), usize> = HashMap::new();
    let mut nodes = 1;
    let mut edges = Vec::new();
    for (s, d) in g.defects.iter().enumerate().filter(|(_, d)| d.kind == kind) {
        for &v in &d.voxels {
            index.insert((s, v), nodes);
            nodes += 1;
        }
        for &v in &d.voxels {
            for step in &NEIGHBOURS[..] {
                let w = [v[0] + step[0], v[1] + step[1], v[2] + step[2]];
                if step.iter().sum::<i32>() > 0 && d.voxels.contains(&w) {
                    let (a, b) = (index[&(s, v)], index[&(s, w)]);
                    edges.push((a, b, vec![Seg(doubled(v, kind), doubled(w, kind))]));
                }
            }
        }
    }

    let far = far_distance(g);
    let (level, hub) = match kind {
        Kind::Primal => (far, 0),
        Kind::Dual => (-far - 1, 1),
    };
    for port in g.ports.iter().filter(|p| p.kind == kind) {
        let axis = port.face.side.axis();
        let sign = if port.face.side.is_max() { 1 } else { -1 };
        for anchor in port.face.anchors {
            let Some(node) = g
                .defects
                .iter()
                .enumerate()
                .find_map(|(s, d)| (d.kind == kind).then(|| index.get(&(s, anchor)).copied()).flatten())
            else {
                continue;
            };
            let start = doubled(anchor, kind);
            let mut out = start;
            out[axis] = sign * far + (start[axis] & 1);
            let mut up = out;
            up[2] = level;
            let mut across = up;
            across[0] = hub;
            let mut home = across;
            home[1] = hub;
            let path = vec![Seg(start, out), Seg(out, up), Seg(up, across), Seg(across, home)];
            edges.push((0, node, path));
        }
    }

    Ok(Graph { nodes, edges })
}

/// Even, and far outside every coordinate in play.
fn far_distance(g: &Geometry) -> i64 {
    let r = g.bounding_region;
    let m = (0..3)
        .map(|a| i64::from(r.min[a].abs().max(r.max[a].abs())))
        .max()
        .unwrap_or(0);
    4 * m + 16
}

/// Fundamental cycles as edge-index sets.
fn cycles(gr: &Graph) -> Vec<BitVec> {
    let mut adj = vec![Vec::new(); gr.nodes];
    for (k, &(a, b, _)) in gr.edges.iter().enumerate() {
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; gr.nodes];
    let mut seen = vec![false; gr.nodes];
    let mut tree = vec![false; gr.edges.len()];
    for root in 0..gr.nodes {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, k) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    tree[k] = true;
                    parent[w] = Some((u, k));
                    queue.push_back(w);
                }
            }
        }
    }
    let to_root = |mut u: usize, set: &mut BitVec| {
        while let Some((p, k)) = parent[u] {
            set.flip(k);
            u = p;
        }
    };
    let mut out = Vec::new();
    for (k, &(a, b, _)) in gr.edges.iter().enumerate() {
        if tree[k] {
            continue;
        }
        let mut set = BitVec::zeros(gr.edges.len());
        set.flip(k);
        to_root(a, &mut set);
        to_root(b, &mut set);
        out.push(set);
    }
    out
}

pub fn topological_signature(g: &Geometry) -> Result<Signature> {
    let primal = build(g, Kind::Primal)?;
    let dual = build(g, Kind::Dual)?;
    let pc = cycles(&primal);
    let dc = cycles(&dual);

    let mut rows = Vec::with_capacity(pc.len());
    for c in &pc {
        // Parity of each dual edge crossing the strips of this cycle.
        let mut hit = BitVec::zeros(dual.edges.len());
        for k in c.ones() {
            for ps in &primal.edges[k].2 {
                for (e, (_, _, segs)) in dual.edges.iter().enumerate() {
                    let n = segs.iter().filter(|ds| crosses(ps, ds)).count();
                    if n % 2 == 1 {
                        hit.flip(e);
                    }
                }
            }
        }
        let row = BitVec::from_bits(dc.len(), (0..dc.len()).filter(|&j| dc[j].and_parity(&hit)));
        rows.push(row);
    }

    let count = |k: Kind| g.defects.iter().filter(|d| d.kind == k).count();
    Ok(Signature {
        primal_solids: count(Kind::Primal),
        dual_solids: count(Kind::Dual),
        injections: g.injections.len(),
        primal_cycles: pc.len(),
        dual_cycles: dc.len(),
        linking_rank: rank(&rows),
    })
}
