//! Relative 2-chain solver over GF(2).
//!
//! Given allowed faces F, slack edges S and target 1-chains t_1..t_k, decide
//! for which coefficient vectors a the chain Σ a_i t_i equals ∂s outside S
//! for some 2-chain s supported on F. All k targets are solved at once by
//! carrying right-hand sides as k-bit masks.
//!
//! The system is shrunk before elimination:
//! 1. cube collapse: a face lying in exactly one remaining usable cube can be
//!    fixed to zero, since adding that cube's boundary toggles it freely;
//! 2. edge collapse: a constrained edge in exactly one remaining face forces
//!    that face's value;
//! 3. sheets: a constrained edge in exactly two faces fixes their sum, so
//!    faces are merged into sheets with a union-find carrying xor offsets.
//! Edges on three or more faces are then eliminated over sheet roots with
//! sparse Gaussian elimination, pivoting on the lowest column index.

use std::collections::HashMap;

use super::grid::Grid;

pub const MAX_TARGETS: usize = 64;

pub struct Problem<'g> {
    pub grid: &'g Grid,
    pub allowed_face: Vec<bool>,
    pub usable_cube: Vec<bool>,
    pub slack_edge: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub num_targets: usize,
    /// Each mask m imposes parity(m & a) == 0 on realizable combinations a.
    pub constraints: Vec<u64>,
    /// Particular solution: face f is in the witness for a iff parity(value & a).
    pub face_value: Vec<u64>,
}

impl Solution {
    pub fn realizable(&self, combo: u64) -> bool {
        self.constraints
            .iter()
            .all(|m| (m & combo).count_ones() % 2 == 0)
    }

    pub fn witness(&self, combo: u64) -> Vec<usize> {
        self.face_value
            .iter()
            .enumerate()
            .filter(|(_, &v)| (v & combo).count_ones() % 2 == 1)
            .map(|(f, _)| f)
            .collect()
    }
}

impl Problem<'_> {
    pub fn solve(&self, targets: &[Vec<usize>]) -> Solution {
        assert!(targets.len() <= MAX_TARGETS, "too many targets");
        let grid = self.grid;
        let nf = grid.num_faces();
        let ne = grid.num_edges();

        let mut active: Vec<bool> = self.allowed_face.clone();

        // Cube collapse.
        let mut cube_alive: Vec<bool> = self.usable_cube.clone();
        let mut cube_count = vec![0u8; nf];
        for c in (0..grid.num_cubes()).filter(|&c| cube_alive[c]) {
            for f in grid.cube_faces(c) {
                cube_count[f] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..nf)
            .filter(|&f| active[f] && cube_count[f] == 1)
            .collect();
        while let Some(f) = queue.pop() {
            if !active[f] || cube_count[f] != 1 {
                continue;
            }
            let Some(c) = grid
                .face_cubes(f)
                .into_iter()
                .flatten()
                .find(|&c| cube_alive[c])
            else {
                continue;
            };
            cube_alive[c] = false;
            active[f] = false;
            for g in grid.cube_faces(c) {
                cube_count[g] -= 1;
                if cube_count[g] == 1 && active[g] {
                    queue.push(g);
                }
            }
        }

        // Edge collapse.
        let mut rhs = vec![0u64; ne];
        for (i, t) in targets.iter().enumerate() {
            for &e in t {
                rhs[e] ^= 1 << i;
            }
        }
        let mut degree = vec![0u8; ne];
        for f in (0..nf).filter(|&f| active[f]) {
            for e in grid.face_edges(f) {
                degree[e] += 1;
            }
        }
        let mut face_value = vec![0u64; nf];
        let mut constraints = Vec::new();
        let mut edge_done = vec![false; ne];
        let mut queue: Vec<usize> = (0..ne)
            .filter(|&e| !self.slack_edge[e] && degree[e] <= 1)
            .collect();
        while let Some(e) = queue.pop() {
            if edge_done[e] {
                continue;
            }
            match degree[e] {
                0 => {
                    edge_done[e] = true;
                    if rhs[e] != 0 {
                        constraints.push(rhs[e]);
                    }
                }
                1 => {
                    edge_done[e] = true;
                    let f = grid
                        .edge_faces(e)
                        .find(|&f| active[f])
                        .expect("degree-one edge has an active face");
                    let v = rhs[e];
                    face_value[f] = v;
                    active[f] = false;
                    for e2 in grid.face_edges(f) {
                        if e2 == e {
                            continue;
                        }
                        degree[e2] -= 1;
                        rhs[e2] ^= v;
                        if !self.slack_edge[e2] && !edge_done[e2] && degree[e2] <= 1 {
                            queue.push(e2);
                        }
                    }
                }
                _ => {}
            }
        }

        // Sheets: an edge in exactly two faces ties their values together.
        let mut sheets = Sheets::new(nf);
        let mut branching = Vec::new();
        for e in 0..ne {
            if edge_done[e] || self.slack_edge[e] || degree[e] == 0 {
                continue;
            }
            let faces: Vec<usize> = grid.edge_faces(e).filter(|&f| active[f]).collect();
            if let [a, b] = faces[..] {
                if let Some(d) = sheets.join(a, b, rhs[e]) {
                    constraints.push(d);
                }
            } else {
                branching.push((e, faces));
            }
        }

        // Sparse elimination over sheet roots.
        let mut rows: Vec<(Vec<u32>, u64)> = Vec::new();
        let mut pivot_of: HashMap<u32, usize> = HashMap::new();
        for (e, faces) in branching {
            let mut r = rhs[e];
            let mut cols: Vec<u32> = Vec::with_capacity(faces.len());
            for f in faces {
                let (root, off) = sheets.find(f);
                r ^= off;
                cols.push(root as u32);
            }
            cols.sort_unstable();
            let mut k = 0;
            while k < cols.len() {
                if k + 1 < cols.len() && cols[k] == cols[k + 1] {
                    cols.drain(k..k + 2);
                } else {
                    k += 1;
                }
            }
            while let Some(&p) = cols.first() {
                match pivot_of.get(&p) {
                    Some(&idx) => {
                        let (prow, prhs) = &rows[idx];
                        cols = sym_diff(&cols, prow);
                        r ^= prhs;
                    }
                    None => break,
                }
            }
            match cols.first() {
                Some(&p) => {
                    pivot_of.insert(p, rows.len());
                    rows.push((cols, r));
                }
                None => {
                    if r != 0 {
                        constraints.push(r);
                    }
                }
            }
        }

        // Back substitution; free roots are zero.
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_unstable_by_key(|&i| std::cmp::Reverse(rows[i].0[0]));
        for i in order {
            let (cols, r) = &rows[i];
            let mut v = *r;
            for &c in &cols[1..] {
                v ^= face_value[c as usize];
            }
            face_value[cols[0] as usize] = v;
        }
        for f in (0..nf).filter(|&f| active[f]) {
            let (root, off) = sheets.find(f);
            if root != f {
                face_value[f] = face_value[root] ^ off;
            }
        }

        Solution {
            num_targets: targets.len(),
            constraints,
            face_value,
        }
    }

    /// Edges of ∂s that are not slack, for an explicit face set.
    pub fn residual_boundary(&self, faces: &[usize]) -> Vec<usize> {
        let mut parity: HashMap<usize, bool> = HashMap::new();
        for &f in faces {
            for e in self.grid.face_edges(f) {
                *parity.entry(e).or_default() ^= true;
            }
        }
        let mut out: Vec<usize> = parity
            .into_iter()
            .filter(|&(e, odd)| odd && !self.slack_edge[e])
            .map(|(e, _)| e)
            .collect();
        out.sort_unstable();
        out
    }

    /// Independent check that `faces` realizes `target` modulo slack.
    pub fn check_witness(&self, faces: &[usize], target: &[usize]) -> bool {
        if faces.iter().any(|&f| !self.allowed_face[f]) {
            return false;
        }
        let mut want: Vec<usize> = target
            .iter()
            .copied()
            .filter(|&e| !self.slack_edge[e])
            .collect();
        want.sort_unstable();
        let mut dedup: Vec<usize> = Vec::new();
        for e in want {
            if dedup.last() == Some(&e) {
                dedup.pop();
            } else {
                dedup.push(e);
            }
        }
        self.residual_boundary(faces) == dedup
    }
}

/// Union-find over faces where each face's value is its root's value
/// xor a fixed offset.
struct Sheets {
    parent: Vec<u32>,
    offset: Vec<u64>,
}

impl Sheets {
    fn new(n: usize) -> Self {
        Sheets {
            parent: (0..n as u32).collect(),
            offset: vec![0; n],
        }
    }

    fn find(&mut self, f: usize) -> (usize, u64) {
        let mut path = Vec::new();
        let mut u = f;
        while self.parent[u] as usize != u {
            path.push(u);
            u = self.parent[u] as usize;
        }
        // Rewrite the path bottom-up so each offset is relative to the root.
        let mut acc = 0;
        for &v in path.iter().rev() {
            acc ^= self.offset[v];
            self.offset[v] = acc;
            self.parent[v] = u as u32;
        }
        (u, if f == u { 0 } else { self.offset[f] })
    }

    /// Impose value(a) ^ value(b) = r. Returns the residual mask if a and b
    /// already share a root and disagree.
    fn join(&mut self, a: usize, b: usize, r: u64) -> Option<u64> {
        let (ra, oa) = self.find(a);
        let (rb, ob) = self.find(b);
        if ra == rb {
            let d = oa ^ ob ^ r;
            return (d != 0).then_some(d);
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop] = keep as u32;
        self.offset[drop] = oa ^ ob ^ r;
        None
    }
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
