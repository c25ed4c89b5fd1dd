//! Index arithmetic for a regular cubical grid of `n[0] × n[1] × n[2]`
//! unit cubes together with all of its faces, edges and vertices.
//!
//! A face is named by its normal axis and its lowest vertex; an edge by its
//! direction and its start vertex.

pub type Pos = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub n: Pos,
    face_offset: [usize; 4],
    edge_offset: [usize; 4],
}

fn others(a: usize) -> (usize, usize) {
    match a {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn unit(a: usize) -> Pos {
    let mut p = [0; 3];
    p[a] = 1;
    p
}

fn plus(p: Pos, q: Pos) -> Pos {
    [p[0] + q[0], p[1] + q[1], p[2] + q[2]]
}

fn lin(p: Pos, dims: Pos) -> usize {
    p[0] + dims[0] * (p[1] + dims[1] * p[2])
}

fn unlin(mut i: usize, dims: Pos) -> Pos {
    let x = i % dims[0];
    i /= dims[0];
    let y = i % dims[1];
    [x, y, i / dims[1]]
}

impl Grid {
    pub fn new(n: Pos) -> Self {
        let mut face_offset = [0; 4];
        let mut edge_offset = [0; 4];
        for a in 0..3 {
            let fd = Self::face_dims_of(n, a);
            let ed = Self::edge_dims_of(n, a);
            face_offset[a + 1] = face_offset[a] + fd.iter().product::<usize>();
            edge_offset[a + 1] = edge_offset[a] + ed.iter().product::<usize>();
        }
        Grid {
            n,
            face_offset,
            edge_offset,
        }
    }

    fn face_dims_of(n: Pos, a: usize) -> Pos {
        let mut d = n;
        d[a] += 1;
        d
    }

    fn edge_dims_of(n: Pos, a: usize) -> Pos {
        let mut d = [n[0] + 1, n[1] + 1, n[2] + 1];
        d[a] -= 1;
        d
    }

    pub fn num_cubes(&self) -> usize {
        self.n.iter().product()
    }

    pub fn num_faces(&self) -> usize {
        self.face_offset[3]
    }

    pub fn num_edges(&self) -> usize {
        self.edge_offset[3]
    }

    pub fn num_vertices(&self) -> usize {
        (self.n[0] + 1) * (self.n[1] + 1) * (self.n[2] + 1)
    }

    pub fn num_cells(&self) -> usize {
        self.num_cubes() + self.num_faces() + self.num_edges() + self.num_vertices()
    }

    pub fn cube(&self, p: Pos) -> usize {
        lin(p, self.n)
    }

    pub fn cube_pos(&self, c: usize) -> Pos {
        unlin(c, self.n)
    }

    pub fn cube_at(&self, p: [i64; 3]) -> Option<usize> {
        if (0..3).all(|a| p[a] >= 0 && (p[a] as usize) < self.n[a]) {
            Some(self.cube([p[0] as usize, p[1] as usize, p[2] as usize]))
        } else {
            None
        }
    }

    pub fn face(&self, a: usize, p: Pos) -> usize {
        self.face_offset[a] + lin(p, Self::face_dims_of(self.n, a))
    }

    pub fn face_pos(&self, f: usize) -> (usize, Pos) {
        let a = (0..3).find(|&a| f < self.face_offset[a + 1]).expect("face index");
        (a, unlin(f - self.face_offset[a], Self::face_dims_of(self.n, a)))
    }

    pub fn edge(&self, a: usize, p: Pos) -> usize {
        self.edge_offset[a] + lin(p, Self::edge_dims_of(self.n, a))
    }

    pub fn edge_pos(&self, e: usize) -> (usize, Pos) {
        let a = (0..3).find(|&a| e < self.edge_offset[a + 1]).expect("edge index");
        (a, unlin(e - self.edge_offset[a], Self::edge_dims_of(self.n, a)))
    }

    pub fn vertex(&self, p: Pos) -> usize {
        lin(p, [self.n[0] + 1, self.n[1] + 1, self.n[2] + 1])
    }

    pub fn face_edges(&self, f: usize) -> [usize; 4] {
        let (a, p) = self.face_pos(f);
        let (b, c) = others(a);
        [
            self.edge(b, p),
            self.edge(b, plus(p, unit(c))),
            self.edge(c, p),
            self.edge(c, plus(p, unit(b))),
        ]
    }

    pub fn cube_faces(&self, cube: usize) -> [usize; 6] {
        let p = self.cube_pos(cube);
        [
            self.face(0, p),
            self.face(0, plus(p, unit(0))),
            self.face(1, p),
            self.face(1, plus(p, unit(1))),
            self.face(2, p),
            self.face(2, plus(p, unit(2))),
        ]
    }

    /// The (up to two) cubes on either side of a face.
    pub fn face_cubes(&self, f: usize) -> [Option<usize>; 2] {
        let (a, p) = self.face_pos(f);
        let below = if p[a] > 0 {
            let mut q = p;
            q[a] -= 1;
            Some(self.cube(q))
        } else {
            None
        };
        let above = if p[a] < self.n[a] {
            Some(self.cube(p))
        } else {
            None
        };
        [below, above]
    }

    /// Faces containing an edge (2 to 4 of them).
    pub fn edge_faces(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let (a, p) = self.edge_pos(e);
        let (b, c) = others(a);
        let mut out = [usize::MAX; 4];
        // Faces with normal c span directions a and b; normal b span a and c.
        if p[b] < self.n[b] {
            out[0] = self.face(c, p);
        }
        if p[b] > 0 && p[b] - 1 < self.n[b] {
            let mut q = p;
            q[b] -= 1;
            out[1] = self.face(c, q);
        }
        if p[c] < self.n[c] {
            out[2] = self.face(b, p);
        }
        if p[c] > 0 {
            let mut q = p;
            q[c] -= 1;
            out[3] = self.face(b, q);
        }
        out.into_iter().filter(|&f| f != usize::MAX)
    }

    /// Cubes touching an edge (1 to 4 of them).
    pub fn edge_cubes(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let (a, p) = self.edge_pos(e);
        let (b, c) = others(a);
        let mut out = [usize::MAX; 4];
        let mut k = 0;
        for db in [0usize, 1] {
            for dc in [0usize, 1] {
                if p[b] >= db && p[c] >= dc && p[b] - db < self.n[b] && p[c] - dc < self.n[c] {
                    let mut q = p;
                    q[b] -= db;
                    q[c] -= dc;
                    out[k] = self.cube(q);
                }
                k += 1;
            }
        }
        out.into_iter().filter(|&c| c != usize::MAX)
    }

    pub fn edge_vertices(&self, e: usize) -> [usize; 2] {
        let (a, p) = self.edge_pos(e);
        [self.vertex(p), self.vertex(plus(p, unit(a)))]
    }
}
