//! Half-edge map of the closed Heegaard surface `S = Σ ∪ −Σ`.
//!
//! Half-edges come in pairs `h`, `h ^ 1`. Each vertex carries a cyclic
//! counterclockwise rotation of its outgoing half-edges. The face to the left
//! of `h` continues with `rprev[twist(h)]`.
//!
//! Besides the α and β curves the map keeps *phantom* edges (the reference
//! arcs of both halves and ∂Σ itself). Regions of `S ∖ (α ∪ β)` are unions
//! of faces glued across phantom edges.

use alloc::vec;
use alloc::vec::Vec;

/// Which copy of the fiber a face or point lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Half {
    Sigma,
    MinusSigma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Alpha(u32),
    Beta(u32),
    /// A reference arc of one half.
    Ref,
    /// A piece of ∂Σ; `gamma_beta` marks the arc from `w` to `z` avoiding β.
    Bdry { gamma_beta: bool },
}

impl EdgeKind {
    pub fn is_curve(self) -> bool {
        matches!(self, EdgeKind::Alpha(_) | EdgeKind::Beta(_))
    }

    pub fn family(self) -> Option<Family> {
        match self {
            EdgeKind::Alpha(_) => Some(Family::Alpha),
            EdgeKind::Beta(_) => Some(Family::Beta),
            _ => None,
        }
    }

    pub fn curve_index(self) -> Option<u32> {
        match self {
            EdgeKind::Alpha(i) | EdgeKind::Beta(i) => Some(i),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// A point of `α_alpha ∩ β_beta`.
    Intersection { alpha: u32, beta: u32, half: Half },
    /// A curve passing a reference arc.
    OnRef { family: Family, index: u32, half: Half },
    /// A curve passing ∂Σ.
    Foot { family: Family, index: u32 },
    /// Endpoint of a reference arc on ∂Σ.
    Corner,
    Z,
    W,
}

#[derive(Clone, Debug)]
pub struct Map {
    pub vkind: Vec<VertexKind>,
    pub origin: Vec<u32>,
    pub ekind: Vec<EdgeKind>,
    pub left_half: Vec<Half>,
    pub rnext: Vec<u32>,
    pub rprev: Vec<u32>,
    pub face: Vec<u32>,
    pub nfaces: usize,
}

pub const NONE: u32 = u32::MAX;

#[inline]
pub fn twist(h: u32) -> u32 {
    h ^ 1
}

impl Map {
    pub fn new() -> Map {
        Map {
            vkind: Vec::new(),
            origin: Vec::new(),
            ekind: Vec::new(),
            left_half: Vec::new(),
            rnext: Vec::new(),
            rprev: Vec::new(),
            face: Vec::new(),
            nfaces: 0,
        }
    }

    pub fn add_vertex(&mut self, k: VertexKind) -> u32 {
        self.vkind.push(k);
        (self.vkind.len() - 1) as u32
    }

    /// Adds an edge `u → v`; returns the half-edge leaving `u`.
    pub fn add_edge(&mut self, u: u32, v: u32, kind: EdgeKind, left: Half, right: Half) -> u32 {
        let h = self.origin.len() as u32;
        self.origin.push(u);
        self.origin.push(v);
        self.ekind.push(kind);
        self.left_half.push(left);
        self.left_half.push(right);
        self.rnext.push(NONE);
        self.rnext.push(NONE);
        self.rprev.push(NONE);
        self.rprev.push(NONE);
        h
    }

    pub fn kind(&self, h: u32) -> EdgeKind {
        self.ekind[(h >> 1) as usize]
    }

    pub fn dest(&self, h: u32) -> u32 {
        self.origin[twist(h) as usize]
    }

    pub fn half_edges(&self) -> usize {
        self.origin.len()
    }

    pub fn vertices(&self) -> usize {
        self.vkind.len()
    }

    /// Installs the counterclockwise rotation of one vertex.
    pub fn set_rotation(&mut self, ring: &[u32]) {
        let n = ring.len();
        for i in 0..n {
            let h = ring[i];
            self.rnext[h as usize] = ring[(i + 1) % n];
            self.rprev[h as usize] = ring[(i + n - 1) % n];
        }
    }

    /// Puts half-edge `new` in the rotation slot of `old`.
    pub fn replace_in_rotation(&mut self, old: u32, new: u32) {
        let p = self.rprev[old as usize];
        let n = self.rnext[old as usize];
        if p == old {
            self.rnext[new as usize] = new;
            self.rprev[new as usize] = new;
            return;
        }
        self.rnext[p as usize] = new;
        self.rprev[n as usize] = new;
        self.rnext[new as usize] = n;
        self.rprev[new as usize] = p;
    }

    pub fn face_next(&self, h: u32) -> u32 {
        self.rprev[twist(h) as usize]
    }

    /// Outgoing half-edges of `v` in counterclockwise order starting at `h0`.
    pub fn ring(&self, h0: u32) -> Vec<u32> {
        let mut out = vec![h0];
        let mut h = self.rnext[h0 as usize];
        while h != h0 {
            out.push(h);
            h = self.rnext[h as usize];
        }
        out
    }

    /// One outgoing half-edge per vertex.
    pub fn vertex_out(&self) -> Vec<u32> {
        let mut out = vec![NONE; self.vertices()];
        for h in 0..self.half_edges() as u32 {
            let o = self.origin[h as usize] as usize;
            if out[o] == NONE {
                out[o] = h;
            }
        }
        out
    }

    pub fn compute_faces(&mut self) {
        let n = self.half_edges();
        self.face = vec![NONE; n];
        let mut f = 0u32;
        for h0 in 0..n as u32 {
            if self.face[h0 as usize] != NONE {
                continue;
            }
            let mut h = h0;
            while self.face[h as usize] == NONE {
                self.face[h as usize] = f;
                h = self.face_next(h);
            }
            f += 1;
        }
        self.nfaces = f as usize;
    }

    /// Half-edges bounding face `f`, in order.
    pub fn face_cycle(&self, start: u32) -> Vec<u32> {
        let mut out = vec![start];
        let mut h = self.face_next(start);
        while h != start {
            out.push(h);
            h = self.face_next(h);
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices() as i64 - (self.half_edges() / 2) as i64 + self.nfaces as i64
    }

    /// Structural checks: rotations are permutations of the outgoing half-edges
    /// and every face sits in a single half.
    pub fn check(&self) -> Result<(), &'static str> {
        for h in 0..self.half_edges() {
            let n = self.rnext[h];
            if n == NONE || self.rprev[n as usize] != h as u32 {
                return Err("rotation is not a permutation");
            }
            if self.origin[n as usize] != self.origin[h] {
                return Err("rotation mixes vertices");
            }
        }
        let mut fh: Vec<Option<Half>> = vec![None; self.nfaces];
        for h in 0..self.half_edges() {
            let f = self.face[h] as usize;
            match fh[f] {
                None => fh[f] = Some(self.left_half[h]),
                Some(x) if x != self.left_half[h] => return Err("face spans both halves"),
                _ => {}
            }
        }
        Ok(())
    }

    pub fn face_half(&self) -> Vec<Half> {
        let mut fh = vec![Half::Sigma; self.nfaces];
        for h in 0..self.half_edges() {
            fh[self.face[h] as usize] = self.left_half[h];
        }
        fh
    }

    pub fn is_intersection(&self, v: u32) -> bool {
        matches!(self.vkind[v as usize], VertexKind::Intersection { .. })
    }

    pub fn find_vertex(&self, k: VertexKind) -> Option<u32> {
        self.vkind.iter().position(|&x| x == k).map(|i| i as u32)
    }
}

impl Default for Map {
    fn default() -> Self {
        Map::new()
    }
}

/// Regions of `S ∖ (α ∪ β)`: faces merged across phantom edges.
#[derive(Clone, Debug)]
pub struct Regions {
    pub of_face: Vec<u32>,
    pub count: usize,
    pub corners: Vec<u32>,
    pub euler: Vec<i32>,
    pub w: u32,
    pub z: u32,
}

fn find(p: &mut [u32], mut x: u32) -> u32 {
    while p[x as usize] != x {
        p[x as usize] = p[p[x as usize] as usize];
        x = p[x as usize];
    }
    x
}

impl Regions {
    pub fn compute(m: &Map) -> Regions {
        let mut p: Vec<u32> = (0..m.nfaces as u32).collect();
        for h in (0..m.half_edges() as u32).step_by(2) {
            if !m.kind(h).is_curve() {
                let a = find(&mut p, m.face[h as usize]);
                let b = find(&mut p, m.face[h as usize + 1]);
                if a != b {
                    p[a as usize] = b;
                }
            }
        }
        let mut id = vec![NONE; m.nfaces];
        let mut count = 0u32;
        let mut of_face = vec![0u32; m.nfaces];
        for f in 0..m.nfaces as u32 {
            let r = find(&mut p, f);
            if id[r as usize] == NONE {
                id[r as usize] = count;
                count += 1;
            }
            of_face[f as usize] = id[r as usize];
        }
        let n = count as usize;
        let mut corners = vec![0u32; n];
        let mut euler = vec![0i32; n];
        for f in 0..m.nfaces {
            euler[of_face[f] as usize] += 1;
        }
        for h in 0..m.half_edges() as u32 {
            let r = of_face[m.face[h as usize] as usize] as usize;
            if m.is_intersection(m.dest(h)) {
                corners[r] += 1;
            }
            if h % 2 == 0 && !m.kind(h).is_curve() {
                euler[r] -= 1;
            }
        }
        let out = m.vertex_out();
        let mut w = NONE;
        let mut z = NONE;
        for v in 0..m.vertices() {
            let h0 = out[v];
            let ring = m.ring(h0);
            if ring.iter().all(|&h| !m.kind(h).is_curve()) {
                let r = of_face[m.face[h0 as usize] as usize];
                euler[r as usize] += 1;
                match m.vkind[v] {
                    VertexKind::W => w = r,
                    VertexKind::Z => z = r,
                    _ => {}
                }
            }
        }
        Regions { of_face, count: n, corners, euler, w, z }
    }

    pub fn of_half_edge(&self, m: &Map, h: u32) -> u32 {
        self.of_face[m.face[h as usize] as usize]
    }

    pub fn is_disk(&self, r: u32) -> bool {
        self.euler[r as usize] == 1
    }

    /// `max(0, corners/2 - 2)` for disks; non-disk regions other than the
    /// `w` region count as badly as possible.
    pub fn badness(&self, r: u32) -> u32 {
        if r == self.w {
            return 0;
        }
        let c = self.corners[r as usize] / 2;
        c.saturating_sub(2)
    }

    /// Every region except the `w` region is a bigon or a square.
    pub fn is_nice(&self) -> bool {
        (0..self.count as u32).all(|r| {
            r == self.w
                || (self.is_disk(r) && matches!(self.corners[r as usize], 2 | 4))
        })
    }
}
