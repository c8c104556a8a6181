//! The fiber surface Σ_g with one boundary circle.
//!
//! Σ is modelled as a one-vertex ribbon graph with `2g` ribbons. Cutting along
//! the co-cores of the ribbons (the *reference arcs*) leaves a polygon `P`
//! with `8g` sides, numbered counterclockwise. Even sides are boundary
//! intervals (pieces of ∂Σ), odd side `2k+1` is the attaching side of dart
//! `k`. Handle `h` owns darts `4h..4h+4`, in the rotation pattern
//! `e_{2h}^+, e_{2h+1}^+, e_{2h}^-, e_{2h+1}^-`.
//!
//! Arcs and closed curves are stored as the sequence of reference sides they
//! exit `P` through (see [`Path`]). Reduced sequences are minimal with respect
//! to the reference arcs, and the placement rule in [`layout`] puts any
//! family of such paths in minimal position simultaneously.

mod arcs;
pub mod layout;
mod twist;
mod veering;

pub use arcs::{ArcBasis, BasisError, Mark, SlideStep};
pub use layout::{Key, Layout, PointRef};
pub use twist::{apply_twist, apply_word};
pub use veering::{find_left_witness, independent, rank_mod2, sends_left, LeftTest, LeftWitness};


use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

/// Position of a marked point inside a boundary interval, in `(0, POS_SCALE)`.
pub type Pos = u64;

/// Exclusive upper bound of [`Pos`] values.
pub const POS_SCALE: Pos = 1 << 48;

/// A point on ∂Σ: a boundary side of the polygon plus a position along it
/// (increasing in the direction of the boundary orientation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BPoint {
    pub side: u32,
    pub pos: Pos,
}

/// Errors raised by surface-level operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("side {0} is not an arc side")]
    NotArcSide(u32),
    #[error("side {0} is not a boundary side")]
    NotBoundarySide(u32),
    #[error("object {0} is not embedded ({1} self-crossings)")]
    NotEmbedded(usize, usize),
    #[error("arc endpoints coincide or the arc is boundary parallel")]
    DegenerateArc,
    #[error("twisting curve must be a closed curve")]
    TwistAlongArc,
    #[error("position {0} lies outside a boundary interval")]
    BadPosition(Pos),
}

/// Oriented ribbon-graph model of Σ_g with one boundary component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialSurface {
    genus: usize,
    /// `opposite[d]`: the other end of the ribbon attached at dart `d`.
    opposite: Vec<u32>,
    /// `next[d]`: the dart following `d` counterclockwise around the vertex.
    next: Vec<u32>,
}

impl CombinatorialSurface {
    pub fn new(genus: usize) -> Result<Self, SurfaceError> {
        if genus == 0 {
            return Err(SurfaceError::ZeroGenus);
        }
        let nd = 4 * genus;
        let mut opposite = vec![0u32; nd];
        for h in 0..genus {
            let b = 4 * h as u32;
            opposite[b as usize] = b + 2;
            opposite[b as usize + 2] = b;
            opposite[b as usize + 1] = b + 3;
            opposite[b as usize + 3] = b + 1;
        }
        let next = (0..nd as u32).map(|d| (d + 1) % nd as u32).collect();
        let s = CombinatorialSurface { genus, opposite, next };
        debug_assert_eq!(s.euler_characteristic(), 1 - 2 * genus as i64);
        debug_assert_eq!(s.boundary_cycles().len(), 1);
        Ok(s)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of polygon sides, `8g`.
    pub fn side_count(&self) -> u32 {
        8 * self.genus as u32
    }

    /// Number of reference arcs, `2g`.
    pub fn arc_count(&self) -> usize {
        2 * self.genus
    }

    pub fn darts(&self) -> usize {
        self.next.len()
    }

    pub fn dart_next(&self, d: u32) -> u32 {
        self.next[d as usize]
    }

    pub fn dart_opposite(&self, d: u32) -> u32 {
        self.opposite[d as usize]
    }

    /// χ of the thickened ribbon graph: one vertex, `2g` edges.
    pub fn euler_characteristic(&self) -> i64 {
        1 - (self.darts() / 2) as i64
    }

    /// Boundary circuits of the ribbon graph, each listed as the darts whose
    /// following boundary interval it traverses.
    pub fn boundary_cycles(&self) -> Vec<Vec<u32>> {
        let nd = self.darts();
        let mut seen = vec![false; nd];
        let mut out = Vec::new();
        for start in 0..nd as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut d = start;
            while !seen[d as usize] {
                seen[d as usize] = true;
                cyc.push(d);
                // Passing the end of the interval after `d` crosses the next
                // dart's ribbon and lands after its opposite end.
                d = self.opposite[self.next[d as usize] as usize];
            }
            out.push(cyc);
        }
        out
    }

    pub fn is_arc_side(&self, s: u32) -> bool {
        s % 2 == 1
    }

    pub fn is_boundary_side(&self, s: u32) -> bool {
        s % 2 == 0
    }

    pub fn side_of_dart(&self, d: u32) -> u32 {
        2 * d + 1
    }

    pub fn dart_of_side(&self, s: u32) -> u32 {
        debug_assert!(self.is_arc_side(s));
        (s - 1) / 2
    }

    /// The arc side glued to `s`.
    pub fn partner(&self, s: u32) -> u32 {
        self.side_of_dart(self.opposite[self.dart_of_side(s) as usize])
    }

    /// Reference arc (ribbon) index of an arc side.
    pub fn ref_arc(&self, s: u32) -> usize {
        let d = self.dart_of_side(s) as usize;
        2 * (d / 4) + d % 2
    }

    /// `+1` for the copy through which the dual loop exits, `-1` otherwise.
    pub fn side_sign(&self, s: u32) -> i8 {
        if self.dart_of_side(s) % 4 < 2 {
            1
        } else {
            -1
        }
    }

    /// The `+` side of reference arc `r`.
    pub fn plus_side(&self, r: usize) -> u32 {
        let d = 4 * (r / 2) + r % 2;
        self.side_of_dart(d as u32)
    }

    pub fn next_side(&self, s: u32) -> u32 {
        (s + 1) % self.side_count()
    }

    pub fn prev_side(&self, s: u32) -> u32 {
        (s + self.side_count() - 1) % self.side_count()
    }

    /// The boundary interval that follows boundary interval `b` along ∂Σ,
    /// together with the arc side crossed when passing the corner between them.
    pub fn boundary_successor(&self, b: u32) -> (u32, u32) {
        debug_assert!(self.is_boundary_side(b));
        let s = self.next_side(b);
        (s, self.next_side(self.partner(s)))
    }

    /// The boundary interval preceding `b` and the arc side crossed.
    pub fn boundary_predecessor(&self, b: u32) -> (u32, u32) {
        let s = self.prev_side(b);
        (s, self.prev_side(self.partner(s)))
    }

    /// Boundary intervals in ∂Σ order starting from side 0.
    pub fn boundary_circuit(&self) -> Vec<u32> {
        let mut out = vec![0u32];
        let mut b = self.boundary_successor(0).1;
        while b != 0 {
            out.push(b);
            b = self.boundary_successor(b).1;
        }
        out
    }

    /// Exit sides crossed when sliding along ∂Σ from `from` to `to`.
    ///
    /// `forward` follows the boundary orientation. The walk never passes `to`
    /// and goes around at most once.
    pub fn boundary_walk(&self, from: BPoint, to: BPoint, forward: bool) -> Vec<u32> {
        let mut out = Vec::new();
        let mut b = from.side;
        if forward {
            if b == to.side && to.pos >= from.pos {
                return out;
            }
            loop {
                let (s, nb) = self.boundary_successor(b);
                out.push(s);
                b = nb;
                if b == to.side {
                    return out;
                }
            }
        } else {
            if b == to.side && to.pos <= from.pos {
                return out;
            }
            loop {
                let (s, nb) = self.boundary_predecessor(b);
                out.push(s);
                b = nb;
                if b == to.side {
                    return out;
                }
            }
        }
    }

    /// Index of a boundary point along ∂Σ, for cyclic comparisons.
    pub fn boundary_rank(&self, p: BPoint) -> (usize, Pos) {
        let circ = self.boundary_circuit();
        let i = circ.iter().position(|&b| b == p.side).expect("boundary side");
        (i, p.pos)
    }

    /// Dual loop of reference arc `r`: the core of ribbon `r`.
    pub fn dual_loop(&self, r: usize) -> Path {
        Path::closed(vec![self.plus_side(r)])
    }

    /// Reference arc `r` pushed slightly into `P`, parallel to its `+` side.
    pub fn standard_arc(&self, r: usize) -> Path {
        let s = self.plus_side(r);
        Path::arc(
            BPoint { side: self.prev_side(s), pos: POS_SCALE - POS_SCALE / 8 },
            BPoint { side: self.next_side(s), pos: POS_SCALE / 8 },
            Vec::new(),
        )
    }

    /// A simple closed curve parallel to ∂Σ.
    pub fn boundary_parallel_curve(&self) -> Path {
        let circ = self.boundary_circuit();
        let cross = circ.iter().map(|&b| self.boundary_successor(b).0).collect();
        Path::closed(cross)
    }

    /// Free reduction of an exit sequence (cancels a side followed by its partner).
    pub fn reduce(&self, cross: &[u32]) -> Vec<u32> {
        let mut st: Vec<u32> = Vec::with_capacity(cross.len());
        for &s in cross {
            if let Some(&t) = st.last() {
                if self.partner(t) == s {
                    st.pop();
                    continue;
                }
            }
            st.push(s);
        }
        st
    }

    /// Cyclic reduction for closed curves.
    pub fn cyclic_reduce(&self, cross: &[u32]) -> Vec<u32> {
        let mut v = self.reduce(cross);
        let mut lo = 0usize;
        while v.len() - lo >= 2 && self.partner(v[v.len() - 1]) == v[lo] {
            v.pop();
            lo += 1;
        }
        v.drain(..lo);
        v
    }

    /// Free-group word of an exit sequence, as signed reference-arc indices
    /// (`+r+1` / `-(r+1)`).
    pub fn word_of(&self, cross: &[u32]) -> Vec<i32> {
        cross
            .iter()
            .map(|&s| (self.ref_arc(s) as i32 + 1) * self.side_sign(s) as i32)
            .collect()
    }

    /// Inverse of [`CombinatorialSurface::word_of`].
    pub fn cross_of_word(&self, word: &[i32]) -> Vec<u32> {
        word.iter()
            .map(|&l| {
                let r = (l.unsigned_abs() - 1) as usize;
                let p = self.plus_side(r);
                if l > 0 {
                    p
                } else {
                    self.partner(p)
                }
            })
            .collect()
    }

    /// Normalises a path: reduces its word and checks arc endpoints.
    pub fn normalize(&self, p: &Path) -> Result<Path, SurfaceError> {
        match p.ends {
            PathEnds::Closed => Ok(Path::closed(self.cyclic_reduce(&p.cross))),
            PathEnds::Arc { start, end } => {
                for b in [start, end] {
                    if !self.is_boundary_side(b.side) || b.side >= self.side_count() {
                        return Err(SurfaceError::NotBoundarySide(b.side));
                    }
                    if b.pos == 0 || b.pos >= POS_SCALE {
                        return Err(SurfaceError::BadPosition(b.pos));
                    }
                }
                let cross = self.reduce(&p.cross);
                if start == end || (cross.is_empty() && start.side == end.side) {
                    return Err(SurfaceError::DegenerateArc);
                }
                Ok(Path::arc(start, end, cross))
            }
        }
    }

    /// Moves one foot of an arc along ∂Σ, updating its word.
    pub fn move_foot(&self, p: &Path, which: Endpoint, to: BPoint, forward: bool) -> Path {
        let (start, end) = p.endpoints().expect("arc");
        match which {
            Endpoint::Start => {
                let walk = self.boundary_walk(start, to, forward);
                let mut cross: Vec<u32> = walk.iter().rev().map(|&s| self.partner(s)).collect();
                cross.extend_from_slice(&p.cross);
                Path::arc(to, end, self.reduce(&cross))
            }
            Endpoint::End => {
                let walk = self.boundary_walk(end, to, forward);
                let mut cross = p.cross.clone();
                cross.extend_from_slice(&walk);
                Path::arc(start, to, self.reduce(&cross))
            }
        }
    }

    /// The path traversed backwards.
    pub fn reverse(&self, p: &Path) -> Path {
        let cross = p.cross.iter().rev().map(|&s| self.partner(s)).collect();
        match p.ends {
            PathEnds::Closed => Path::closed(cross),
            PathEnds::Arc { start, end } => Path::arc(end, start, cross),
        }
    }

    /// Number of self-crossings of a single path once laid out.
    pub fn self_crossings(&self, p: &Path) -> usize {
        let lay = Layout::new(self, &[p]);
        lay.self_crossings(0)
    }

    /// Geometric intersection number of two objects (interior crossings only,
    /// endpoints held fixed).
    pub fn intersection_number(&self, a: &Path, b: &Path) -> usize {
        let lay = Layout::new(self, &[a, b]);
        lay.crossings(0, 1)
    }

    /// Isotopy test for arcs (rel endpoints) and curves: same normal form.
    ///
    /// Arcs count as isotopic when their reduced words agree and their feet
    /// lie in the same boundary intervals. Callers that care about marked
    /// points on ∂Σ check the gaps separately.
    pub fn isotopic(&self, a: &Path, b: &Path) -> bool {
        match (a.ends, b.ends) {
            (PathEnds::Closed, PathEnds::Closed) => {
                let x = self.cyclic_reduce(&a.cross);
                let y = self.cyclic_reduce(&b.cross);
                if x.len() != y.len() {
                    return false;
                }
                if x.is_empty() {
                    return true;
                }
                (0..x.len()).any(|r| (0..x.len()).all(|i| x[(i + r) % x.len()] == y[i]))
            }
            (PathEnds::Arc { start: s1, end: e1 }, PathEnds::Arc { start: s2, end: e2 }) => {
                s1.side == s2.side
                    && e1.side == e2.side
                    && self.reduce(&a.cross) == self.reduce(&b.cross)
            }
            _ => false,
        }
    }
}

/// One of the two feet of an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Start,
    End,
}

/// How a path ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathEnds {
    Closed,
    Arc { start: BPoint, end: BPoint },
}

/// An arc or closed curve, given by the reference sides it exits `P` through.
///
/// For an arc, chord `0` runs from the start foot to `cross[0]`, chord `k`
/// from `partner(cross[k-1])` to `cross[k]`, and the last chord ends at the end
/// foot. Closed curves are read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub ends: PathEnds,
    pub cross: Vec<u32>,
}

impl Path {
    pub fn arc(start: BPoint, end: BPoint, cross: Vec<u32>) -> Path {
        Path { ends: PathEnds::Arc { start, end }, cross }
    }

    pub fn closed(cross: Vec<u32>) -> Path {
        Path { ends: PathEnds::Closed, cross }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.ends, PathEnds::Closed)
    }

    pub fn endpoints(&self) -> Option<(BPoint, BPoint)> {
        match self.ends {
            PathEnds::Closed => None,
            PathEnds::Arc { start, end } => Some((start, end)),
        }
    }

    /// Number of chords the path has inside `P`.
    pub fn chord_count(&self) -> usize {
        match self.ends {
            PathEnds::Closed => self.cross.len(),
            PathEnds::Arc { .. } => self.cross.len() + 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristic_and_single_boundary() {
        for g in 1..5 {
            let s = CombinatorialSurface::new(g).unwrap();
            assert_eq!(s.euler_characteristic(), 1 - 2 * g as i64);
            assert_eq!(s.boundary_cycles().len(), 1);
            assert_eq!(s.boundary_circuit().len(), 4 * g);
        }
        assert_eq!(CombinatorialSurface::new(0), Err(SurfaceError::ZeroGenus));
    }

    #[test]
    fn partner_is_involution_without_fixed_points() {
        let s = CombinatorialSurface::new(3).unwrap();
        for side in (1..s.side_count()).step_by(2) {
            let p = s.partner(side);
            assert_ne!(p, side);
            assert_eq!(s.partner(p), side);
            assert_eq!(s.ref_arc(p), s.ref_arc(side));
            assert_eq!(s.side_sign(p), -s.side_sign(side));
        }
    }

    #[test]
    fn reduction_cancels_backtracks() {
        let s = CombinatorialSurface::new(1).unwrap();
        let a = s.plus_side(0);
        let b = s.plus_side(1);
        assert_eq!(s.reduce(&[a, b, s.partner(b), s.partner(a)]), Vec::<u32>::new());
        assert_eq!(s.cyclic_reduce(&[a, b, s.partner(a)]), vec![b]);
        let w = s.word_of(&[a, s.partner(b)]);
        assert_eq!(w, vec![1, -2]);
        assert_eq!(s.cross_of_word(&w), vec![a, s.partner(b)]);
    }

    #[test]
    fn boundary_walk_round_trip() {
        let s = CombinatorialSurface::new(2).unwrap();
        let circ = s.boundary_circuit();
        let p = BPoint { side: circ[0], pos: 10 };
        let q = BPoint { side: circ[3], pos: 20 };
        let fwd = s.boundary_walk(p, q, true);
        assert_eq!(fwd.len(), 3);
        let back = s.boundary_walk(q, p, false);
        let expect: Vec<u32> = fwd.iter().rev().map(|&x| s.partner(x)).collect();
        assert_eq!(back, expect);
    }

    #[test]
    fn boundary_parallel_curve_crosses_each_reference_arc_twice() {
        let s = CombinatorialSurface::new(2).unwrap();
        let d = s.boundary_parallel_curve();
        assert_eq!(d.cross.len(), 8);
        let mut counts = [0; 4];
        for &c in &d.cross {
            counts[s.ref_arc(c)] += 1;
        }
        assert_eq!(counts, [2; 4]);
        assert_eq!(s.self_crossings(&d), 0);
    }
}
