//! Simultaneous minimal-position placement of a family of paths.
//!
//! Every crossing of a path with a reference arc becomes a point on the two
//! glued polygon sides. Points on a side are ordered by following both
//! strands forward until they first leave a common cell through different
//! sides; the strand that enters later must leave earlier counterclockwise,
//! otherwise the two chords would cross without need. Ties are broken by
//! looking backwards, then by object index. The resulting order keeps every
//! pair of reduced paths in minimal position.

use super::{BPoint, CombinatorialSurface, Path, PathEnds};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// A crossing of object `obj` with a reference arc: the exit of chord `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointRef {
    pub obj: u32,
    pub k: u32,
}

/// Position of a chord endpoint on ∂P: side index plus rank along the side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub side: u32,
    pub sub: u32,
}

/// Something sitting on a side of `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SidePoint {
    /// A crossing point of a path with the reference arc of this side.
    Cross(PointRef),
    /// A foot of an arc: `end == false` for the start foot.
    Foot { obj: u32, end: bool },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Far {
    Side(u32),
    Foot(BPoint),
}

#[derive(Clone, Copy)]
struct Strand {
    obj: usize,
    chord: usize,
    fwd: bool,
}

/// Placement of a family of paths inside `P`.
#[derive(Clone, Debug)]
pub struct Layout {
    sides: u32,
    chords: Vec<Vec<(Key, Key)>>,
    side_points: Vec<Vec<SidePoint>>,
}

struct Ctx<'a> {
    s: &'a CombinatorialSurface,
    objs: &'a [&'a Path],
}

impl<'a> Ctx<'a> {
    fn far(&self, st: Strand) -> Far {
        let p = self.objs[st.obj];
        let n = p.cross.len();
        match p.ends {
            PathEnds::Closed => {
                if st.fwd {
                    Far::Side(p.cross[st.chord % n])
                } else {
                    Far::Side(self.s.partner(p.cross[(st.chord + n - 1) % n]))
                }
            }
            PathEnds::Arc { start, end } => {
                if st.fwd {
                    if st.chord == n {
                        Far::Foot(end)
                    } else {
                        Far::Side(p.cross[st.chord])
                    }
                } else if st.chord == 0 {
                    Far::Foot(start)
                } else {
                    Far::Side(self.s.partner(p.cross[st.chord - 1]))
                }
            }
        }
    }

    fn advance(&self, st: Strand) -> Strand {
        let p = self.objs[st.obj];
        let n = p.cross.len();
        let chord = if st.fwd {
            if p.is_closed() {
                (st.chord + 1) % n
            } else {
                st.chord + 1
            }
        } else if p.is_closed() {
            (st.chord + n - 1) % n
        } else {
            st.chord - 1
        };
        Strand { chord, ..st }
    }

    fn dist(&self, near: u32, f: Far) -> (u32, u64) {
        let n = self.s.side_count();
        match f {
            Far::Side(s) => ((s + n - near) % n, 0),
            Far::Foot(b) => ((b.side + n - near) % n, b.pos),
        }
    }

    /// Order along `near` (counterclockwise parameter) of two strands that
    /// enter `P` through `near` and then follow their paths.
    fn cmp_strands(&self, mut a: Strand, mut b: Strand, mut near: u32) -> Ordering {
        let limit = self.objs[a.obj].cross.len() + self.objs[b.obj].cross.len() + 4;
        for _ in 0..limit {
            let fa = self.far(a);
            let fb = self.far(b);
            if fa == fb {
                match fa {
                    Far::Foot(_) => return Ordering::Equal,
                    Far::Side(s) => {
                        near = self.s.partner(s);
                        a = self.advance(a);
                        b = self.advance(b);
                    }
                }
            } else {
                // Nested chords: the later entry leaves earlier.
                return self.dist(near, fb).cmp(&self.dist(near, fa));
            }
        }
        Ordering::Equal
    }

    /// The two strands leaving a crossing point into `P`: the one entering
    /// through side `u` and the one entering through its partner.
    fn strands_at(&self, r: PointRef, u: u32) -> (Strand, Strand) {
        let p = self.objs[r.obj as usize];
        let fwd = self.wrap(Strand { obj: r.obj as usize, chord: r.k as usize + 1, fwd: true });
        let bwd = Strand { obj: r.obj as usize, chord: r.k as usize, fwd: false };
        if self.s.partner(p.cross[r.k as usize]) == u {
            (fwd, bwd)
        } else {
            (bwd, fwd)
        }
    }

    /// Order of two crossing points along arc side `u`.
    fn cmp_points(&self, p: PointRef, q: PointRef, u: u32) -> Ordering {
        let (pu, pv) = self.strands_at(p, u);
        let (qu, qv) = self.strands_at(q, u);
        let o = self.cmp_strands(pu, qu, u);
        if o != Ordering::Equal {
            return o;
        }
        let o = self.cmp_strands(pv, qv, self.s.partner(u));
        if o != Ordering::Equal {
            return o.reverse();
        }
        p.cmp(&q)
    }

    fn wrap(&self, st: Strand) -> Strand {
        let p = self.objs[st.obj];
        if p.is_closed() {
            Strand { chord: st.chord % p.cross.len(), ..st }
        } else {
            st
        }
    }

    fn cmp_feet(&self, a: (u32, bool), b: (u32, bool), side: u32) -> Ordering {
        let strand = |(o, end): (u32, bool)| {
            let p = self.objs[o as usize];
            if end {
                Strand { obj: o as usize, chord: p.cross.len(), fwd: false }
            } else {
                Strand { obj: o as usize, chord: 0, fwd: true }
            }
        };
        let o = self.cmp_strands(strand(a), strand(b), side);
        if o != Ordering::Equal {
            return o;
        }
        a.cmp(&b)
    }
}

impl Layout {
    /// Lays out all objects at once. Objects should be reduced.
    pub fn new(s: &CombinatorialSurface, objs: &[&Path]) -> Layout {
        let ctx = Ctx { s, objs };
        let ns = s.side_count() as usize;
        let mut side_points: Vec<Vec<SidePoint>> = vec![Vec::new(); ns];
        for (o, p) in objs.iter().enumerate() {
            for (k, &c) in p.cross.iter().enumerate() {
                let u = s.plus_side(s.ref_arc(c));
                side_points[u as usize].push(SidePoint::Cross(PointRef { obj: o as u32, k: k as u32 }));
            }
            if let Some((a, b)) = p.endpoints() {
                side_points[a.side as usize].push(SidePoint::Foot { obj: o as u32, end: false });
                side_points[b.side as usize].push(SidePoint::Foot { obj: o as u32, end: true });
            }
        }
        for (u, pts) in side_points.iter_mut().enumerate() {
            let u = u as u32;
            if s.is_arc_side(u) && s.side_sign(u) < 0 {
                continue;
            }
            if s.is_arc_side(u) {
                pts.sort_by(|a, b| match (a, b) {
                    (SidePoint::Cross(p), SidePoint::Cross(q)) => ctx.cmp_points(*p, *q, u),
                    _ => unreachable!(),
                });
            } else {
                let pos = |sp: &SidePoint| match *sp {
                    SidePoint::Foot { obj, end } => {
                        let (a, b) = objs[obj as usize].endpoints().unwrap();
                        (if end { b.pos } else { a.pos }, obj, end)
                    }
                    _ => unreachable!(),
                };
                pts.sort_by(|a, b| {
                    let (pa, oa, ea) = pos(a);
                    let (pb, ob, eb) = pos(b);
                    pa.cmp(&pb).then_with(|| ctx.cmp_feet((oa, ea), (ob, eb), u))
                });
            }
        }
        for r in 0..s.arc_count() {
            let u = s.plus_side(r);
            let mut rev = side_points[u as usize].clone();
            rev.reverse();
            side_points[s.partner(u) as usize] = rev;
        }
        let mut rank: BTreeMap<(u32, PointRef), u32> = BTreeMap::new();
        let mut foot_rank: BTreeMap<(u32, bool), u32> = BTreeMap::new();
        for (u, pts) in side_points.iter().enumerate() {
            for (i, sp) in pts.iter().enumerate() {
                match *sp {
                    SidePoint::Cross(r) => {
                        rank.insert((u as u32, r), i as u32);
                    }
                    SidePoint::Foot { obj, end } => {
                        foot_rank.insert((obj, end), i as u32);
                    }
                }
            }
        }
        let mut chords = Vec::with_capacity(objs.len());
        for (o, p) in objs.iter().enumerate() {
            let n = p.cross.len();
            let pr = |k: usize| PointRef { obj: o as u32, k: k as u32 };
            let entry_key = |k: usize| {
                let u = s.partner(p.cross[k]);
                Key { side: u, sub: rank[&(u, pr(k))] }
            };
            let exit_key = |k: usize| {
                let c = p.cross[k];
                Key { side: c, sub: rank[&(c, pr(k))] }
            };
            let mut v = Vec::with_capacity(p.chord_count());
            match p.ends {
                PathEnds::Closed => {
                    for k in 0..n {
                        v.push((entry_key((k + n - 1) % n), exit_key(k)));
                    }
                }
                PathEnds::Arc { start, end } => {
                    for k in 0..=n {
                        let a = if k == 0 {
                            Key { side: start.side, sub: foot_rank[&(o as u32, false)] }
                        } else {
                            entry_key(k - 1)
                        };
                        let b = if k == n {
                            Key { side: end.side, sub: foot_rank[&(o as u32, true)] }
                        } else {
                            exit_key(k)
                        };
                        v.push((a, b));
                    }
                }
            }
            chords.push(v);
        }
        Layout { sides: ns as u32, chords, side_points }
    }

    pub fn side_count(&self) -> u32 {
        self.sides
    }

    /// Chord endpoints of object `o`.
    pub fn chords(&self, o: usize) -> &[(Key, Key)] {
        &self.chords[o]
    }

    /// Points on side `u` in counterclockwise order. Each crossing point is
    /// listed on both glued sides, in opposite orders.
    pub fn side_points(&self, u: u32) -> &[SidePoint] {
        &self.side_points[u as usize]
    }

    /// Number of points on side `u` (crossing points or feet).
    pub fn side_len(&self, u: u32) -> usize {
        self.side_points[u as usize].len()
    }

    /// Whether two chords cross, given their endpoint keys.
    pub fn chords_cross(a: (Key, Key), b: (Key, Key)) -> bool {
        if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
            return false;
        }
        in_open(a.0, a.1, b.0) != in_open(a.0, a.1, b.1)
    }

    /// Crossings between objects `i` and `j`.
    pub fn crossings(&self, i: usize, j: usize) -> usize {
        let mut n = 0;
        for &a in &self.chords[i] {
            for &b in &self.chords[j] {
                if Self::chords_cross(a, b) {
                    n += 1;
                }
            }
        }
        n
    }

    /// Crossings of object `i` with itself.
    pub fn self_crossings(&self, i: usize) -> usize {
        let c = &self.chords[i];
        let mut n = 0;
        for x in 0..c.len() {
            for y in x + 1..c.len() {
                if Self::chords_cross(c[x], c[y]) {
                    n += 1;
                }
            }
        }
        n
    }

    /// Chords of the listed objects crossing chord `ci` of object `i`,
    /// in the order met when travelling along it.
    pub fn crossings_along(&self, i: usize, ci: usize, others: &[usize]) -> Vec<(usize, usize)> {
        let a = self.chords[i][ci];
        let mut hits: Vec<((bool, Key), usize, usize)> = Vec::new();
        for &j in others {
            for (cj, &b) in self.chords[j].iter().enumerate() {
                if j == i && cj == ci {
                    continue;
                }
                if Self::chords_cross(a, b) {
                    let right = if in_open(a.0, a.1, b.0) { b.0 } else { b.1 };
                    hits.push((ccw_from(a.0, right), j, cj));
                }
            }
        }
        hits.sort();
        hits.into_iter().map(|(_, j, c)| (j, c)).collect()
    }
}

/// Whether `x` lies strictly inside the counterclockwise interval `(a, b)`.
pub fn in_open(a: Key, b: Key, x: Key) -> bool {
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

/// Sort key measuring counterclockwise distance from `a`.
pub fn ccw_from(a: Key, x: Key) -> (bool, Key) {
    (x <= a, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{CombinatorialSurface, Path};
    use alloc::vec;

    fn k(side: u32, sub: u32) -> Key {
        Key { side, sub }
    }

    #[test]
    fn interleaving() {
        assert!(Layout::chords_cross((k(1, 0), k(5, 0)), (k(3, 0), k(7, 0))));
        assert!(!Layout::chords_cross((k(1, 0), k(3, 0)), (k(5, 0), k(7, 0))));
        assert!(Layout::chords_cross((k(7, 0), k(3, 0)), (k(5, 0), k(1, 0))));
    }

    #[test]
    fn dual_loops_of_one_handle_meet_once() {
        // Hand check: the cores of the two ribbons of a handle join sides
        // {5,1} and {7,3} of the octagon, which interleave.
        let s = CombinatorialSurface::new(1).unwrap();
        let x = s.dual_loop(0);
        let y = s.dual_loop(1);
        assert_eq!(x.cross, vec![1]);
        assert_eq!(y.cross, vec![3]);
        assert_eq!(s.intersection_number(&x, &y), 1);
        assert_eq!(s.intersection_number(&x, &x.clone()), 0);
    }

    #[test]
    fn standard_arcs_are_disjoint_and_meet_their_duals_once() {
        let s = CombinatorialSurface::new(2).unwrap();
        for r in 0..4 {
            let a = s.standard_arc(r);
            for q in 0..4 {
                let expect = usize::from(q == r);
                assert_eq!(s.intersection_number(&a, &s.dual_loop(q)), expect, "r={r} q={q}");
                if q != r {
                    assert_eq!(s.intersection_number(&a, &s.standard_arc(q)), 0);
                }
            }
        }
    }

    #[test]
    fn parallel_closed_curves_do_not_cross() {
        let s = CombinatorialSurface::new(1).unwrap();
        let a = s.plus_side(0);
        let b = s.plus_side(1);
        let c = Path::closed(vec![a, b]);
        assert_eq!(s.self_crossings(&c), 0);
        let lay = Layout::new(&s, &[&c, &c.clone()]);
        assert_eq!(lay.crossings(0, 1), 0);
    }
}
