//! Empty-able embedded rectangles and bigons of a diagram.
//!
//! A domain is stored once, keyed by one of its source corners, together
//! with the intersection points in its interior. Whether it contributes to
//! `∂x` then only depends on `x` containing the source corners and missing
//! every interior point.
//!
//! The source corners are those where, turning counterclockwise, the first
//! family is followed by the second.

use crate::heegaard::map::{twist, Family, Map, Regions, NONE};
use alloc::vec;
use alloc::vec::Vec;

/// One rectangle or bigon. For bigons the second corner of each pair is
/// [`NONE`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub from: [u32; 2],
    /// `to[k]` lies on the same α curve as `from[k]`.
    pub to: [u32; 2],
    pub interior: Vec<u32>,
    pub n_z: u32,
}

impl Polygon {
    pub fn is_bigon(&self) -> bool {
        self.from[1] == NONE
    }
}

/// Curve segments between consecutive intersection points.
pub(crate) struct Segments {
    /// For a half-edge leaving an intersection point: the last half-edge of
    /// its segment, arriving at the next intersection point.
    pub last: Vec<u32>,
}

fn same_curve_next(m: &Map, h: u32) -> u32 {
    let k = m.kind(h);
    let back = twist(h);
    let mut g = m.rnext[back as usize];
    while g != back {
        if m.kind(g) == k {
            return g;
        }
        g = m.rnext[g as usize];
    }
    NONE
}

impl Segments {
    pub fn new(m: &Map) -> Segments {
        let mut last = vec![NONE; m.half_edges()];
        for e in 0..m.half_edges() as u32 {
            if !m.kind(e).is_curve() || !m.is_intersection(m.origin[e as usize]) {
                continue;
            }
            let mut h = e;
            while !m.is_intersection(m.dest(h)) {
                h = same_curve_next(m, h);
            }
            last[e as usize] = h;
        }
        Segments { last }
    }

    pub fn end(&self, m: &Map, e: u32) -> u32 {
        m.dest(self.last[e as usize])
    }

    /// Next side of the region on the left of `e`.
    pub fn turn(&self, m: &Map, e: u32) -> u32 {
        m.rprev[twist(self.last[e as usize]) as usize]
    }

    /// Continuation of the curve of `e` past its far end.
    pub fn straight(&self, m: &Map, e: u32) -> u32 {
        let b = twist(self.last[e as usize]);
        m.rnext[m.rnext[b as usize] as usize]
    }

    /// The same segment run backwards.
    pub fn rev(&self, e: u32) -> u32 {
        twist(self.last[e as usize])
    }
}

fn family(m: &Map, h: u32) -> Option<Family> {
    m.kind(h).family()
}

fn alpha_of(m: &Map, v: u32) -> u32 {
    match m.vkind[v as usize] {
        crate::heegaard::VertexKind::Intersection { alpha, .. } => alpha,
        _ => NONE,
    }
}

/// Corners of the square on the left of `e`, starting at its origin, and
/// its four sides.
fn square(m: &Map, s: &Segments, e: u32) -> ([u32; 4], [u32; 4]) {
    let s1 = s.turn(m, e);
    let s2 = s.turn(m, s1);
    let s3 = s.turn(m, s2);
    ([m.origin[e as usize], s.end(m, e), s.end(m, s1), s.end(m, s2)], [e, s1, s2, s3])
}

/// Every embedded rectangle avoiding the `w` region, each listed once.
pub fn rectangles(m: &Map, reg: &Regions, first: Family) -> Vec<Polygon> {
    let s = Segments::new(m);
    let region = |h: u32| reg.of_face[m.face[h as usize] as usize];
    let good = |r: u32| r != reg.w && reg.is_disk(r) && reg.corners[r as usize] == 4;
    let mut out = Vec::new();
    let mut stamp = vec![0u32; reg.count];
    let mut vstamp = vec![0u32; m.vertices()];
    let mut tick = 0u32;
    for e0 in 0..m.half_edges() as u32 {
        if s.last[e0 as usize] == NONE || family(m, e0) != Some(first) || !good(region(e0)) {
            continue;
        }
        // rows[v][u]: bottom side of cell (u, v).
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut width = usize::MAX;
        loop {
            let v = rows.len();
            let start = if v == 0 {
                e0
            } else {
                let below = rows[v - 1][0];
                let top = square(m, &s, below).1[2];
                s.rev(top)
            };
            let mut row = Vec::new();
            let mut e = start;
            while row.len() < width {
                if !good(region(e)) {
                    break;
                }
                if v > 0 {
                    let below = rows[v - 1][row.len()];
                    if s.rev(square(m, &s, below).1[2]) != e {
                        break;
                    }
                }
                row.push(e);
                e = s.straight(m, e);
                if e == start {
                    break;
                }
            }
            if row.is_empty() {
                break;
            }
            let cap = row.len();
            rows.push(row);
            let b = rows.len();
            // A block that fails stays failed in every larger block.
            width = 0;
            for a in 1..=cap {
                tick += 1;
                match block(m, &s, reg, &rows, a, b, tick, &mut stamp, &mut vstamp) {
                    Some(p) => {
                        width = a;
                        if p.from[0] < p.from[1] {
                            out.push(p);
                        }
                    }
                    None => break,
                }
            }
            if width == 0 {
                break;
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn block(
    m: &Map,
    s: &Segments,
    reg: &Regions,
    rows: &[Vec<u32>],
    a: usize,
    b: usize,
    tick: u32,
    stamp: &mut [u32],
    vstamp: &mut [u32],
) -> Option<Polygon> {
    let mut n_z = 0;
    let mut interior = Vec::new();
    for v in 0..b {
        for u in 0..a {
            let e = rows[v][u];
            let r = reg.of_face[m.face[e as usize] as usize];
            if stamp[r as usize] == tick {
                return None;
            }
            stamp[r as usize] = tick;
            if r == reg.z {
                n_z += 1;
            }
            let (c, _) = square(m, s, e);
            // Each grid vertex is the lower-left corner of one cell, or on
            // the top or right edge of the block.
            let mut mine = vec![c[0]];
            if u == a - 1 {
                mine.push(c[1]);
            }
            if v == b - 1 {
                mine.push(c[3]);
            }
            if u == a - 1 && v == b - 1 {
                mine.push(c[2]);
            }
            for x in mine {
                if vstamp[x as usize] == tick {
                    return None;
                }
                vstamp[x as usize] = tick;
            }
            if u > 0 && v > 0 {
                interior.push(c[0]);
            }
        }
    }
    let p = m.origin[rows[0][0] as usize];
    let q = square(m, s, rows[b - 1][a - 1]).0[2];
    let r = square(m, s, rows[0][a - 1]).0[1];
    let t = square(m, s, rows[b - 1][0]).0[3];
    // r shares the bottom curve with p, t the left curve.
    let (to0, to1) = if alpha_of(m, r) == alpha_of(m, p) { (r, t) } else { (t, r) };
    Some(Polygon { from: [p, q], to: [to0, to1], interior, n_z })
}

/// Every embedded bigon avoiding the `w` region.
pub fn bigons(m: &Map, reg: &Regions, first: Family) -> Vec<Polygon> {
    let s = Segments::new(m);
    let region = |h: u32| reg.of_face[m.face[h as usize] as usize];
    // Curve half-edges leaving intersection points, grouped by left region.
    let mut sides: Vec<Vec<u32>> = vec![Vec::new(); reg.count];
    let mut corners: Vec<Vec<u32>> = vec![Vec::new(); reg.count];
    for e in 0..m.half_edges() as u32 {
        if s.last[e as usize] != NONE {
            sides[region(e) as usize].push(e);
            corners[region(e) as usize].push(m.origin[e as usize]);
        }
    }
    let mut out = Vec::new();
    let mut on_bdry = vec![0u32; m.half_edges()];
    let mut flooded = vec![0u32; reg.count];
    let mut vmark = vec![0u32; m.vertices()];
    let mut tick = 0u32;
    for e0 in 0..m.half_edges() as u32 {
        if s.last[e0 as usize] == NONE || family(m, e0) != Some(first) {
            continue;
        }
        let p = m.origin[e0 as usize];
        let f0 = m.rnext[e0 as usize];
        // Walk the second curve from p and remember positions.
        tick += 1;
        let mut along_b = Vec::new();
        let mut h = f0;
        loop {
            along_b.push(h);
            let q = s.end(m, h);
            if q == p {
                break;
            }
            vmark[q as usize] = tick;
            h = s.straight(m, h);
        }
        let mut along_a = Vec::new();
        let mut h = e0;
        loop {
            along_a.push(h);
            let q = s.end(m, h);
            if q == p {
                break;
            }
            if vmark[q as usize] == tick {
                let j = along_b.iter().position(|&g| s.end(m, g) == q).unwrap_or(NONE as usize);
                if let Some(poly) =
                    flood(m, &s, reg, &sides, &corners, &along_a, &along_b[..=j], &mut on_bdry, &mut flooded, tick)
                {
                    out.push(poly);
                }
                tick += 1;
                // Later candidates need the marks of the second walk again.
                for g in &along_b {
                    let x = s.end(m, *g);
                    if x != p {
                        vmark[x as usize] = tick;
                    }
                }
            }
            h = s.straight(m, h);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn flood(
    m: &Map,
    s: &Segments,
    reg: &Regions,
    sides: &[Vec<u32>],
    corners: &[Vec<u32>],
    a: &[u32],
    b: &[u32],
    on_bdry: &mut [u32],
    flooded: &mut [u32],
    tick: u32,
) -> Option<Polygon> {
    let region = |h: u32| reg.of_face[m.face[h as usize] as usize];
    // The two sides may only meet at their ends.
    let mut inner: Vec<u32> = a[..a.len() - 1].iter().map(|&h| s.end(m, h)).collect();
    inner.sort_unstable();
    for &h in &b[..b.len() - 1] {
        if inner.binary_search(&s.end(m, h)).is_ok() {
            return None;
        }
    }
    // The domain lies left of the first side and right of the second.
    let mut inside = Vec::new();
    for &h in a {
        on_bdry[h as usize] = tick;
        on_bdry[s.rev(h) as usize] = tick;
        inside.push(h);
    }
    for &h in b {
        on_bdry[h as usize] = tick;
        on_bdry[s.rev(h) as usize] = tick;
        inside.push(s.rev(h));
    }
    let r0 = region(a[0]);
    let mut stack = vec![r0];
    let mut members = vec![r0];
    flooded[r0 as usize] = tick;
    while let Some(r) = stack.pop() {
        if r == reg.w {
            return None;
        }
        for &h in &sides[r as usize] {
            if on_bdry[h as usize] == tick {
                continue;
            }
            let q = region(s.rev(h));
            if flooded[q as usize] != tick {
                flooded[q as usize] = tick;
                members.push(q);
                stack.push(q);
            }
        }
    }
    for &h in &inside {
        if flooded[region(s.rev(h)) as usize] == tick {
            return None;
        }
    }
    let measure: i32 = members
        .iter()
        .map(|&r| 4 * reg.euler[r as usize] - reg.corners[r as usize] as i32)
        .sum();
    if measure != 2 {
        return None;
    }
    let mut pts: Vec<u32> = members.iter().flat_map(|&r| corners[r as usize].iter().copied()).collect();
    pts.sort_unstable();
    let mut interior = Vec::new();
    let mut i = 0;
    while i < pts.len() {
        let mut j = i;
        while j < pts.len() && pts[j] == pts[i] {
            j += 1;
        }
        if j - i == 4 {
            interior.push(pts[i]);
        }
        i = j;
    }
    let n_z = u32::from(flooded[reg.z as usize] == tick);
    let p = m.origin[a[0] as usize];
    let q = s.end(m, a[a.len() - 1]);
    Some(Polygon { from: [p, NONE], to: [q, NONE], interior, n_z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floer::{nice_diagram, Options, FIRST};
    use crate::openbook::OpenBook;
    use crate::surface::ArcBasis;

    #[test]
    fn rectangles_are_listed_once_with_matching_corners() {
        for w in ["xy", "xY", "xxY"] {
            let ob = OpenBook::new(1, w).unwrap();
            let d = nice_diagram(&ob, &ArcBasis::standard(&ob.surface), &Options::default()).unwrap();
            let reg = d.regions();
            let rects = rectangles(&d.map, &reg, FIRST);
            assert!(!rects.is_empty());
            let mut keys: Vec<_> = rects.iter().map(|p| (p.from, p.to)).collect();
            keys.sort_unstable();
            keys.dedup();
            assert_eq!(keys.len(), rects.len(), "{w}");
            for p in &rects {
                assert!(!p.is_bigon());
                assert!(p.from[0] < p.from[1]);
                assert_eq!(alpha_of(&d.map, p.from[0]), alpha_of(&d.map, p.to[0]));
                assert_eq!(alpha_of(&d.map, p.from[1]), alpha_of(&d.map, p.to[1]));
                assert!(p.n_z <= 1);
            }
            for p in bigons(&d.map, &reg, FIRST) {
                assert!(p.is_bigon());
                assert_eq!(alpha_of(&d.map, p.from[0]), alpha_of(&d.map, p.to[0]));
                assert_ne!(p.from[0], p.to[0]);
            }
        }
    }
}
