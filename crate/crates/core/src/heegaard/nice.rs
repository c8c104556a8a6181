//! Finger moves of either curve family and the greedy search that makes a
//! diagram nice.
//!
//! A finger of β never crosses β or `γ_β`; a finger of α never crosses α or
//! `γ_α`. Both keep the tag-based Alexander grading valid.

use super::map::{twist as tw, EdgeKind, Family, Map, Regions, VertexKind, NONE};
use super::{Diagram, HeegaardError};
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

/// A finger grown from the middle of curve half-edge `start` into the face
/// on its left, crossing the half-edges `path` in turn. Each crossed
/// half-edge has the current face on its left. The finger belongs to the
/// family of `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finger {
    pub start: u32,
    pub path: Vec<u32>,
}

/// Edges a finger of family `fam` may cross: curves of the other family and
/// phantoms, except the part of ∂Σ the family has to avoid.
fn crossable(fam: Family, k: EdgeKind) -> bool {
    match (fam, k) {
        (Family::Beta, EdgeKind::Beta(_) | EdgeKind::Bdry { gamma_beta: true }) => false,
        (Family::Alpha, EdgeKind::Alpha(_) | EdgeKind::Bdry { gamma_beta: false }) => false,
        _ => true,
    }
}

/// Performs the finger move and recomputes faces.
pub fn apply_finger(m: &mut Map, f: &Finger) {
    let h = f.start;
    let ckind = m.kind(h);
    let (fam, idx) = match ckind {
        EdgeKind::Beta(b) => (Family::Beta, b),
        EdgeKind::Alpha(a) => (Family::Alpha, a),
        _ => panic!("finger must start on a curve"),
    };
    let mcount = f.path.len();
    let mut p_in = Vec::with_capacity(mcount);
    let mut p_out = Vec::with_capacity(mcount);
    let mut q_he = Vec::with_capacity(mcount);
    let mut r_he = Vec::with_capacity(mcount);
    let mut face_half = Vec::with_capacity(mcount + 1);
    face_half.push(m.left_half[h as usize]);
    for &g in &f.path {
        let kind = m.kind(g);
        let lh = m.left_half[g as usize];
        let rh = m.left_half[tw(g) as usize];
        face_half.push(rh);
        let vk = match (kind, fam) {
            (EdgeKind::Alpha(a), _) => VertexKind::Intersection { alpha: a, beta: idx, half: lh },
            (EdgeKind::Beta(b), _) => VertexKind::Intersection { alpha: idx, beta: b, half: lh },
            (EdgeKind::Ref, _) => VertexKind::OnRef { family: fam, index: idx, half: lh },
            _ => VertexKind::Foot { family: fam, index: idx },
        };
        let vi = m.add_vertex(vk);
        let vo = m.add_vertex(vk);
        let t = tw(g);
        let b = m.origin[t as usize];
        let q = m.add_edge(vi, vo, kind, lh, rh);
        let r = m.add_edge(vo, b, kind, lh, rh);
        m.replace_in_rotation(t, tw(r));
        m.origin[t as usize] = vi;
        p_in.push(vi);
        p_out.push(vo);
        q_he.push(q);
        r_he.push(r);
    }
    // Pieces of the moved curve: up along the outer strand, around the tip,
    // back down.
    let v_end = m.dest(h);
    let old_twin = tw(h);
    m.origin[old_twin as usize] = p_out[0];
    let mut up = vec![h];
    for k in 0..mcount - 1 {
        let fh = face_half[k + 1];
        up.push(m.add_edge(p_out[k], p_out[k + 1], ckind, fh, fh));
    }
    let fm = face_half[mcount];
    let tip = m.add_edge(p_out[mcount - 1], p_in[mcount - 1], ckind, fm, fm);
    let mut down = vec![NONE; mcount];
    for k in (1..mcount).rev() {
        let fh = face_half[k];
        down[k] = m.add_edge(p_in[k], p_in[k - 1], ckind, fh, fh);
    }
    let f0 = face_half[0];
    down[0] = m.add_edge(p_in[0], v_end, ckind, f0, f0);
    // `old_twin` still sits in the rotation at `v_end`; hand its slot over.
    let fresh = tw(down[0]);
    let p = m.rprev[old_twin as usize];
    let nx = m.rnext[old_twin as usize];
    if p == old_twin {
        m.rnext[fresh as usize] = fresh;
        m.rprev[fresh as usize] = fresh;
    } else {
        m.rnext[p as usize] = fresh;
        m.rprev[nx as usize] = fresh;
        m.rnext[fresh as usize] = nx;
        m.rprev[fresh as usize] = p;
    }
    for k in 0..mcount {
        let g = f.path[k];
        let t = tw(g);
        let below_out = tw(up[k]);
        let above_out = if k + 1 < mcount { up[k + 1] } else { tip };
        let below_in = down[k];
        let above_in = if k + 1 < mcount { tw(down[k + 1]) } else { tw(tip) };
        // [toward b, edge below, toward a, edge above]
        m.set_rotation(&[q_he[k], below_in, t, above_in]);
        m.set_rotation(&[r_he[k], below_out, tw(q_he[k]), above_out]);
    }
    m.compute_faces();
}

pub fn half_edges_by_face(m: &Map) -> Vec<Vec<u32>> {
    let mut v = vec![Vec::new(); m.nfaces];
    for h in 0..m.half_edges() as u32 {
        v[m.face[h as usize] as usize].push(h);
    }
    v
}

fn is_sink(reg: &Regions, r: u32) -> bool {
    r == reg.w || (reg.is_disk(r) && reg.corners[r as usize] == 2)
}

/// Region distances to the nearest sink (the `w` region or a bigon).
///
/// Badness leaves a region `q` through a side of family `F` by a finger of
/// `F` that starts on that side and crosses `q`, so a step out of `q`
/// across an `F` edge counts only when the faces of `q` are joined by
/// phantoms that `F` may cross.
pub fn sink_distances(m: &Map, reg: &Regions) -> Vec<u32> {
    let whole = [Family::Alpha, Family::Beta].map(|fam| {
        // Union-find of faces across phantoms crossable by `fam`; a region
        // is whole when that leaves it in one piece.
        let mut p: Vec<u32> = (0..m.nfaces as u32).collect();
        let mut pieces = vec![0i64; reg.count];
        for f in 0..m.nfaces {
            pieces[reg.of_face[f] as usize] += 1;
        }
        for h in (0..m.half_edges() as u32).step_by(2) {
            let k = m.kind(h);
            if k.is_curve() || !crossable(fam, k) {
                continue;
            }
            let a = root(&mut p, m.face[h as usize]);
            let b = root(&mut p, m.face[h as usize + 1]);
            if a != b {
                p[a as usize] = b;
                pieces[reg.of_face[a as usize] as usize] -= 1;
            }
        }
        pieces.iter().map(|&c| c == 1).collect::<Vec<bool>>()
    });
    // Reverse edges: `to[y]` lists the regions that may pass badness to `y`.
    let mut to = vec![Vec::new(); reg.count];
    for h in 0..m.half_edges() as u32 {
        let Some(fam) = m.kind(h).family() else { continue };
        let q = reg.of_half_edge(m, h);
        let y = reg.of_half_edge(m, tw(h));
        if q != y && (whole[fam as usize][q as usize]) {
            to[y as usize].push(q);
        }
    }
    let mut dist = vec![u32::MAX; reg.count];
    let mut queue = VecDeque::new();
    for r in 0..reg.count as u32 {
        if is_sink(reg, r) {
            dist[r as usize] = 0;
            queue.push_back(r);
        }
    }
    while let Some(r) = queue.pop_front() {
        for &s in &to[r as usize] {
            if dist[s as usize] == u32::MAX {
                dist[s as usize] = dist[r as usize] + 1;
                queue.push_back(s);
            }
        }
    }
    dist
}

fn root(p: &mut [u32], mut x: u32) -> u32 {
    while p[x as usize] != x {
        p[x as usize] = p[p[x as usize] as usize];
        x = p[x as usize];
    }
    x
}

/// Lexicographic measure of how far a diagram is from nice. `weighted` sums
/// `badness * (1 + sink distance)` over regions, so a finger may raise the
/// total badness when it brings bad regions next to a sink.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Potential {
    pub non_disks: u32,
    pub weighted: u64,
    pub badness: u32,
    pub size: usize,
}

pub fn potential(m: &Map) -> Potential {
    let reg = Regions::compute(m);
    let dist = sink_distances(m, &reg);
    let mut p = Potential { non_disks: 0, weighted: 0, badness: 0, size: m.half_edges() };
    for r in 0..reg.count as u32 {
        if r == reg.w {
            continue;
        }
        if !reg.is_disk(r) {
            p.non_disks += 1;
        }
        let b = reg.badness(r);
        p.badness += b;
        p.weighted += b as u64 * (1 + dist[r as usize].min(1 << 16) as u64);
    }
    p
}

/// Shortest face path from `from` to a face satisfying `goal`, never
/// entering `banned` faces. Returns the crossed half-edges.
fn route(
    m: &Map,
    fam: Family,
    by_face: &[Vec<u32>],
    from: u32,
    banned: &[bool],
    goal: &dyn Fn(u32) -> bool,
) -> Option<Vec<u32>> {
    let mut dist = vec![u32::MAX; m.nfaces];
    let mut via = vec![NONE; m.nfaces];
    let mut dq = VecDeque::new();
    dist[from as usize] = 0;
    dq.push_back(from);
    let mut hit = None;
    while let Some(f) = dq.pop_front() {
        if goal(f) {
            hit = Some(f);
            break;
        }
        let d = dist[f as usize];
        for &h in &by_face[f as usize] {
            let k = m.kind(h);
            if !crossable(fam, k) {
                continue;
            }
            let g = m.face[tw(h) as usize];
            if banned[g as usize] {
                continue;
            }
            let c = u32::from(k.is_curve());
            if d + c < dist[g as usize] {
                dist[g as usize] = d + c;
                via[g as usize] = h;
                if c == 0 {
                    dq.push_front(g);
                } else {
                    dq.push_back(g);
                }
            }
        }
    }
    let mut f = hit?;
    let mut out = Vec::new();
    while f != from {
        let h = via[f as usize];
        out.push(h);
        f = m.face[h as usize];
    }
    out.reverse();
    Some(out)
}

/// Candidate fingers pushed into region `r`: one per curve side of `r`,
/// exit side of the other family, and goal (nearest sink, nearest `w`).
pub fn candidates(m: &Map, reg: &Regions, by_face: &[Vec<u32>], r: u32) -> Vec<Finger> {
    candidates_from(m, reg, by_face, r, &|_| true)
}

/// As [`candidates`], for fingers whose starting half-edge passes `start`.
fn candidates_from(
    m: &Map,
    reg: &Regions,
    by_face: &[Vec<u32>],
    r: u32,
    start: &dyn Fn(u32) -> bool,
) -> Vec<Finger> {
    let bigon = |f: u32| {
        let q = reg.of_face[f as usize];
        q != r && is_sink(reg, q)
    };
    let to_w = |f: u32| reg.of_face[f as usize] == reg.w;
    let mut out = Vec::new();
    for h in 0..m.half_edges() as u32 {
        let Some(fam) = m.kind(h).family() else { continue };
        if reg.of_half_edge(m, h) != r || !start(h) {
            continue;
        }
        let f0 = m.face[h as usize];
        // Faces of `r` reachable from f0 across phantoms, with the path used.
        let mut seen = vec![false; m.nfaces];
        let mut leg: Vec<(u32, Vec<u32>)> = vec![(f0, Vec::new())];
        seen[f0 as usize] = true;
        let mut i = 0;
        while i < leg.len() {
            let (f, ref p) = leg[i];
            let p = p.clone();
            for &g in &by_face[f as usize] {
                let k = m.kind(g);
                if k.is_curve() || !crossable(fam, k) {
                    continue;
                }
                let nf = m.face[tw(g) as usize];
                if !seen[nf as usize] {
                    seen[nf as usize] = true;
                    let mut np = p.clone();
                    np.push(g);
                    leg.push((nf, np));
                }
            }
            i += 1;
        }
        for (f, p) in &leg {
            for &g in &by_face[*f as usize] {
                let k = m.kind(g);
                if !k.is_curve() || !crossable(fam, k) {
                    continue;
                }
                let nf = m.face[tw(g) as usize];
                if reg.of_face[nf as usize] == r {
                    continue;
                }
                let mut banned = vec![false; m.nfaces];
                banned[f0 as usize] = true;
                for &x in p {
                    banned[m.face[tw(x) as usize] as usize] = true;
                }
                for goal in [&bigon as &dyn Fn(u32) -> bool, &to_w] {
                    if let Some(rest) = route(m, fam, by_face, nf, &banned, goal) {
                        let mut path = p.clone();
                        path.push(g);
                        path.extend(rest);
                        let fg = Finger { start: h, path };
                        if !out.contains(&fg) {
                            out.push(fg);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Statistics of a nicefication run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NiceStats {
    pub fingers: usize,
    /// Steps where no single finger helped.
    pub lookaheads: usize,
    /// Index of the order that succeeded.
    pub attempt: usize,
}

/// Every single finger relieving some bad region.
fn children(m: &Map) -> Vec<Finger> {
    let reg = Regions::compute(m);
    let by_face = half_edges_by_face(m);
    let mut out = Vec::new();
    for r in 0..reg.count as u32 {
        if r != reg.w && (!reg.is_disk(r) || reg.badness(r) > 0) {
            out.extend(candidates(m, &reg, &by_face, r));
        }
    }
    out
}

/// Which part of the [`Potential`] a search step tries to lower first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Weighted badness, then total badness.
    Weighted,
    /// Total badness, then weighted badness.
    Badness,
}

type Key = (u32, u64, u64, usize);

fn key(o: Order, p: &Potential) -> Key {
    match o {
        Order::Weighted => (p.non_disks, p.weighted, p.badness as u64, p.size),
        Order::Badness => (p.non_disks, p.badness as u64, p.weighted, p.size),
    }
}

/// Applies each finger to a copy of `m`, best resulting key first. The sort
/// is stable, so ties keep candidate order.
fn scored(m: &Map, o: Order) -> Vec<(Key, Map)> {
    let mut out: Vec<(Key, Map)> = children(m)
        .iter()
        .map(|fg| {
            let mut t = m.clone();
            apply_finger(&mut t, fg);
            (key(o, &potential(&t)), t)
        })
        .collect();
    out.sort_by_key(|c| c.0);
    out
}

/// Depth-limited search for a short sequence of fingers ending below
/// `target`. Intermediate steps may not raise the first two key entries.
fn lookahead(m: &Map, o: Order, target: Key, depth: usize, width: usize) -> Option<Vec<Map>> {
    let kids = scored(m, o);
    if let Some((k, c)) = kids.first() {
        if *k < target {
            return Some(vec![c.clone()]);
        }
    }
    if depth <= 1 {
        return None;
    }
    for (k, c) in kids.into_iter().take(width) {
        if (k.0, k.1) > (target.0, target.1) {
            continue;
        }
        if let Some(mut seq) = lookahead(&c, o, target, depth - 1, width) {
            seq.insert(0, c);
            return Some(seq);
        }
    }
    None
}

/// Applies finger moves until every region other than the `w` region is a
/// bigon or a square.
///
/// Each step takes the finger that lowers the potential most in the given
/// order; when none does, a short lookahead picks a sequence that does.
/// The orders are tried in turn, each from the original diagram.
pub fn nicefy(d: &mut Diagram, max_moves: usize) -> Result<NiceStats, HeegaardError> {
    nicefy_with(d, max_moves, &[Order::Badness, Order::Weighted])
}

pub fn nicefy_with(
    d: &mut Diagram,
    max_moves: usize,
    orders: &[Order],
) -> Result<NiceStats, HeegaardError> {
    for (i, &o) in orders.iter().enumerate() {
        let mut m = d.map.clone();
        if let Some(mut stats) = descend(&mut m, o, max_moves) {
            stats.attempt = i;
            d.map = m;
            return Ok(stats);
        }
    }
    Err(HeegaardError::NotNice)
}

const LOOKAHEAD_DEPTH: usize = 3;
const LOOKAHEAD_WIDTH: usize = 12;

fn descend(m: &mut Map, o: Order, max_moves: usize) -> Option<NiceStats> {
    let mut stats = NiceStats::default();
    loop {
        if Regions::compute(m).is_nice() {
            return Some(stats);
        }
        if stats.fingers >= max_moves {
            return None;
        }
        let cur = key(o, &potential(m));
        let mut kids = scored(m, o);
        let seq = if kids.first().is_some_and(|c| c.0 < cur) {
            vec![kids.swap_remove(0).1]
        } else {
            stats.lookaheads += 1;
            lookahead(m, o, cur, LOOKAHEAD_DEPTH, LOOKAHEAD_WIDTH)?
        };
        stats.fingers += seq.len();
        if let Some(last) = seq.into_iter().last() {
            *m = last;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heegaard::build;
    use crate::openbook::OpenBook;
    use crate::surface::ArcBasis;

    #[test]
    fn single_fingers_keep_the_surface_and_the_halves() {
        for w in ["X", "xY", "yyX"] {
            let ob = OpenBook::new(1, w).unwrap();
            let d = build(&ob, &ArcBasis::standard(&ob.surface)).unwrap();
            let kids = children(&d.map);
            assert!(!kids.is_empty());
            for f in kids {
                let mut e = d.clone();
                apply_finger(&mut e.map, &f);
                assert!(e.map.check().is_ok(), "{w} {f:?}");
                assert_eq!(e.map.euler_characteristic(), d.map.euler_characteristic());
                assert!(e.minus_sigma_domain().is_ok(), "{w} {f:?}");
            }
        }
    }

    #[test]
    fn both_orders_are_tried() {
        let ob = OpenBook::new(1, "xY").unwrap();
        let mut d = build(&ob, &ArcBasis::standard(&ob.surface)).unwrap();
        let s = nicefy_with(&mut d, 300, &[Order::Weighted]).unwrap();
        assert_eq!(s.attempt, 0);
        assert!(d.is_nice());
        let mut d = build(&ob, &ArcBasis::standard(&ob.surface)).unwrap();
        assert_eq!(nicefy_with(&mut d, 0, &[Order::Badness, Order::Weighted]), Err(HeegaardError::NotNice));
    }
}
