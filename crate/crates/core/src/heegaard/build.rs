use super::map::{twist as tw, EdgeKind, Family, Half, Map, VertexKind};
use super::{Diagram, HeegaardError};
use crate::openbook::OpenBook;
use crate::surface::layout::{in_open, SidePoint};
use crate::surface::{
    ArcBasis, BPoint, CombinatorialSurface, Endpoint, Layout, Mark, Path, PointRef, POS_SCALE,
};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// Positions of the clustered feet: `z`, then the pushed feet in order, then
/// `w`, all inside the gap of the basis that holds its basepoint.
struct Cluster {
    z: BPoint,
    w: BPoint,
    /// New position of each foot `(arc, endpoint)`.
    slot: BTreeMap<(usize, Endpoint), BPoint>,
}

fn cluster(s: &CombinatorialSurface, basis: &ArcBasis) -> Result<Cluster, HeegaardError> {
    let marks = basis.marks(s);
    let n = marks.len();
    let zi = marks.iter().position(|(m, _)| *m == Mark::Z).unwrap();
    let prev = marks[(zi + n - 1) % n].1;
    let next = marks[(zi + 1) % n].1;
    let zp = basis.z;
    let lo = if prev.side == zp.side && prev.pos < zp.pos { prev.pos } else { 0 };
    let hi = if next.side == zp.side && next.pos > zp.pos { next.pos } else { POS_SCALE };
    let feet: Vec<(usize, Endpoint)> = (1..n)
        .map(|k| match marks[(zi + k) % n].0 {
            Mark::Foot(i, e) => (i, e),
            Mark::Z => unreachable!(),
        })
        .collect();
    let count = feet.len() as u64 + 2;
    let step = (hi - lo) / (count + 1);
    if step == 0 {
        return Err(HeegaardError::Crowded);
    }
    let at = |k: u64| BPoint { side: zp.side, pos: lo + step * (k + 1) };
    let mut slot = BTreeMap::new();
    for (k, f) in feet.iter().enumerate() {
        slot.insert(*f, at(k as u64 + 1));
    }
    Ok(Cluster { z: at(0), w: at(count - 1), slot })
}

/// The β arcs on Σ: each α arc with both feet pushed forward along ∂Σ into
/// the cluster.
fn pushed_arcs(s: &CombinatorialSurface, basis: &ArcBasis, c: &Cluster) -> Vec<Path> {
    (0..basis.arcs.len())
        .map(|i| {
            let mut a = basis.arcs[i].clone();
            for e in [Endpoint::Start, Endpoint::End] {
                a = s.move_foot(&a, e, c.slot[&(i, e)], true);
            }
            a
        })
        .collect()
}

#[derive(Default)]
struct HalfSlots {
    /// Per ∂ vertex: the half-edges leaving it into this half, counterclockwise.
    fan: BTreeMap<u32, Vec<u32>>,
}

struct Builder<'a> {
    s: &'a CombinatorialSurface,
    m: Map,
    /// Vertex of each boundary foot `(family, index, endpoint)`.
    foot_v: BTreeMap<(Family, usize, Endpoint), u32>,
    /// Corner vertex at the end of each boundary interval.
    corner_end: Vec<u32>,
    n: usize,
}

impl<'a> Builder<'a> {
    fn corner_at(&self, u: u32, end: bool) -> u32 {
        let side = if end { self.s.partner(u) } else { u };
        self.corner_end[self.s.prev_side(side) as usize]
    }

    fn family_of(&self, obj: usize) -> (Family, usize) {
        if obj < self.n {
            (Family::Alpha, obj)
        } else {
            (Family::Beta, obj - self.n)
        }
    }

    /// Lays out one half. Returns the map from `(alpha chord, beta chord)`
    /// keys to intersection vertices.
    fn half(
        &mut self,
        half: Half,
        objs: &[Path],
        slots: &mut HalfSlots,
    ) -> BTreeMap<(usize, usize, usize, usize), u32> {
        let s = self.s;
        let refs: Vec<&Path> = objs.iter().collect();
        let lay = Layout::new(s, &refs);
        let n = self.n;
        let rev = |mut v: Vec<u32>| {
            if half == Half::MinusSigma {
                v.reverse();
            }
            v
        };

        // Reference arc points and edges.
        let mut on_ref: BTreeMap<PointRef, u32> = BTreeMap::new();
        let mut ref_slots: BTreeMap<PointRef, (u32, u32)> = BTreeMap::new();
        for r in 0..s.arc_count() {
            let u = s.plus_side(r);
            let mut chain = vec![self.corner_at(u, false)];
            let mut refs_here = Vec::new();
            for sp in lay.side_points(u) {
                let SidePoint::Cross(p) = *sp else { continue };
                let (family, index) = self.family_of(p.obj as usize);
                let v = self.m.add_vertex(VertexKind::OnRef { family, index: index as u32, half });
                on_ref.insert(p, v);
                chain.push(v);
                refs_here.push(p);
            }
            chain.push(self.corner_at(u, true));
            let mut edges = Vec::new();
            for w in chain.windows(2) {
                edges.push(self.m.add_edge(w[0], w[1], EdgeKind::Ref, half, half));
            }
            for (j, p) in refs_here.iter().enumerate() {
                ref_slots.insert(*p, (edges[j + 1], tw(edges[j])));
            }
            slots.fan.entry(chain[0]).or_default().push(edges[0]);
            slots.fan.entry(*chain.last().unwrap()).or_default().push(tw(*edges.last().unwrap()));
        }

        // Intersection vertices, created from the α side.
        let betas: Vec<usize> = (n..2 * n).collect();
        let alphas: Vec<usize> = (0..n).collect();
        let mut inter: BTreeMap<(usize, usize, usize, usize), u32> = BTreeMap::new();
        for i in 0..n {
            for ca in 0..objs[i].chord_count() {
                for (j, cb) in lay.crossings_along(i, ca, &betas) {
                    let v = self.m.add_vertex(VertexKind::Intersection {
                        alpha: i as u32,
                        beta: (j - n) as u32,
                        half,
                    });
                    inter.insert((i, ca, j, cb), v);
                }
            }
        }

        // Curve edges. `along[(o, c)]` lists (vertex, half-edge forward,
        // half-edge backward) for every intersection on chord `c` of `o`.
        let mut at_inter: BTreeMap<u32, [(u32, u32); 2]> = BTreeMap::new();
        let mut entry_he: BTreeMap<PointRef, u32> = BTreeMap::new();
        let mut exit_he: BTreeMap<PointRef, u32> = BTreeMap::new();
        for (o, p) in objs.iter().enumerate() {
            let (family, index) = self.family_of(o);
            let kind = match family {
                Family::Alpha => EdgeKind::Alpha(index as u32),
                Family::Beta => EdgeKind::Beta(index as u32),
            };
            let others = if family == Family::Alpha { &betas } else { &alphas };
            let nc = p.chord_count();
            for c in 0..nc {
                let start = if c == 0 {
                    self.foot_v[&(family, index, Endpoint::Start)]
                } else {
                    on_ref[&PointRef { obj: o as u32, k: c as u32 - 1 }]
                };
                let end = if c + 1 == nc {
                    self.foot_v[&(family, index, Endpoint::End)]
                } else {
                    on_ref[&PointRef { obj: o as u32, k: c as u32 }]
                };
                let mut seq = vec![start];
                for (q, cq) in lay.crossings_along(o, c, others) {
                    let key = if family == Family::Alpha { (o, c, q, cq) } else { (q, cq, o, c) };
                    seq.push(inter[&key]);
                }
                seq.push(end);
                let mut es = Vec::new();
                for w in seq.windows(2) {
                    es.push(self.m.add_edge(w[0], w[1], kind, half, half));
                }
                for k in 1..seq.len() - 1 {
                    let slot = (es[k], tw(es[k - 1]));
                    let e = at_inter.entry(seq[k]).or_insert([(0, 0); 2]);
                    e[if family == Family::Alpha { 0 } else { 1 }] = slot;
                }
                if c == 0 {
                    slots.fan.entry(start).or_default().push(es[0]);
                } else {
                    entry_he.insert(PointRef { obj: o as u32, k: c as u32 - 1 }, es[0]);
                }
                let last = tw(*es.last().unwrap());
                if c + 1 == nc {
                    slots.fan.entry(end).or_default().push(last);
                } else {
                    exit_he.insert(PointRef { obj: o as u32, k: c as u32 }, last);
                }
            }
        }

        // Rotations at reference points.
        for (p, &v) in &on_ref {
            let _ = v;
            let u = s.plus_side(s.ref_arc(objs[p.obj as usize].cross[p.k as usize]));
            let exit_side = objs[p.obj as usize].cross[p.k as usize];
            let (cu, cp) = if exit_side == u {
                (exit_he[p], entry_he[p])
            } else {
                (entry_he[p], exit_he[p])
            };
            let (fwd, bwd) = ref_slots[p];
            self.m.set_rotation(&rev(vec![fwd, cu, bwd, cp]));
        }

        // Rotations at intersections.
        for (&(i, ca, j, cb), &v) in &inter {
            let [(a1, a0), (b1, b0)] = at_inter[&v];
            let ka = lay.chords(i)[ca];
            let kb = lay.chords(j)[cb];
            let ring = if in_open(ka.1, ka.0, kb.1) {
                vec![a1, b1, a0, b0]
            } else {
                vec![a1, b0, a0, b1]
            };
            self.m.set_rotation(&rev(ring));
        }
        inter
    }
}

/// Builds the doubled diagram for `ob` from the given arc basis.
pub fn build(ob: &OpenBook, basis: &ArcBasis) -> Result<Diagram, HeegaardError> {
    let s = &ob.surface;
    basis.validate(s)?;
    let n = s.arc_count();
    let cl = cluster(s, basis)?;
    let alphas: Vec<Path> = basis.arcs.clone();
    let betas: Vec<Path> = pushed_arcs(s, basis, &cl);
    let mut images = Vec::with_capacity(n);
    for b in &betas {
        images.push(ob.monodromy(b)?);
    }

    let mut bd = Builder {
        s,
        m: Map::new(),
        foot_v: BTreeMap::new(),
        corner_end: vec![u32::MAX; s.side_count() as usize],
        n,
    };

    // Boundary vertices in ∂Σ order.
    enum Item {
        Foot(Family, usize, Endpoint),
        Z,
        W,
    }
    let mut per_side: BTreeMap<u32, Vec<(u64, Item)>> = BTreeMap::new();
    for i in 0..n {
        for e in [Endpoint::Start, Endpoint::End] {
            let a = basis.foot(i, e);
            per_side.entry(a.side).or_default().push((a.pos, Item::Foot(Family::Alpha, i, e)));
            let b = cl.slot[&(i, e)];
            per_side.entry(b.side).or_default().push((b.pos, Item::Foot(Family::Beta, i, e)));
        }
    }
    per_side.entry(cl.z.side).or_default().push((cl.z.pos, Item::Z));
    per_side.entry(cl.w.side).or_default().push((cl.w.pos, Item::W));
    let mut circle: Vec<u32> = Vec::new();
    let mut zv = 0;
    let mut wv = 0;
    for b in s.boundary_circuit() {
        let mut items = per_side.remove(&b).unwrap_or_default();
        items.sort_by_key(|x| x.0);
        for w in items.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(HeegaardError::Crowded);
            }
        }
        for (_, it) in items {
            let v = match it {
                Item::Foot(f, i, e) => {
                    let v = bd.m.add_vertex(VertexKind::Foot { family: f, index: i as u32 });
                    bd.foot_v.insert((f, i, e), v);
                    v
                }
                Item::Z => {
                    zv = bd.m.add_vertex(VertexKind::Z);
                    zv
                }
                Item::W => {
                    wv = bd.m.add_vertex(VertexKind::W);
                    wv
                }
            };
            circle.push(v);
        }
        let c = bd.m.add_vertex(VertexKind::Corner);
        bd.corner_end[b as usize] = c;
        circle.push(c);
    }
    let nc = circle.len();
    let start = circle.iter().position(|&v| v == wv).unwrap();
    let mut bfwd = vec![0u32; nc];
    let mut bbwd = vec![0u32; nc];
    let mut gamma_beta = true;
    for k in 0..nc {
        let i = (start + k) % nc;
        let j = (i + 1) % nc;
        if circle[i] == zv {
            gamma_beta = false;
        }
        let h = bd.m.add_edge(circle[i], circle[j], EdgeKind::Bdry { gamma_beta }, Half::Sigma, Half::MinusSigma);
        bfwd[i] = h;
        bbwd[j] = tw(h);
    }

    let mut sig = HalfSlots::default();
    let mut neg = HalfSlots::default();
    let mut objs: Vec<Path> = alphas.clone();
    objs.extend(betas.iter().cloned());
    let inter_sigma = bd.half(Half::Sigma, &objs, &mut sig);
    let mut objs_neg: Vec<Path> = alphas.clone();
    objs_neg.extend(images.iter().cloned());
    bd.half(Half::MinusSigma, &objs_neg, &mut neg);

    for k in 0..nc {
        let v = circle[k];
        let mut ring = vec![bfwd[k]];
        ring.extend(sig.fan.get(&v).cloned().unwrap_or_default());
        ring.push(bbwd[k]);
        let mut back = neg.fan.get(&v).cloned().unwrap_or_default();
        back.reverse();
        ring.extend(back);
        bd.m.set_rotation(&ring);
    }
    let mut m = bd.m;
    m.compute_faces();
    m.check().map_err(HeegaardError::Inconsistent)?;
    let g = s.genus() as i64;
    if m.euler_characteristic() != 2 - 4 * g {
        return Err(HeegaardError::Inconsistent("wrong Euler characteristic"));
    }

    // The contact generator: on Σ, the point of α_i ∩ β_i cutting off a
    // trivial triangle with ∂Σ.
    let mut contact = Vec::with_capacity(n);
    for i in 0..n {
        let a = &alphas[i];
        let b = &betas[i];
        let a0 = a.endpoints().unwrap().0;
        let b0 = b.endpoints().unwrap().0;
        let back = s.boundary_walk(b0, a0, false);
        let mut hits = Vec::new();
        for (&(ai, ca, bj, cb), &v) in &inter_sigma {
            if ai != i || bj != n + i {
                continue;
            }
            let mut word: Vec<u32> = a.cross[..ca].to_vec();
            word.extend(b.cross[..cb].iter().rev().map(|&x| s.partner(x)));
            word.extend_from_slice(&back);
            if s.cyclic_reduce(&word).is_empty() {
                hits.push(v);
            }
        }
        if hits.len() != 1 {
            return Err(HeegaardError::Inconsistent("contact point not unique"));
        }
        contact.push(hits[0]);
    }

    Ok(Diagram { genus: s.genus(), n, map: m, z: zv, w: wv, contact })
}
