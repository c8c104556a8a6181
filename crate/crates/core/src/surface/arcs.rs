use super::{
    apply_twist, independent, BPoint, CombinatorialSurface, Endpoint, Path, Pos, SurfaceError,
    POS_SCALE,
};
use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("expected {expected} arcs, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("arcs {0} and {1} intersect")]
    NotDisjoint(usize, usize),
    #[error("arcs do not cut the surface into a disk")]
    NotIndependent,
    #[error("two marked points share a position")]
    CoincidentFeet,
    #[error("foot of arc {0} is not next to a foot of arc {1}")]
    NotAdjacent(usize, usize),
    #[error("no foot of arc {0} is next to the basepoint")]
    NotNextToBasepoint(usize),
    #[error("no arcslide sequence of length at most {0} found")]
    NoSlideSequence(usize),
    #[error("could not complete the arcs to a basis")]
    CannotComplete,
}

/// A marked point on ∂Σ belonging to a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mark {
    Foot(usize, Endpoint),
    Z,
}

/// One arcslide: a foot of arc `i` slides over arc `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlideStep {
    pub i: usize,
    pub j: usize,
    pub foot: Endpoint,
}

/// `2g` disjoint arcs cutting Σ into a disk, plus the basepoint `z` on ∂Σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcBasis {
    pub arcs: Vec<Path>,
    pub z: BPoint,
}

fn other(e: Endpoint) -> Endpoint {
    match e {
        Endpoint::Start => Endpoint::End,
        Endpoint::End => Endpoint::Start,
    }
}

fn mid(a: Pos, b: Pos) -> Pos {
    a + (b - a) / 2
}

impl ArcBasis {
    /// Reference arcs pushed into `P`; `z` sits just after the end foot of
    /// the first arc.
    pub fn standard(s: &CombinatorialSurface) -> ArcBasis {
        let arcs: Vec<Path> = (0..s.arc_count()).map(|r| s.standard_arc(r)).collect();
        let end = arcs[0].endpoints().unwrap().1;
        ArcBasis { arcs, z: BPoint { side: end.side, pos: end.pos + POS_SCALE / 64 } }
    }

    pub fn foot(&self, i: usize, e: Endpoint) -> BPoint {
        let (a, b) = self.arcs[i].endpoints().expect("basis arcs are arcs");
        match e {
            Endpoint::Start => a,
            Endpoint::End => b,
        }
    }

    /// All marked points in ∂Σ order, starting from the first boundary interval.
    pub fn marks(&self, s: &CombinatorialSurface) -> Vec<(Mark, BPoint)> {
        let mut v: Vec<(Mark, BPoint)> = Vec::new();
        for i in 0..self.arcs.len() {
            for e in [Endpoint::Start, Endpoint::End] {
                v.push((Mark::Foot(i, e), self.foot(i, e)));
            }
        }
        v.push((Mark::Z, self.z));
        let circ = s.boundary_circuit();
        let mut idx = alloc::vec![0usize; s.side_count() as usize];
        for (k, &b) in circ.iter().enumerate() {
            idx[b as usize] = k;
        }
        v.sort_by_key(|(_, p)| (idx[p.side as usize], p.pos));
        v
    }

    /// Checks disjointness, distinct feet and the disk condition.
    pub fn validate(&self, s: &CombinatorialSurface) -> Result<(), BasisError> {
        if self.arcs.len() != s.arc_count() {
            return Err(BasisError::WrongCount { expected: s.arc_count(), found: self.arcs.len() });
        }
        let marks = self.marks(s);
        for w in 0..marks.len() {
            let nxt = (w + 1) % marks.len();
            if marks[w].1 == marks[nxt].1 {
                return Err(BasisError::CoincidentFeet);
            }
        }
        for (i, a) in self.arcs.iter().enumerate() {
            let sc = s.self_crossings(a);
            if sc != 0 {
                return Err(SurfaceError::NotEmbedded(i, sc).into());
            }
            for j in i + 1..self.arcs.len() {
                if s.intersection_number(a, &self.arcs[j]) != 0 {
                    return Err(BasisError::NotDisjoint(i, j));
                }
            }
        }
        if !independent(s, &self.arcs) {
            return Err(BasisError::NotIndependent);
        }
        Ok(())
    }

    fn neighbours(&self, s: &CombinatorialSurface, m: Mark) -> (Mark, Mark) {
        let marks = self.marks(s);
        let k = marks.iter().position(|(x, _)| *x == m).unwrap();
        let n = marks.len();
        (marks[(k + n - 1) % n].0, marks[(k + 1) % n].0)
    }

    fn mark_point(&self, m: Mark) -> BPoint {
        match m {
            Mark::Z => self.z,
            Mark::Foot(i, e) => self.foot(i, e),
        }
    }

    /// A free position right next to `m`, after it if `after` is set.
    fn beside(&self, s: &CombinatorialSurface, m: Mark, after: bool) -> BPoint {
        let p = self.mark_point(m);
        let (prev, next) = self.neighbours(s, m);
        if after {
            let q = self.mark_point(next);
            let hi = if q.side == p.side && q.pos > p.pos { q.pos } else { POS_SCALE };
            BPoint { side: p.side, pos: mid(p.pos, hi) }
        } else {
            let q = self.mark_point(prev);
            let lo = if q.side == p.side && q.pos < p.pos { q.pos } else { 0 };
            BPoint { side: p.side, pos: mid(lo, p.pos) }
        }
    }

    /// Slides foot `foot` of arc `i` along ∂Σ to the adjacent foot of arc `j`
    /// and then along `j` to beside its other foot.
    pub fn arcslide(
        &self,
        s: &CombinatorialSurface,
        i: usize,
        j: usize,
        foot: Endpoint,
    ) -> Result<ArcBasis, BasisError> {
        if i == j {
            return Err(BasisError::NotAdjacent(i, j));
        }
        let me = Mark::Foot(i, foot);
        let (prev, next) = self.neighbours(s, me);
        let (g, forward) = match (next, prev) {
            (Mark::Foot(jj, e), _) if jj == j => (e, true),
            (_, Mark::Foot(jj, e)) if jj == j => (e, false),
            _ => return Err(BasisError::NotAdjacent(i, j)),
        };
        let ai = match foot {
            Endpoint::End => self.arcs[i].clone(),
            Endpoint::Start => s.reverse(&self.arcs[i]),
        };
        let aj = match g {
            Endpoint::Start => self.arcs[j].clone(),
            Endpoint::End => s.reverse(&self.arcs[j]),
        };
        let f = self.foot(i, foot);
        let gp = self.foot(j, g);
        let mut cross = ai.cross.clone();
        cross.extend(s.boundary_walk(f, gp, forward));
        cross.extend_from_slice(&aj.cross);
        let cross = s.reduce(&cross);
        let start = ai.endpoints().unwrap().0;
        let far = Mark::Foot(j, other(g));
        for after in [true, false] {
            let cand = Path::arc(start, self.beside(s, far, after), cross.clone());
            let Ok(cand) = s.normalize(&cand) else { continue };
            if s.self_crossings(&cand) != 0 {
                continue;
            }
            let cand = match foot {
                Endpoint::End => cand,
                Endpoint::Start => s.reverse(&cand),
            };
            let mut out = self.clone();
            out.arcs[i] = cand;
            if out
                .arcs
                .iter()
                .enumerate()
                .all(|(k, a)| k == i || s.intersection_number(a, &out.arcs[i]) == 0)
                && out.validate(s).is_ok()
            {
                return Ok(out);
            }
        }
        Err(BasisError::NotAdjacent(i, j))
    }

    /// Canonical representative of arc `i` rel the other marked points: each
    /// foot is moved back to just after the preceding mark.
    fn canonical_arc(&self, s: &CombinatorialSurface, i: usize) -> Path {
        let marks = self.marks(s);
        let n = marks.len();
        let mut arc = self.arcs[i].clone();
        for e in [Endpoint::Start, Endpoint::End] {
            let k = marks.iter().position(|(m, _)| *m == Mark::Foot(i, e)).unwrap();
            let mut back = 1;
            let mut extra = 1;
            while let (Mark::Foot(ii, _), _) = marks[(k + n - back) % n] {
                if ii != i {
                    break;
                }
                back += 1;
                extra += 1;
            }
            let anchor = marks[(k + n - back) % n].1;
            let to = BPoint { side: anchor.side, pos: anchor.pos + extra };
            arc = s.move_foot(&arc, e, to, false);
        }
        arc
    }

    /// Finds arcslides of arc `i`, never crossing `z`, whose composite equals
    /// pushing the foot of `i` next to `z` across `z`.
    pub fn slide_foot_past_basepoint(
        &self,
        s: &CombinatorialSurface,
        i: usize,
    ) -> Result<(ArcBasis, Vec<SlideStep>), BasisError> {
        let (zp, zn) = self.neighbours(s, Mark::Z);
        let (e, forward) = match (zp, zn) {
            (Mark::Foot(ii, e), _) if ii == i => (e, true),
            (_, Mark::Foot(ii, e)) if ii == i => (e, false),
            _ => return Err(BasisError::NotNextToBasepoint(i)),
        };
        let to = self.beside(s, Mark::Z, forward);
        let mut target = self.clone();
        target.arcs[i] = s.move_foot(&self.arcs[i], e, to, forward);
        target.validate(s)?;
        let goal = target.canonical_arc(s, i);
        let max_len = 2 * (2 * s.genus() - 1);
        let mut seen: BTreeSet<Path> = BTreeSet::new();
        let mut queue: VecDeque<(ArcBasis, Vec<SlideStep>)> = VecDeque::new();
        seen.insert(self.canonical_arc(s, i));
        queue.push_back((self.clone(), Vec::new()));
        while let Some((b, steps)) = queue.pop_front() {
            if b.canonical_arc(s, i) == goal {
                return Ok((b, steps));
            }
            if steps.len() == max_len {
                continue;
            }
            for foot in [Endpoint::Start, Endpoint::End] {
                for j in 0..b.arcs.len() {
                    if let Ok(nb) = b.arcslide(s, i, j, foot) {
                        if seen.insert(nb.canonical_arc(s, i)) {
                            let mut st = steps.clone();
                            st.push(SlideStep { i, j, foot });
                            queue.push_back((nb, st));
                        }
                    }
                }
            }
        }
        Err(BasisError::NoSlideSequence(max_len))
    }

    /// Applies a sequence of arcslides.
    pub fn apply_slides(
        &self,
        s: &CombinatorialSurface,
        steps: &[SlideStep],
    ) -> Result<ArcBasis, BasisError> {
        let mut b = self.clone();
        for st in steps {
            b = b.arcslide(s, st.i, st.j, st.foot)?;
        }
        Ok(b)
    }

    /// Extends disjoint independent arcs to a full basis, drawing candidates
    /// from twisted standard arcs.
    pub fn complete(
        s: &CombinatorialSurface,
        partial: &[Path],
        z: BPoint,
    ) -> Result<ArcBasis, BasisError> {
        let mut arcs: Vec<Path> = Vec::new();
        for a in partial {
            arcs.push(s.normalize(a)?);
        }
        if !independent(s, &arcs) {
            return Err(BasisError::NotIndependent);
        }
        let loops: Vec<Path> = (0..s.arc_count()).map(|r| s.dual_loop(r)).collect();
        let mut layer: Vec<Path> = (0..s.arc_count()).map(|r| s.standard_arc(r)).collect();
        let mut seen: BTreeSet<Path> = layer.iter().cloned().collect();
        for _depth in 0..4 {
            for c in &layer {
                if arcs.len() == s.arc_count() {
                    break;
                }
                for cand in nudged(s, c, &arcs, z) {
                    let mut t = arcs.clone();
                    t.push(cand.clone());
                    if arcs.iter().all(|a| s.intersection_number(a, &cand) == 0) && independent(s, &t)
                    {
                        arcs = t;
                        break;
                    }
                }
            }
            if arcs.len() == s.arc_count() {
                let b = ArcBasis { arcs, z };
                b.validate(s)?;
                return Ok(b);
            }
            let mut next = Vec::new();
            for c in &layer {
                for l in &loops {
                    for e in [1, -1] {
                        let t = apply_twist(s, c, l, e)?;
                        if seen.insert(t.clone()) {
                            next.push(t);
                        }
                    }
                }
            }
            layer = next;
        }
        Err(BasisError::CannotComplete)
    }

    /// Pushoffs `b_i`: each foot moved slightly forward along ∂Σ, past `z`
    /// if `z` comes right after it, so that `b_i` meets `a_i` once.
    pub fn pushoffs(&self, s: &CombinatorialSurface) -> Vec<Path> {
        (0..self.arcs.len())
            .map(|i| {
                let mut a = self.arcs[i].clone();
                for e in [Endpoint::Start, Endpoint::End] {
                    let mut m = Mark::Foot(i, e);
                    if self.neighbours(s, m).1 == Mark::Z {
                        m = Mark::Z;
                    }
                    let to = self.beside(s, m, true);
                    a = s.move_foot(&a, e, to, true);
                }
                a
            })
            .collect()
    }
}

/// Copies of `c` whose feet avoid the existing marked points.
fn nudged(s: &CombinatorialSurface, c: &Path, arcs: &[Path], z: BPoint) -> Vec<Path> {
    let mut taken: Vec<BPoint> = arcs.iter().flat_map(|a| {
        let (p, q) = a.endpoints().unwrap();
        [p, q]
    }).collect();
    taken.push(z);
    let (p, q) = c.endpoints().unwrap();
    let shift = |b: BPoint, d: i64| BPoint { side: b.side, pos: (b.pos as i64 + d) as Pos };
    let mut out = Vec::new();
    for dp in [0i64, 1 << 20, -(1 << 20)] {
        for dq in [0i64, 1 << 20, -(1 << 20)] {
            let (p2, q2) = (shift(p, dp), shift(q, dq));
            if taken.contains(&p2) || taken.contains(&q2) {
                continue;
            }
            if let Ok(a) = s.normalize(&Path::arc(p2, q2, c.cross.clone())) {
                out.push(a);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_basis_is_valid() {
        for g in 1..4 {
            let s = CombinatorialSurface::new(g).unwrap();
            ArcBasis::standard(&s).validate(&s).unwrap();
        }
    }

    #[test]
    fn pushoffs_meet_their_arc_once_and_others_never() {
        let s = CombinatorialSurface::new(2).unwrap();
        let b = ArcBasis::standard(&s);
        let p = b.pushoffs(&s);
        for i in 0..4 {
            for j in 0..4 {
                let n = s.intersection_number(&b.arcs[i], &p[j]);
                assert_eq!(n, usize::from(i == j), "a{i} b{j}");
            }
        }
    }

    #[test]
    fn arcslides_keep_a_basis() {
        let s = CombinatorialSurface::new(2).unwrap();
        let b = ArcBasis::standard(&s);
        let mut any = 0;
        for i in 0..4 {
            for j in 0..4 {
                for f in [Endpoint::Start, Endpoint::End] {
                    if let Ok(nb) = b.arcslide(&s, i, j, f) {
                        nb.validate(&s).unwrap();
                        assert_ne!(nb.arcs[i], b.arcs[i]);
                        any += 1;
                    }
                }
            }
        }
        assert!(any > 0);
    }

    #[test]
    fn basepoint_slide_is_realised_by_arcslides() {
        for g in 1..3 {
            let s = CombinatorialSurface::new(g).unwrap();
            let b = ArcBasis::standard(&s);
            let (nb, steps) = b.slide_foot_past_basepoint(&s, 0).unwrap();
            assert!(!steps.is_empty());
            assert!(steps.len() <= 2 * (2 * g - 1));
            nb.validate(&s).unwrap();
            assert_eq!(b.apply_slides(&s, &steps).unwrap(), nb);
        }
    }

    #[test]
    fn completion_recovers_a_basis() {
        let s = CombinatorialSurface::new(2).unwrap();
        let std = ArcBasis::standard(&s);
        let b = ArcBasis::complete(&s, &std.arcs[..1], std.z).unwrap();
        assert_eq!(b.arcs.len(), 4);
        assert_eq!(b.arcs[0], std.arcs[0]);
    }
}
