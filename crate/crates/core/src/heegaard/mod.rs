//! Doubly pointed Heegaard diagrams adapted to an open book.
//!
//! The closed surface is `S = Σ ∪ −Σ`. The α curves are the basis arcs on
//! both halves; the β curves are pushed-off arcs on Σ closed up by their
//! monodromy images on −Σ. The pushed feet are clustered in one gap of ∂Σ,
//! between the basepoint `z` (after the last α foot) and `w` (after the last
//! β foot), so that ∂Σ splits into `γ_β` (from `w` to `z`, through α feet)
//! and `γ_α` (from `z` to `w`, through β feet).
//!
//! The complex built from this diagram is that of `(S, β, α, z, w)`:
//! domains avoid `w` and the Alexander grading drops by their `z`
//! multiplicity.

mod build;
pub mod map;
pub mod nice;

pub use build::build;
pub use map::{EdgeKind, Family, Half, Map, Regions, VertexKind};
pub use nice::{apply_finger, nicefy, nicefy_with, Finger, NiceStats, Order};

use crate::surface::{BasisError, SurfaceError};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeegaardError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error("not enough room on the boundary for the clustered feet")]
    Crowded,
    #[error("inconsistent diagram: {0}")]
    Inconsistent(&'static str),
    #[error("{count} generators exceed the cap of {cap}")]
    CapExceeded { count: u128, cap: u64 },
    #[error("nicefication did not converge")]
    NotNice,
}

/// A doubly pointed diagram together with its distinguished points.
#[derive(Clone, Debug)]
pub struct Diagram {
    /// Genus of the fiber; `S` has genus `2 * genus`.
    pub genus: usize,
    /// Number of α (and of β) curves.
    pub n: usize,
    pub map: Map,
    pub z: u32,
    pub w: u32,
    /// The contact points `c_i`, indexed by α curve.
    pub contact: Vec<u32>,
}

/// Generators as rows of `n` intersection vertices, row `i` on `α_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Generators {
    pub n: usize,
    pub flat: Vec<u32>,
}

impl Generators {
    pub fn len(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.flat.len() / self.n
        }
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn get(&self, k: usize) -> &[u32] {
        &self.flat[k * self.n..(k + 1) * self.n]
    }
}

impl Diagram {
    /// Intersection vertices sorted into the `n × n` table `α_i ∩ β_j`.
    pub fn crossing_table(&self) -> Vec<Vec<Vec<u32>>> {
        let mut t = vec![vec![Vec::new(); self.n]; self.n];
        for (v, k) in self.map.vkind.iter().enumerate() {
            if let VertexKind::Intersection { alpha, beta, .. } = *k {
                t[alpha as usize][beta as usize].push(v as u32);
            }
        }
        t
    }

    /// Permanent of the crossing-count matrix, by dynamic programming over
    /// subsets of β curves.
    pub fn generator_count(&self) -> u128 {
        let t = self.crossing_table();
        let n = self.n;
        let mut dp = vec![0u128; 1 << n];
        dp[0] = 1;
        for mask in 0..(1usize << n) {
            let i = mask.count_ones() as usize;
            if i >= n || dp[mask] == 0 {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    dp[mask | (1 << j)] += dp[mask] * t[i][j].len() as u128;
                }
            }
        }
        dp[(1 << n) - 1]
    }

    /// All generators, refusing when there are more than `cap`.
    pub fn generators(&self, cap: u64) -> Result<Generators, HeegaardError> {
        let count = self.generator_count();
        if count > cap as u128 {
            return Err(HeegaardError::CapExceeded { count, cap });
        }
        let t = self.crossing_table();
        let n = self.n;
        let mut out = Generators { n, flat: Vec::with_capacity(count as usize * n) };
        let mut cur = vec![0u32; n];
        fn rec(t: &[Vec<Vec<u32>>], i: usize, used: u32, cur: &mut [u32], out: &mut Generators) {
            let n = cur.len();
            if i == n {
                out.flat.extend_from_slice(cur);
                return;
            }
            for j in 0..n {
                if used & (1 << j) != 0 {
                    continue;
                }
                for &v in &t[i][j] {
                    cur[i] = v;
                    rec(t, i + 1, used | (1 << j), cur, out);
                }
            }
        }
        rec(&t, 0, 0, &mut cur, &mut out);
        Ok(out)
    }

    pub fn half_of(&self, v: u32) -> Option<Half> {
        match self.map.vkind[v as usize] {
            VertexKind::Intersection { half, .. } => Some(half),
            _ => None,
        }
    }

    /// Components on −Σ minus the fiber genus.
    pub fn alexander_grading(&self, x: &[u32]) -> i32 {
        let k = x.iter().filter(|&&v| self.half_of(v) == Some(Half::MinusSigma)).count();
        k as i32 - self.genus as i32
    }

    /// The −Σ half as a 2-chain on faces, checked to be a relative periodic
    /// domain: its boundary runs along ∂Σ only, once.
    pub fn minus_sigma_domain(&self) -> Result<PeriodicDomain, HeegaardError> {
        let fh = self.map.face_half();
        let coef: Vec<i32> = fh.iter().map(|&h| i32::from(h == Half::MinusSigma)).collect();
        // Finger moves split ∂Σ edges in either direction, so the boundary is
        // checked as a 1-chain: nonzero exactly on ∂Σ and closed.
        let mut flux = vec![0i32; self.map.vertices()];
        let mut gamma = 0;
        for h in (0..self.map.half_edges() as u32).step_by(2) {
            let l = coef[self.map.face[h as usize] as usize];
            let r = coef[self.map.face[h as usize + 1] as usize];
            let on_bdry = matches!(self.map.kind(h), EdgeKind::Bdry { .. });
            match (on_bdry, l - r) {
                (false, 0) => {}
                (false, _) => return Err(HeegaardError::Inconsistent("−Σ boundary leaves ∂Σ")),
                (true, 0) => return Err(HeegaardError::Inconsistent("−Σ boundary is not ∂Σ")),
                (true, c) => {
                    flux[self.map.origin[h as usize] as usize] += c;
                    flux[self.map.dest(h) as usize] -= c;
                    // The lowest ∂Σ edge predates every finger move.
                    if gamma == 0 {
                        gamma = c;
                    }
                }
            }
        }
        if flux.iter().any(|&f| f != 0) {
            return Err(HeegaardError::Inconsistent("−Σ boundary is not closed"));
        }
        let mut p = PeriodicDomain { face_coef: coef, gamma_mult: gamma, n_z4: 0, n_w4: 0 };
        p.n_z4 = self.point_multiplicity4(&p, &[self.z]);
        p.n_w4 = self.point_multiplicity4(&p, &[self.w]);
        Ok(p)
    }

    /// Four times the summed average multiplicity of `p` at the points `x`.
    pub fn point_multiplicity4(&self, p: &PeriodicDomain, x: &[u32]) -> i32 {
        let m = self.vertex_multiplicity4(p);
        x.iter().map(|&v| m[v as usize]).sum()
    }

    /// Four times the average multiplicity of `p` at every vertex.
    pub fn vertex_multiplicity4(&self, p: &PeriodicDomain) -> Vec<i32> {
        let out = self.map.vertex_out();
        out.iter()
            .map(|&h0| {
                if h0 == map::NONE {
                    return 0;
                }
                let ring = self.map.ring(h0);
                let sum: i32 =
                    ring.iter().map(|&h| p.face_coef[self.map.face[h as usize] as usize]).sum();
                4 * sum / ring.len() as i32
            })
            .collect()
    }

    /// Checks `A(x) - A(y) = n_x(P) - n_y(P)` for every pair of the given
    /// generators. Both sides are sums over components, so it suffices that
    /// `A(x) - n_x(P)` is the same for all `x`.
    pub fn grading_crosscheck(&self, p: &PeriodicDomain, gens: &Generators) -> bool {
        let m = self.vertex_multiplicity4(p);
        let mut first = None;
        for k in 0..gens.len() {
            let x = gens.get(k);
            let n: i32 = x.iter().map(|&v| m[v as usize]).sum();
            let d = 4 * self.alexander_grading(x) - n;
            match first {
                None => first = Some(d),
                Some(f) if f != d => return false,
                _ => {}
            }
        }
        true
    }

    pub fn regions(&self) -> Regions {
        Regions::compute(&self.map)
    }

    pub fn is_nice(&self) -> bool {
        self.regions().is_nice()
    }

    /// Deterministic text dump: region census, crossings with side tags and
    /// the vertex sequence of every curve.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let reg = self.regions();
        let _ = writeln!(s, "regions {} w={} z={}", reg.count, reg.w, reg.z);
        for r in 0..reg.count {
            let _ = writeln!(s, "  r{} corners={} euler={}", r, reg.corners[r], reg.euler[r]);
        }
        for (v, k) in self.map.vkind.iter().enumerate() {
            if let VertexKind::Intersection { alpha, beta, half } = k {
                let _ = writeln!(s, "x{} a{} b{} {:?}", v, alpha, beta, half);
            }
        }
        for (fam, name) in [(Family::Alpha, 'a'), (Family::Beta, 'b')] {
            for i in 0..self.n as u32 {
                let _ = write!(s, "{}{}:", name, i);
                for v in self.curve_vertices(fam, i) {
                    let _ = write!(s, " {}", v);
                }
                let _ = writeln!(s);
            }
        }
        s
    }

    /// Intersection vertices met along a curve, starting from its first one
    /// in vertex order.
    pub fn curve_vertices(&self, fam: Family, i: u32) -> Vec<u32> {
        let m = &self.map;
        let is_mine = |h: u32| match m.kind(h) {
            EdgeKind::Alpha(j) => fam == Family::Alpha && j == i,
            EdgeKind::Beta(j) => fam == Family::Beta && j == i,
            _ => false,
        };
        let Some(h0) = (0..m.half_edges() as u32).find(|&h| is_mine(h)) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut h = h0;
        loop {
            let v = m.dest(h);
            if m.is_intersection(v) {
                out.push(v);
            }
            let back = map::twist(h);
            let next = m.ring(back).into_iter().find(|&e| e != back && is_mine(e));
            match next {
                Some(e) => h = e,
                None => break,
            }
            if h == h0 {
                break;
            }
        }
        out
    }
}

/// A relative periodic domain given by face coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicDomain {
    pub face_coef: Vec<i32>,
    /// Multiplicity of ∂Σ in the boundary.
    pub gamma_mult: i32,
    /// Four times the multiplicity at `z` and `w` (which sit on ∂Σ).
    pub n_z4: i32,
    pub n_w4: i32,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::openbook::OpenBook;
    use crate::surface::ArcBasis;

    fn diagram(g: usize, w: &str) -> Diagram {
        let ob = OpenBook::new(g, w).unwrap();
        build(&ob, &ArcBasis::standard(&ob.surface)).unwrap()
    }

    fn nice_diagram(g: usize, w: &str) -> Diagram {
        let mut d = diagram(g, w);
        nicefy(&mut d, 300).unwrap();
        d
    }

    /// Sum over permutations, written out directly.
    fn permanent(t: &[Vec<Vec<u32>>]) -> u128 {
        fn go(t: &[Vec<Vec<u32>>], i: usize, used: &mut Vec<bool>) -> u128 {
            if i == t.len() {
                return 1;
            }
            let mut s = 0;
            for j in 0..t.len() {
                if !used[j] {
                    used[j] = true;
                    s += t[i][j].len() as u128 * go(t, i + 1, used);
                    used[j] = false;
                }
            }
            s
        }
        go(t, 0, &mut vec![false; t.len()])
    }

    #[test]
    fn doubled_surface_has_twice_the_genus() {
        for (g, w) in [(1, ""), (1, "xY"), (2, "x1z1"), (3, "y2")] {
            let d = diagram(g, w);
            assert!(d.map.check().is_ok());
            assert_eq!(d.map.euler_characteristic(), 2 - 4 * g as i64, "{w}");
            assert_eq!(d.n, 2 * g);
        }
    }

    #[test]
    fn generator_count_matches_permanent() {
        for (g, w) in [(1, "xy"), (1, "xxY"), (2, "z1"), (2, "x1Y2")] {
            let d = diagram(g, w);
            let p = permanent(&d.crossing_table());
            assert_eq!(d.generator_count(), p);
            assert_eq!(d.generators(u64::MAX).unwrap().len() as u128, p);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = diagram(1, "xy");
        let n = d.generator_count() as u64;
        assert!(d.generators(n).is_ok());
        assert_eq!(d.generators(n - 1), Err(HeegaardError::CapExceeded { count: n as u128, cap: n - 1 }));
    }

    #[test]
    fn contact_points_sit_at_the_bottom_grading() {
        for (g, w) in [(1, "xy"), (1, "XY"), (2, "y1Z1")] {
            let d = nice_diagram(g, w);
            assert_eq!(d.contact.len(), d.n);
            assert_eq!(d.alexander_grading(&d.contact), -(g as i32));
        }
    }

    #[test]
    fn nicefy_reaches_a_nice_diagram_of_the_same_surface() {
        for w in ["xy", "XY", "xY", "xxyX"] {
            let before = diagram(1, w);
            let mut d = before.clone();
            assert!(!d.is_nice() || w.is_empty());
            nicefy(&mut d, 300).unwrap();
            assert!(d.is_nice(), "{w}");
            assert_eq!(d.map.euler_characteristic(), before.map.euler_characteristic());
            assert!(d.map.check().is_ok());
        }
    }

    #[test]
    fn minus_sigma_domain_survives_finger_moves() {
        // Fingers in these diagrams cross ∂Σ against its orientation.
        for w in ["X", "XY", "xx", "xY"] {
            let d = nice_diagram(1, w);
            let p = d.minus_sigma_domain().unwrap();
            assert_eq!(p.gamma_mult.abs(), 1);
            let gens = d.generators(u64::MAX).unwrap();
            assert!(d.grading_crosscheck(&p, &gens), "{w}");
        }
    }

    #[test]
    fn crosscheck_detects_a_wrong_grading() {
        let d = nice_diagram(1, "xY");
        let mut p = d.minus_sigma_domain().unwrap();
        // Dropping the −Σ half entirely leaves nothing to compare with.
        for c in p.face_coef.iter_mut() {
            *c = 0;
        }
        let gens = d.generators(u64::MAX).unwrap();
        assert!(!d.grading_crosscheck(&p, &gens));
    }
}
