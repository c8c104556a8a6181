//! Alexander-filtered complexes over the two-element field.
//!
//! The differential of `(S, β, α, z, w)` counts empty embedded bigons and
//! rectangles of a nice diagram that avoid the `w` region; an edge lowers
//! the Alexander grading by the `z` multiplicity of its domain.

pub mod domains;
pub mod reduce;

use crate::heegaard::map::{Family, NONE};
use crate::heegaard::{self, Diagram, Generators, HeegaardError, VertexKind};
use crate::openbook::{OpenBook, OpenBookError};
use crate::surface::ArcBasis;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
pub use domains::Polygon;
use reduce::{BitMatrix, Reducer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FloerError {
    #[error(transparent)]
    Heegaard(#[from] HeegaardError),
    #[error(transparent)]
    OpenBook(#[from] OpenBookError),
    #[error("the differential does not square to zero")]
    NotSquareZero,
    #[error("an edge drops the Alexander grading by {drop} but crosses z {n_z} times")]
    GradingDrop { drop: i32, n_z: u32 },
    #[error("the contact generator is missing or not a cycle")]
    ContactNotCycle,
    #[error("H(F_-g) has rank {0}, expected 1 generated by the contact class")]
    BottomRank(usize),
    #[error("generator keys overflow")]
    KeyOverflow,
}

/// A filtered complex with its differential in compressed rows.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub genus: usize,
    pub gens: Generators,
    pub grading: Vec<i32>,
    /// `targets[offsets[x]..offsets[x + 1]]` is `∂x`, sorted.
    pub offsets: Vec<usize>,
    pub targets: Vec<u32>,
    /// Index of the contact generator.
    pub contact: u32,
}

impl FilteredComplex {
    pub fn len(&self) -> usize {
        self.grading.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grading.is_empty()
    }

    pub fn boundary(&self, x: u32) -> &[u32] {
        &self.targets[self.offsets[x as usize]..self.offsets[x as usize + 1]]
    }

    pub fn edges(&self) -> usize {
        self.targets.len()
    }

    /// Exact check of `∂∂ = 0`.
    pub fn square_zero(&self) -> bool {
        let mut parity = vec![false; self.len()];
        let mut touched = Vec::new();
        for x in 0..self.len() as u32 {
            for &y in self.boundary(x) {
                for &z in self.boundary(y) {
                    parity[z as usize] ^= true;
                    touched.push(z);
                }
            }
            let bad = touched.iter().any(|&z| parity[z as usize]);
            for z in touched.drain(..) {
                parity[z as usize] = false;
            }
            if bad {
                return false;
            }
        }
        true
    }

    /// The differential keeps every `F_k = span{A ≤ k}` and gradings stay in
    /// `[-g, g]`.
    pub fn filtered(&self) -> bool {
        let g = self.genus as i32;
        (0..self.len() as u32).all(|x| {
            let a = self.grading[x as usize];
            (-g..=g).contains(&a) && self.boundary(x).iter().all(|&y| self.grading[y as usize] <= a)
        })
    }
}

/// Mixed-radix keys of generators: position of each component on its α
/// curve.
struct Keys {
    pos: Vec<u64>,
    stride: Vec<u64>,
}

impl Keys {
    fn new(d: &Diagram) -> Result<Keys, FloerError> {
        let mut pos = vec![0u64; d.map.vertices()];
        let mut count = vec![0u64; d.n];
        for (v, k) in d.map.vkind.iter().enumerate() {
            if let VertexKind::Intersection { alpha, .. } = *k {
                pos[v] = count[alpha as usize];
                count[alpha as usize] += 1;
            }
        }
        let mut stride = vec![1u64; d.n];
        for i in 1..d.n {
            stride[i] = stride[i - 1].checked_mul(count[i - 1].max(1)).ok_or(FloerError::KeyOverflow)?;
        }
        stride[d.n - 1].checked_mul(count[d.n - 1].max(1)).ok_or(FloerError::KeyOverflow)?;
        Ok(Keys { pos, stride })
    }

    fn key(&self, x: &[u32]) -> u64 {
        x.iter().zip(&self.stride).map(|(&v, &s)| self.pos[v as usize] * s).sum()
    }
}

/// Which family plays the first role in the domain convention. The
/// diagram is read as `(S, β, α, z, w)`.
pub const FIRST: Family = Family::Beta;

/// Builds the complex of a nice diagram.
pub fn build_complex(d: &Diagram, cap: u64) -> Result<FilteredComplex, FloerError> {
    build_complex_with(d, cap, FIRST)
}

pub fn build_complex_with(d: &Diagram, cap: u64, first: Family) -> Result<FilteredComplex, FloerError> {
    let reg = d.regions();
    if !reg.is_nice() {
        return Err(HeegaardError::NotNice.into());
    }
    let raw = d.generators(cap)?;
    let keys = Keys::new(d)?;
    let n = d.n;
    let mut order: Vec<(u64, u32)> =
        (0..raw.len()).map(|k| (keys.key(raw.get(k)), k as u32)).collect();
    order.sort_unstable();
    let mut gens = Generators { n, flat: Vec::with_capacity(raw.flat.len()) };
    for &(_, k) in &order {
        gens.flat.extend_from_slice(raw.get(k as usize));
    }
    drop(raw);
    let sorted: Vec<u64> = order.iter().map(|p| p.0).collect();
    drop(order);
    let grading: Vec<i32> = (0..gens.len()).map(|k| d.alexander_grading(gens.get(k))).collect();

    let mut polys = domains::rectangles(&d.map, &reg, first);
    polys.extend(domains::bigons(&d.map, &reg, first));
    let mut by_corner: Vec<Vec<u32>> = vec![Vec::new(); d.map.vertices()];
    for (i, p) in polys.iter().enumerate() {
        by_corner[p.from[0] as usize].push(i as u32);
    }
    let alpha = |v: u32| match d.map.vkind[v as usize] {
        VertexKind::Intersection { alpha, .. } => alpha as usize,
        _ => usize::MAX,
    };

    let mut offsets = Vec::with_capacity(gens.len() + 1);
    let mut targets = Vec::new();
    offsets.push(0);
    let mut y = vec![0u32; n];
    let mut found: Vec<u32> = Vec::new();
    for k in 0..gens.len() {
        let x = gens.get(k);
        let has = |v: u32| v != NONE && x[alpha(v)] == v;
        found.clear();
        for &v in x {
            for &pi in &by_corner[v as usize] {
                let p = &polys[pi as usize];
                if p.from[1] != NONE && !has(p.from[1]) {
                    continue;
                }
                if p.interior.iter().any(|&u| has(u)) {
                    continue;
                }
                y.copy_from_slice(x);
                for c in 0..2 {
                    if p.from[c] != NONE {
                        y[alpha(p.from[c])] = p.to[c];
                    }
                }
                let t = sorted.binary_search(&keys.key(&y)).map_err(|_| {
                    HeegaardError::Inconsistent("domain leads outside the generators")
                })? as u32;
                let drop = grading[k] - grading[t as usize];
                if drop != p.n_z as i32 {
                    return Err(FloerError::GradingDrop { drop, n_z: p.n_z });
                }
                found.push(t);
            }
        }
        found.sort_unstable();
        let mut i = 0;
        while i < found.len() {
            let mut j = i;
            while j < found.len() && found[j] == found[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                targets.push(found[i]);
            }
            i = j;
        }
        offsets.push(targets.len());
    }
    let contact = sorted
        .binary_search(&keys.key(&d.contact))
        .map_err(|_| FloerError::ContactNotCycle)? as u32;
    Ok(FilteredComplex { genus: d.genus, gens, grading, offsets, targets, contact })
}

/// Homological data of a filtered complex, computed on a filtered
/// reduction of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub genus: usize,
    /// Rank of the associated graded homology in each grading `-g..=g`.
    pub ranks: BTreeMap<i32, usize>,
    pub total_rank: usize,
    /// Rank of the homology of the whole complex.
    pub hf_rank: usize,
    /// `rank H(F_k)` for `k = -g..=g`.
    pub level_ranks: BTreeMap<i32, usize>,
    /// Rank of `H(F_-g) → H(F_k)` for `k = -g..=g`.
    pub image_ranks: BTreeMap<i32, usize>,
}

impl Analysis {
    pub fn contact_nonzero(&self) -> bool {
        self.image_ranks.get(&(self.genus as i32)).copied() == Some(1)
    }

    /// `g + min{k : [c] = 0 in H(F_k)}`, or `None` for infinity.
    pub fn b(&self) -> Option<usize> {
        let g = self.genus as i32;
        self.image_ranks.iter().find(|(_, &r)| r == 0).map(|(&k, _)| (g + k) as usize)
    }

    pub fn rank_at(&self, i: i32) -> usize {
        self.ranks.get(&i).copied().unwrap_or(0)
    }
}

/// Reduces the complex and reads off ranks and the contact class.
pub fn analyze(c: &FilteredComplex) -> Result<Analysis, FloerError> {
    if !c.boundary(c.contact).is_empty() {
        return Err(FloerError::ContactNotCycle);
    }
    let out: Vec<Vec<u32>> = (0..c.len() as u32).map(|x| c.boundary(x).to_vec()).collect();
    let mut r = Reducer::new(c.grading.clone(), out, vec![c.contact]);
    r.reduce_graded();
    let keep = r.survivors();
    let g = c.genus as i32;
    let mut ranks = BTreeMap::new();
    for k in -g..=g {
        ranks.insert(k, 0);
    }
    for &x in &keep {
        *ranks.entry(c.grading[x as usize]).or_insert(0) += 1;
    }
    let total_rank = keep.len();
    let local: BTreeMap<u32, usize> = keep.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let cvec: Vec<usize> = r.tracked.iter().map(|x| local[x]).collect();

    // Columns are the reduced boundaries of generators in F_k.
    let level = |k: i32| {
        let mut m = BitMatrix::new(keep.len());
        for &x in &keep {
            if c.grading[x as usize] <= k {
                m.push_row(r.out[x as usize].iter().map(|y| local[y]));
            }
        }
        m
    };
    let count_upto = |k: i32| keep.iter().filter(|&&x| c.grading[x as usize] <= k).count();
    let mut level_ranks = BTreeMap::new();
    let mut image_ranks = BTreeMap::new();
    for k in -g..=g {
        let m = level(k);
        level_ranks.insert(k, count_upto(k) - 2 * m.rank());
        image_ranks.insert(k, usize::from(!m.spans(cvec.iter().copied())));
    }
    let bottom = level_ranks[&-g];
    if bottom != 1 || image_ranks[&-g] != 1 {
        return Err(FloerError::BottomRank(bottom));
    }
    r.reduce_all();
    let hf_rank = r.survivors().len();
    Ok(Analysis { genus: c.genus, ranks, total_rank, hf_rank, level_ranks, image_ranks })
}

/// Settings of the whole pipeline.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub cap: u64,
    pub max_moves: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { cap: DEFAULT_CAP, max_moves: 300 }
    }
}

pub const DEFAULT_CAP: u64 = 5_000_000;

/// Nice diagram of an open book with the given basis.
pub fn nice_diagram(ob: &OpenBook, basis: &ArcBasis, opt: &Options) -> Result<Diagram, FloerError> {
    let mut d = heegaard::build(ob, basis)?;
    heegaard::nicefy(&mut d, opt.max_moves)?;
    Ok(d)
}

/// Open book to analysis with the standard basis.
pub fn compute(ob: &OpenBook, opt: &Options) -> Result<Analysis, FloerError> {
    compute_with_basis(ob, &ArcBasis::standard(&ob.surface), opt)
}

pub fn compute_with_basis(ob: &OpenBook, basis: &ArcBasis, opt: &Options) -> Result<Analysis, FloerError> {
    let d = nice_diagram(ob, basis, opt)?;
    let c = build_complex(&d, opt.cap)?;
    if !c.square_zero() {
        return Err(FloerError::NotSquareZero);
    }
    analyze(&c)
}

/// Every rank is at most one.
pub fn lspace_constraint_check(a: &Analysis) -> bool {
    a.ranks.values().all(|&r| r <= 1)
}

/// Ranks one at both ends and nonzero just below the top.
pub fn top_bottom_checks(a: &Analysis) -> bool {
    let g = a.genus as i32;
    a.rank_at(g) == 1 && a.rank_at(-g) == 1 && a.rank_at(g - 1) >= 1
}

/// Rank vector of a tensor product.
pub fn convolve(a: &BTreeMap<i32, usize>, b: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (&i, &x) in a {
        for (&j, &y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

fn nonzero(m: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    m.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect()
}

/// Outcome of comparing a boundary connected sum with its summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kuenneth {
    pub sum: Analysis,
    pub expected: BTreeMap<i32, usize>,
    pub holds: bool,
}

pub fn kuenneth_check(a: &OpenBook, b: &OpenBook, opt: &Options) -> Result<Kuenneth, FloerError> {
    let ra = compute(a, opt)?;
    let rb = compute(b, opt)?;
    let sum_ob = a.boundary_connect_sum(b)?;
    let sum = compute(&sum_ob, opt)?;
    let expected = convolve(&ra.ranks, &rb.ranks);
    let holds = nonzero(&sum.ranks) == expected;
    Ok(Kuenneth { sum, expected, holds })
}

/// `(rank HFK, rank HF, equal)`.
pub fn spectral_rank_compare(a: &Analysis) -> (usize, usize, bool) {
    (a.total_rank, a.hf_rank, a.total_rank == a.hf_rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(g: usize, w: &str) -> FilteredComplex {
        let ob = OpenBook::new(g, w).unwrap();
        let d = nice_diagram(&ob, &ArcBasis::standard(&ob.surface), &Options::default()).unwrap();
        build_complex(&d, DEFAULT_CAP).unwrap()
    }

    /// Ranks by dense elimination on the unreduced complex.
    fn dense(c: &FilteredComplex) -> (BTreeMap<i32, usize>, BTreeMap<i32, usize>, BTreeMap<i32, usize>) {
        let g = c.genus as i32;
        let n = c.len();
        let (mut graded, mut level, mut image) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
        for k in -g..=g {
            let mut m = BitMatrix::new(n);
            let mut f = BitMatrix::new(n);
            for x in 0..n as u32 {
                let a = c.grading[x as usize];
                if a == k {
                    m.push_row(c.boundary(x).iter().filter(|&&y| c.grading[y as usize] == k).map(|&y| y as usize));
                }
                if a <= k {
                    f.push_row(c.boundary(x).iter().map(|&y| y as usize));
                }
            }
            let nk = c.grading.iter().filter(|&&a| a == k).count();
            let fk = c.grading.iter().filter(|&&a| a <= k).count();
            graded.insert(k, nk - 2 * m.rank());
            level.insert(k, fk - 2 * f.rank());
            image.insert(k, usize::from(!f.spans([c.contact as usize])));
        }
        (graded, level, image)
    }

    #[test]
    fn reduction_agrees_with_dense_elimination() {
        for w in ["", "x", "X", "xy", "XY", "xY", "xxY", "yXX"] {
            let c = complex(1, w);
            let a = analyze(&c).unwrap();
            let (graded, level, image) = dense(&c);
            assert_eq!(a.ranks, graded, "{w}");
            assert_eq!(a.level_ranks, level, "{w}");
            assert_eq!(a.image_ranks, image, "{w}");
        }
    }

    #[test]
    fn trefoil_complexes_square_to_zero_and_respect_the_filtration() {
        for w in ["xy", "XY"] {
            let c = complex(1, w);
            assert!(c.square_zero());
            assert!(c.filtered());
            assert!(c.boundary(c.contact).is_empty());
            assert_eq!(c.grading[c.contact as usize], -1);
        }
    }

    #[test]
    fn known_genus_one_answers() {
        let cases: [(&str, [usize; 3], Option<usize>); 5] = [
            ("xy", [1, 1, 1], None),
            ("XY", [1, 1, 1], Some(1)),
            ("xY", [1, 3, 1], Some(1)),
            ("", [1, 2, 1], None),
            ("X", [1, 2, 1], Some(1)),
        ];
        for (w, ranks, b) in cases {
            let a = compute(&OpenBook::new(1, w).unwrap(), &Options::default()).unwrap();
            let got: Vec<usize> = a.ranks.values().copied().collect();
            assert_eq!(got, ranks, "{w}");
            assert_eq!(a.b(), b, "{w}");
            assert_eq!(a.contact_nonzero(), b.is_none(), "{w}");
            assert!(top_bottom_checks(&a));
        }
    }

    #[test]
    fn other_corner_convention_breaks_the_grading() {
        let ob = OpenBook::new(1, "xY").unwrap();
        let d = nice_diagram(&ob, &ArcBasis::standard(&ob.surface), &Options::default()).unwrap();
        assert!(matches!(build_complex_with(&d, DEFAULT_CAP, Family::Alpha), Err(FloerError::GradingDrop { .. })));
    }

    #[test]
    fn non_nice_diagrams_are_refused() {
        let ob = OpenBook::new(1, "xY").unwrap();
        let d = heegaard::build(&ob, &ArcBasis::standard(&ob.surface)).unwrap();
        assert_eq!(build_complex(&d, DEFAULT_CAP).unwrap_err(), FloerError::Heegaard(HeegaardError::NotNice));
    }

    #[test]
    fn convolution_of_rank_vectors() {
        let t: BTreeMap<i32, usize> = [(-1, 1), (0, 1), (1, 1)].into_iter().collect();
        let want: BTreeMap<i32, usize> = [(-2, 1), (-1, 2), (0, 3), (1, 2), (2, 1)].into_iter().collect();
        assert_eq!(convolve(&t, &t), want);
    }

    #[test]
    fn lspace_condition() {
        let rt = compute(&OpenBook::preset("right-trefoil").unwrap(), &Options::default()).unwrap();
        let f8 = compute(&OpenBook::preset("figure-eight").unwrap(), &Options::default()).unwrap();
        assert!(lspace_constraint_check(&rt));
        assert!(!lspace_constraint_check(&f8));
        assert_eq!(spectral_rank_compare(&rt), (3, 1, false));
    }
}
