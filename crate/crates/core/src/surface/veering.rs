use super::{CombinatorialSurface, Endpoint, Layout, Path, SurfaceError};
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Outcome of comparing an arc with its image at a shared foot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeftTest {
    /// The image leaves the foot to the left of the arc.
    Left,
    /// The image leaves the foot to the right of the arc.
    Right,
    /// The image is isotopic to the arc.
    Fixed,
}

/// Decides on which side of `arc` its image `image` starts at `at`.
///
/// Both arcs must share their feet. Leaving the foot into Σ, the right-hand
/// side is the direction of ∂Σ, so "left" means the image sits before the arc
/// in the boundary order once both are in minimal position.
pub fn sends_left(s: &CombinatorialSurface, arc: &Path, image: &Path, at: Endpoint) -> LeftTest {
    let (a, b) = match at {
        Endpoint::Start => (arc.clone(), image.clone()),
        Endpoint::End => (s.reverse(arc), s.reverse(image)),
    };
    debug_assert_eq!(a.endpoints(), b.endpoints());
    if s.isotopic(&a, &b) {
        return LeftTest::Fixed;
    }
    let lay = Layout::new(s, &[&a, &b]);
    let foot = a.endpoints().unwrap().0;
    let pts = lay.side_points(foot.side);
    let rank = |o: u32| {
        pts.iter()
            .position(|p| *p == super::layout::SidePoint::Foot { obj: o, end: false })
            .unwrap()
    };
    match rank(1).cmp(&rank(0)) {
        Ordering::Less => LeftTest::Left,
        _ => LeftTest::Right,
    }
}

/// A found witness of non-right-veering monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftWitness {
    pub arc: Path,
    pub endpoint: Endpoint,
}

/// Searches for an arc sent to the left.
///
/// Candidates are the `seeds` and their images under all reduced words of
/// length at most `bound` in the twists along `curves`. Images under the
/// monodromy are produced by `monodromy`.
pub fn find_left_witness<F>(
    s: &CombinatorialSurface,
    seeds: &[Path],
    curves: &[Path],
    bound: usize,
    mut monodromy: F,
) -> Result<Option<LeftWitness>, SurfaceError>
where
    F: FnMut(&Path) -> Result<Path, SurfaceError>,
{
    let mut seen: BTreeSet<Path> = BTreeSet::new();
    let mut layer: Vec<(Path, Option<(usize, i8)>)> = Vec::new();
    for a in seeds {
        let a = s.normalize(a)?;
        if seen.insert(a.clone()) {
            layer.push((a, None));
        }
    }
    for depth in 0..=bound {
        for (cand, _) in &layer {
            let img = monodromy(cand)?;
            for at in [Endpoint::Start, Endpoint::End] {
                if sends_left(s, cand, &img, at) == LeftTest::Left {
                    return Ok(Some(LeftWitness { arc: cand.clone(), endpoint: at }));
                }
            }
        }
        if depth == bound {
            break;
        }
        let mut next = Vec::new();
        for (cand, last) in &layer {
            for c in 0..curves.len() {
                for e in [1i8, -1] {
                    if *last == Some((c, -e)) {
                        continue;
                    }
                    let t = super::apply_twist(s, cand, &curves[c], e)?;
                    if seen.insert(t.clone()) {
                        next.push((t, Some((c, e))));
                    }
                }
            }
        }
        layer = next;
    }
    Ok(None)
}

/// Intersection matrix mod 2 of arcs against the dual loops.
pub fn dual_matrix_mod2(s: &CombinatorialSurface, arcs: &[Path]) -> Vec<Vec<u8>> {
    let loops: Vec<Path> = (0..s.arc_count()).map(|r| s.dual_loop(r)).collect();
    arcs.iter()
        .map(|a| loops.iter().map(|l| (s.intersection_number(a, l) % 2) as u8).collect())
        .collect()
}

/// Rank over GF(2) of a small dense matrix.
pub fn rank_mod2(m: &[Vec<u8>]) -> usize {
    let mut rows: Vec<Vec<u8>> = m.to_vec();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) {
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] == 1 {
                    let pivot = rows[rank].clone();
                    for (x, y) in rows[r].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Whether disjoint arcs are independent, i.e. have connected complement.
pub fn independent(s: &CombinatorialSurface, arcs: &[Path]) -> bool {
    if arcs.is_empty() {
        return true;
    }
    rank_mod2(&dual_matrix_mod2(s, arcs)) == arcs.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{apply_twist, apply_word};

    fn genus_one() -> (CombinatorialSurface, [Path; 2]) {
        let s = CombinatorialSurface::new(1).unwrap();
        let c = [s.dual_loop(0), s.dual_loop(1)];
        (s, c)
    }

    #[test]
    fn negative_twist_sends_dual_arc_left_positive_right() {
        let (s, c) = genus_one();
        let a = s.standard_arc(0);
        let neg = apply_twist(&s, &a, &c[0], -1).unwrap();
        let pos = apply_twist(&s, &a, &c[0], 1).unwrap();
        for at in [Endpoint::Start, Endpoint::End] {
            assert_eq!(sends_left(&s, &a, &neg, at), LeftTest::Left);
            assert_eq!(sends_left(&s, &a, &pos, at), LeftTest::Right);
        }
        assert_eq!(sends_left(&s, &s.standard_arc(1), &s.standard_arc(1), Endpoint::Start), LeftTest::Fixed);
    }

    #[test]
    fn positive_word_has_no_witness() {
        let (s, c) = genus_one();
        let seeds = [s.standard_arc(0), s.standard_arc(1)];
        let w = find_left_witness(&s, &seeds, &c, 3, |a| apply_word(&s, a, &c, &[(0, 1), (1, 1)])).unwrap();
        assert_eq!(w, None);
    }

    #[test]
    fn inverse_word_has_witness_on_first_arc() {
        let (s, c) = genus_one();
        let seeds = [s.standard_arc(0), s.standard_arc(1)];
        let w = find_left_witness(&s, &seeds, &c, 3, |a| apply_word(&s, a, &c, &[(0, -1)])).unwrap();
        let w = w.expect("witness");
        assert_eq!(w.arc, s.standard_arc(0));
    }

    #[test]
    fn standard_arcs_are_independent() {
        for g in 1..4 {
            let s = CombinatorialSurface::new(g).unwrap();
            let arcs: Vec<Path> = (0..2 * g).map(|r| s.standard_arc(r)).collect();
            assert!(independent(&s, &arcs));
            let dup = [arcs[0].clone(), arcs[0].clone()];
            assert!(!independent(&s, &dup));
        }
    }
}
