use super::{CombinatorialSurface, Layout, Path, PathEnds, SurfaceError};
use alloc::vec::Vec;

/// Dehn twist of `obj` along the closed curve `curve`.
///
/// `sign > 0` is the right-handed twist: a path reaching `curve` turns right,
/// runs once around it and carries on. `sign < 0` turns left.
pub fn apply_twist(
    s: &CombinatorialSurface,
    obj: &Path,
    curve: &Path,
    sign: i8,
) -> Result<Path, SurfaceError> {
    if !curve.is_closed() {
        return Err(SurfaceError::TwistAlongArc);
    }
    let obj = s.normalize(obj)?;
    let curve = s.normalize(curve)?;
    if curve.cross.is_empty() {
        return Ok(obj);
    }
    let lay = Layout::new(s, &[&obj, &curve]);
    let n_c = curve.cross.len();
    let cchords = lay.chords(1);
    let mut out: Vec<u32> = Vec::new();
    for (k, &a) in lay.chords(0).iter().enumerate() {
        for (_, cj) in lay.crossings_along(0, k, &[1]) {
            let (c_in, c_out) = cchords[cj];
            let out_on_right = super::layout::in_open(a.0, a.1, c_out);
            debug_assert_ne!(out_on_right, super::layout::in_open(a.0, a.1, c_in));
            if out_on_right == (sign > 0) {
                out.extend((0..n_c).map(|t| curve.cross[(cj + t) % n_c]));
            } else {
                out.extend((1..=n_c).map(|t| s.partner(curve.cross[(cj + n_c - t) % n_c])));
            }
        }
        if k < obj.cross.len() {
            out.push(obj.cross[k]);
        }
    }
    let res = match obj.ends {
        PathEnds::Closed => Path::closed(s.cyclic_reduce(&out)),
        PathEnds::Arc { start, end } => Path::arc(start, end, s.reduce(&out)),
    };
    let sc = s.self_crossings(&res);
    if sc != 0 {
        return Err(SurfaceError::NotEmbedded(0, sc));
    }
    Ok(res)
}

/// Applies a product of twists. `steps` is read right to left: the last
/// entry acts first, matching composition of maps.
pub fn apply_word(
    s: &CombinatorialSurface,
    obj: &Path,
    curves: &[Path],
    steps: &[(usize, i8)],
) -> Result<Path, SurfaceError> {
    let mut cur = obj.clone();
    for &(c, e) in steps.iter().rev() {
        cur = apply_twist(s, &cur, &curves[c], e)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::CombinatorialSurface;

    #[test]
    fn twist_then_inverse_is_identity() {
        let s = CombinatorialSurface::new(1).unwrap();
        let x = s.dual_loop(0);
        let y = s.dual_loop(1);
        for a in [s.standard_arc(0), s.standard_arc(1), y.clone()] {
            let t = apply_twist(&s, &a, &x, 1).unwrap();
            let back = apply_twist(&s, &t, &x, -1).unwrap();
            assert!(s.isotopic(&back, &a), "{a:?} -> {t:?} -> {back:?}");
        }
    }

    #[test]
    fn twisting_a_disjoint_object_does_nothing() {
        let s = CombinatorialSurface::new(1).unwrap();
        let a2 = s.standard_arc(1);
        let x = s.dual_loop(0);
        assert_eq!(apply_twist(&s, &a2, &x, 1).unwrap(), a2);
    }

    #[test]
    fn twisted_arc_meets_original_once_in_interior() {
        // An arc meeting x once and its image share both feet and have
        // disjoint interiors.
        let s = CombinatorialSurface::new(1).unwrap();
        let a = s.standard_arc(0);
        let x = s.dual_loop(0);
        let t = apply_twist(&s, &a, &x, 1).unwrap();
        assert_eq!(t.cross.len(), 1);
        assert_eq!(s.intersection_number(&a, &t), 0);
        let y = s.dual_loop(1);
        assert_eq!(s.intersection_number(&t, &y), 1);
    }

    #[test]
    fn braid_relation_on_genus_one() {
        // τ_x τ_y τ_x = τ_y τ_x τ_y on every test object.
        let s = CombinatorialSurface::new(1).unwrap();
        let curves = [s.dual_loop(0), s.dual_loop(1)];
        let lhs = [(0, 1), (1, 1), (0, 1)];
        let rhs = [(1, 1), (0, 1), (1, 1)];
        for a in [s.standard_arc(0), s.standard_arc(1)] {
            let l = apply_word(&s, &a, &curves, &lhs).unwrap();
            let r = apply_word(&s, &a, &curves, &rhs).unwrap();
            assert!(s.isotopic(&l, &r));
        }
    }

    #[test]
    fn chain_relation_gives_boundary_twist() {
        let s = CombinatorialSurface::new(1).unwrap();
        let curves = [s.dual_loop(0), s.dual_loop(1), s.boundary_parallel_curve()];
        let mut chain = alloc::vec::Vec::new();
        for _ in 0..6 {
            chain.push((0, 1));
            chain.push((1, 1));
        }
        for a in [s.standard_arc(0), s.standard_arc(1)] {
            let l = apply_word(&s, &a, &curves, &chain).unwrap();
            let r = apply_twist(&s, &a, &curves[2], 1).unwrap();
            assert!(s.isotopic(&l, &r), "{l:?} vs {r:?}");
        }
    }
}
