use openbook_hfk_core::floer::reduce::{BitMatrix, Reducer};
use openbook_hfk_core::floer::{analyze, build_complex, nice_diagram, Options, DEFAULT_CAP};
use openbook_hfk_core::openbook::OpenBook;
use openbook_hfk_core::surface::ArcBasis;
use proptest::prelude::*;

fn word() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!['x', 'X', 'y', 'Y']), 0..=4)
        .prop_map(|v| v.into_iter().collect())
}

fn genus_two_word() -> impl Strategy<Value = String> {
    let letters = vec!["x1", "X1", "y1", "Y1", "z1", "Z1", "x2", "X2", "y2", "Y2"];
    prop::collection::vec(prop::sample::select(letters), 0..=2).prop_map(|v| v.concat())
}

fn check_word(g: usize, w: &str) -> Result<(), TestCaseError> {
    let ob = OpenBook::new(g, w).unwrap();
    let d = nice_diagram(&ob, &ArcBasis::standard(&ob.surface), &Options::default()).unwrap();
    prop_assert!(d.is_nice());
    let c = build_complex(&d, DEFAULT_CAP).unwrap();
    prop_assert!(c.square_zero());
    prop_assert!(c.filtered());
    let p = d.minus_sigma_domain().unwrap();
    prop_assert!(d.grading_crosscheck(&p, &c.gens));
    let a = analyze(&c).unwrap();
    let g = g as i32;
    for k in -g..=g {
        prop_assert_eq!(a.rank_at(k), a.rank_at(-k));
    }
    prop_assert_eq!(a.rank_at(g), 1);
    prop_assert_eq!(a.rank_at(-g), 1);
    prop_assert!(a.rank_at(g - 1) >= 1);
    prop_assert_eq!(a.level_ranks[&-g], 1);
    prop_assert_eq!(a.total_rank % 2, a.hf_rank % 2);
    prop_assert!(a.hf_rank <= a.total_rank);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn genus_one_invariants(w in word()) {
        check_word(1, &w)?;
    }

    #[test]
    fn mirror_has_the_same_ranks(w in word()) {
        let opt = Options::default();
        let ob = OpenBook::new(1, &w).unwrap();
        let mirror = OpenBook { word: ob.word.inverse(), ..ob.clone() };
        let a = openbook_hfk_core::floer::compute(&ob, &opt).unwrap();
        let b = openbook_hfk_core::floer::compute(&mirror, &opt).unwrap();
        prop_assert_eq!(a.ranks, b.ranks);
    }

    /// A right-veering witness forces the bound to be one.
    #[test]
    fn witness_forces_b_one(w in word()) {
        let ob = OpenBook::new(1, &w).unwrap();
        if ob.non_right_veering_certificate(2).unwrap().is_some() {
            let a = openbook_hfk_core::floer::compute(&ob, &Options::default()).unwrap();
            prop_assert_eq!(a.b(), Some(1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn genus_two_invariants(w in genus_two_word()) {
        check_word(2, &w)?;
    }
}

/// `P J P⁻¹` with `J` a sum of `pairs` cancelling pairs and `P` unitriangular.
fn conjugated(n: usize, pairs: usize, p: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let mut j = vec![vec![false; n]; n];
    for k in 0..pairs {
        j[2 * k][2 * k + 1] = true;
    }
    // Inverse of a unitriangular matrix by back substitution.
    let mut inv = vec![vec![false; n]; n];
    for c in 0..n {
        for r in (0..=c).rev() {
            let mut s = r == c;
            for k in r + 1..=c {
                s ^= p[r][k] && inv[k][c];
            }
            inv[r][c] = s;
        }
    }
    let mul = |a: &[Vec<bool>], b: &[Vec<bool>]| -> Vec<Vec<bool>> {
        (0..n).map(|r| (0..n).map(|c| (0..n).fold(false, |s, k| s ^ (a[r][k] && b[k][c]))).collect()).collect()
    };
    mul(&mul(p, &j), &inv)
}

proptest! {
    #[test]
    fn cancellation_matches_linear_algebra(
        n in 2usize..12,
        pairs_frac in 0.0f64..=1.0,
        bits in prop::collection::vec(any::<bool>(), 144),
    ) {
        let pairs = ((n / 2) as f64 * pairs_frac) as usize;
        let p: Vec<Vec<bool>> = (0..n)
            .map(|r| (0..n).map(|c| r == c || (c > r && bits[r * 12 + c])).collect())
            .collect();
        let d = conjugated(n, pairs, &p);
        let out: Vec<Vec<u32>> =
            (0..n).map(|x| (0..n).filter(|&y| d[x][y]).map(|y| y as u32).collect()).collect();
        let mut m = BitMatrix::new(n);
        for row in &out {
            m.push_row(row.iter().map(|&y| y as usize));
        }
        prop_assert_eq!(m.rank(), pairs);
        let mut r = Reducer::new(vec![0; n], out, vec![]);
        r.reduce_all();
        prop_assert_eq!(r.survivors().len(), n - 2 * pairs);
    }
}
