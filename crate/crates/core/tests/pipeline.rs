use openbook_hfk_core::floer::{self, compute, compute_with_basis, kuenneth_check, Options};
use openbook_hfk_core::openbook::OpenBook;
use openbook_hfk_core::surface::{ArcBasis, Endpoint};

fn ranks(g: usize, w: &str) -> Vec<usize> {
    let a = compute(&OpenBook::new(g, w).unwrap(), &Options::default()).unwrap();
    a.ranks.values().copied().collect()
}

#[test]
fn presets() {
    let opt = Options::default();
    let rt = compute(&OpenBook::preset("right-trefoil").unwrap(), &opt).unwrap();
    let lt = compute(&OpenBook::preset("left-trefoil").unwrap(), &opt).unwrap();
    assert_eq!(rt.total_rank, 3);
    assert_eq!(lt.total_rank, 3);
    assert!(rt.contact_nonzero());
    assert!(!lt.contact_nonzero());
    let bt = compute(&OpenBook::preset("boundary-twist(1)").unwrap(), &opt).unwrap();
    assert_eq!(bt.b(), None);
    let inv = compute(&OpenBook::preset("boundary-twist(-1)").unwrap(), &opt).unwrap();
    assert_eq!(inv.b(), Some(1));
}

#[test]
fn genus_two_words() {
    assert_eq!(ranks(2, "x1y1x2y2"), [1, 2, 3, 2, 1]);
    assert_eq!(ranks(2, "z1"), [1, 4, 6, 4, 1]);
}

#[test]
fn connected_sums_multiply() {
    let t = OpenBook::new(1, "xy").unwrap();
    let f = OpenBook::new(1, "xY").unwrap();
    for (a, b) in [(&t, &t), (&t, &f)] {
        let k = kuenneth_check(a, b, &Options::default()).unwrap();
        assert!(k.holds, "{:?} vs {:?}", k.sum.ranks, k.expected);
    }
}

#[test]
fn basis_changes_leave_the_answer_alone() {
    let opt = Options::default();
    for w in ["xy", "xY"] {
        let ob = OpenBook::new(1, w).unwrap();
        let std = ArcBasis::standard(&ob.surface);
        let base = compute(&ob, &opt).unwrap();
        let mut tried = 0;
        for (i, j) in [(0, 1), (1, 0)] {
            for foot in [Endpoint::Start, Endpoint::End] {
                if let Ok(b) = std.arcslide(&ob.surface, i, j, foot) {
                    let a = compute_with_basis(&ob, &b, &opt).unwrap();
                    assert_eq!((&a.ranks, a.b()), (&base.ranks, base.b()), "{w}");
                    tried += 1;
                }
            }
        }
        assert!(tried > 0);
    }
}

#[test]
fn cap_stops_large_diagrams() {
    let ob = OpenBook::new(1, "xY").unwrap();
    let r = compute(&ob, &Options { cap: 5, ..Options::default() });
    assert!(matches!(
        r,
        Err(floer::FloerError::Heegaard(openbook_hfk_core::heegaard::HeegaardError::CapExceeded { .. }))
    ));
}
