use openbook_hfk::corpus::{tokens, words};
use openbook_hfk::input::{LetterSpec, OpenBookSpec};
use openbook_hfk::report::ranks_field;
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

proptest! {
    #[test]
    fn corpus_words_are_distinct_and_short(genus in 1usize..=2, len in 0usize..=3, limit in 1usize..60, seed: u64) {
        let w = words(genus, len, limit, seed).unwrap();
        let t = tokens(genus).unwrap().len();
        let total: usize = (0..=len).map(|k| t.pow(k as u32)).sum();
        prop_assert_eq!(w.len(), total.min(limit));
        prop_assert_eq!(w.iter().collect::<BTreeSet<_>>().len(), w.len());
        prop_assert!(w.windows(2).all(|p| p[0].len() <= p[1].len()));
        prop_assert_eq!(&w, &words(genus, len, limit, seed).unwrap());
    }

    #[test]
    fn open_book_spec_round_trips(
        genus in 1usize..4,
        word in "[xyXY]{0,8}",
        alphabet in prop::option::of(prop::collection::vec(("[a-w][0-9]?", prop::collection::vec(-4i32..=4, 1..4)), 0..3)),
    ) {
        let spec = OpenBookSpec {
            genus,
            word,
            alphabet: alphabet.map(|a| a.into_iter().map(|(name, curve)| LetterSpec { name, curve }).collect()),
        };
        let text = serde_json::to_string(&spec).unwrap();
        prop_assert_eq!(OpenBookSpec::parse(&text).unwrap(), spec);
    }

    #[test]
    fn ranks_field_lists_gradings_in_order(ranks in prop::collection::btree_map(-5i32..=5, 0usize..20, 0..8)) {
        let f = ranks_field(&ranks);
        let back: BTreeMap<i32, usize> = if f.is_empty() {
            BTreeMap::new()
        } else {
            f.split(';').map(|kv| {
                let (k, v) = kv.split_once(':').unwrap();
                (k.parse().unwrap(), v.parse().unwrap())
            }).collect()
        };
        prop_assert_eq!(back, ranks);
    }
}
