#![allow(dead_code)]

use blobshift::patterns::{Alphabet, Cell, Dim, Pattern};
use proptest::prelude::*;

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Random 2D pattern over `{., a, b}` on a `w × h` box, padded by `margin`.
pub fn pattern_2d(max_side: i64, margin: u64) -> impl Strategy<Value = Pattern> {
    (1..=max_side, 1..=max_side)
        .prop_flat_map(|(w, h)| proptest::collection::vec(0u8..3, (w * h) as usize).prop_map(move |v| (w, v)))
        .prop_map(move |(w, v)| {
            let alpha = Alphabet::new('.', &['a', 'b']).unwrap();
            let mut p = Pattern::new(Dim::Two, alpha);
            for (i, s) in v.into_iter().enumerate() {
                let c = Cell::new(i as i64 % w, i as i64 / w);
                p.insert(c, if s == 2 && i % 3 == 0 { 2 } else { s.min(1) }).unwrap();
            }
            p.padded(margin).unwrap()
        })
}

/// Random binary word pattern.
pub fn word_1d(max_len: usize) -> impl Strategy<Value = Pattern> {
    proptest::collection::vec(0u8..2, 1..=max_len)
        .prop_map(|v| Pattern::from_word(Alphabet::binary(), &v, 0).unwrap())
}
