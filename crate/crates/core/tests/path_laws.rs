mod common;

use std::collections::BTreeMap;

use blobshift::paths::{
    centered_profile, classify_path_space, derivative, integrate, replay_verdict, visit_profile, HeightWord,
    MoveSubstitution, MoveWord, PathClass,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(common::config(1000))]

    #[test]
    fn derivative_inverts_integrate(moves in proptest::collection::vec(-3i64..=3, 0..60)) {
        let w = MoveWord::from_moves(moves);
        prop_assert_eq!(derivative(&integrate(&w)), w);
    }

    #[test]
    fn integrate_inverts_derivative_up_to_base(h in proptest::collection::vec(-20i64..=20, 1..60)) {
        let hw = HeightWord::normalized(&h).unwrap();
        prop_assert_eq!(integrate(&derivative(&hw)), hw);
        let back: Vec<i64> = integrate(&derivative(&HeightWord::normalized(&h).unwrap()))
            .heights()
            .iter()
            .map(|x| x + h[0])
            .collect();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn derivative_commutes_with_windows(
        h in proptest::collection::vec(-9i64..=9, 2..80), a in 0usize..80, len in 1usize..40
    ) {
        let a = a % (h.len() - 1);
        let len = len.min(h.len() - 1 - a);
        let window = HeightWord::normalized(&h[a..=a + len]).unwrap();
        let whole = derivative(&HeightWord::normalized(&h).unwrap());
        prop_assert_eq!(derivative(&window).moves().to_vec(), whole.window(a, len).moves().to_vec());
    }

    #[test]
    fn move_word_text_round_trip(moves in proptest::collection::vec(-12i64..=12, 0..30)) {
        let w = MoveWord::from_moves(moves);
        prop_assert_eq!(MoveWord::parse(&w.to_string()).unwrap(), w);
    }
}

#[test]
fn tau1_visit_counts_are_zero_or_large() {
    let s = MoveSubstitution::tau1();
    let mut last = 0;
    for n in 0..=8u32 {
        let prof = visit_profile(&s.word(n).unwrap());
        assert!(prof.counts().values().all(|&c| c >= 1 << n), "n = {n}");
        assert!(prof.support_len() > last, "n = {n}");
        last = prof.support_len();
    }
}

#[test]
fn tau1_support_law() {
    // Support sizes follow s_n = 2 s_{n-1} - 1 from s_0 = 2.
    let s = MoveSubstitution::tau1();
    let mut expected = 2usize;
    for n in 0..=8u32 {
        assert_eq!(visit_profile(&s.word(n).unwrap()).support_len(), expected, "n = {n}");
        expected = 2 * expected - 1;
    }
}

fn tau3_oracle(n: u32) -> BTreeMap<i64, u64> {
    // Brute force over the explicit word, independent of the library's
    // substitution and profile code.
    let mut w = String::from("+");
    for _ in 0..n {
        w = w.chars().map(|c| if c == '+' { "++-" } else { "+--" }).collect();
    }
    let mut counts = BTreeMap::new();
    let mut h = 0i64;
    *counts.entry(h).or_insert(0) += 1;
    for c in w.chars() {
        h += if c == '+' { 1 } else { -1 };
        *counts.entry(h).or_insert(0) += 1;
    }
    counts
}

#[test]
fn tau3_observed_law() {
    let s = MoveSubstitution::tau3();
    for n in 1..=12u32 {
        let prof = visit_profile(&s.word(n).unwrap());
        assert_eq!(prof.counts(), &tau3_oracle(n), "n = {n}");
        assert_eq!(prof.span(), Some((0, n as i64 + 1)));
        assert_eq!(prof.get(0), 1);
        assert_eq!(prof.get(1), n as u64 + 1);
        assert_eq!(prof.get(n as i64 + 1), 1 << (n - 1));
    }
}

#[test]
fn tau2_centre_visits_stabilise() {
    let s = MoveSubstitution::tau2();
    let window: Vec<i64> = (-5..=5).collect();
    let counts: Vec<Vec<u64>> = (5..=8u32)
        .map(|m| {
            let w = s.word(m).unwrap();
            let prof = centered_profile(&w, &w);
            window.iter().map(|&h| prof.get(h)).collect()
        })
        .collect();
    assert!(counts.windows(2).all(|c| c[0] == c[1]), "{counts:?}");
    assert!(counts[0].iter().all(|&c| c > 0));
}

#[test]
fn canned_classifications() {
    let v = classify_path_space(&MoveSubstitution::constant_up(), 64, None).unwrap();
    assert_eq!(v.class, PathClass::Ascending { constant: 1 });
    let v = classify_path_space(&MoveSubstitution::thue_morse_derivative(), 1024, None).unwrap();
    assert_eq!(v.class, PathClass::Bounded { constant: 1 });
    let s = MoveSubstitution::tau1();
    let v = classify_path_space(&s, 2000, None).unwrap();
    assert!(matches!(v.class, PathClass::UnboundedRecurrent { .. }), "{:?}", v.class);
    assert!(replay_verdict(&s, &v).unwrap());
}
