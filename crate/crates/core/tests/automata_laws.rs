mod common;

use blobshift::automata::{
    compose, evolve, find_glider, nilpotency_probe, step, tfg_order_search, tfg_validate, CaRule, FiniteConfig,
    NilpotencyVerdict, OrderVerdict, TfgElement,
};
use blobshift::patterns::{Alphabet, Symbol};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rule(seed: u64, radius: usize) -> CaRule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table: Vec<Symbol> = (0..3usize.pow(2 * radius as u32 + 1)).map(|_| rng.gen_range(0..3)).collect();
    let alpha = Alphabet::parse("012").unwrap();
    CaRule::from_fn(alpha, radius, |w| {
        if w.iter().all(|&s| s == 0) {
            return 0;
        }
        let idx = w.iter().fold(0usize, |acc, &s| acc * 3 + s as usize);
        table[idx]
    })
    .unwrap()
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn evolution_commutes_with_translation(
        seed in any::<u64>(), radius in 0usize..=2,
        word in proptest::collection::vec(0u8..3, 0..10), off in -30i64..30, v in -40i64..40
    ) {
        let rule = random_rule(seed, radius);
        let c = FiniteConfig::new(off, &word);
        let a: Vec<FiniteConfig> = evolve(&rule, &c, 6).unwrap().iter().map(|x| x.translate(v)).collect();
        let b = evolve(&rule, &c.translate(v), 6).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn xor_orbit_matches_pascal_parity() {
    let rule = CaRule::xor();
    let traj = evolve(&rule, &FiniteConfig::new(0, &[1]), 64).unwrap();
    let mut row = vec![1u8];
    for (t, c) in traj.iter().enumerate() {
        // f(x)_i = x_i + x_{i+1}: cell -j at time t holds C(t, j) mod 2.
        let expected: Vec<u8> = row.iter().rev().copied().collect();
        assert_eq!(c, &FiniteConfig::new(-(t as i64), &expected), "t = {t}");
        let mut next = vec![1u8; t + 2];
        for j in 1..=t {
            next[j] = row[j - 1] ^ row[j];
        }
        row = next;
    }
}

#[test]
fn canned_ca_verdicts() {
    let g = find_glider(&CaRule::shift(Alphabet::binary()), 3, 8).unwrap().unwrap();
    assert_eq!((g.n, g.m), (1, 1));
    assert_eq!(
        nilpotency_probe(&CaRule::decrement(), 4, 16).unwrap(),
        NilpotencyVerdict::NilpotentOnProbe { steps: 2 }
    );
    assert_eq!(find_glider(&CaRule::xor(), 4, 16).unwrap(), None);
}

#[test]
fn step_of_zero_is_zero() {
    let rule = random_rule(7, 1);
    assert!(step(&rule, &FiniteConfig::new(3, &[0, 0])).is_zero());
}

fn inverse_shift() -> TfgElement {
    TfgElement::from_fn(Alphabet::binary(), 1, |_| -1).unwrap()
}

fn elements() -> Vec<TfgElement> {
    let b = Alphabet::binary();
    vec![
        TfgElement::identity(b.clone()),
        TfgElement::shift(b),
        inverse_shift(),
        TfgElement::block_swap(),
    ]
}

#[test]
fn cocycle_of_a_product_follows_the_origin() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let els = elements();
    for _ in 0..1000 {
        let len = rng.gen_range(1..=4);
        let factors: Vec<&TfgElement> = (0..len).map(|_| &els[rng.gen_range(0..els.len())]).collect();
        // factors[0] ∘ factors[1] ∘ … applied right to left.
        let mut product = factors[len - 1].clone();
        for g in factors[..len - 1].iter().rev() {
            product = compose(g, &product).unwrap();
        }
        tfg_validate(&product).unwrap();
        let x: Vec<Symbol> = (0..64).map(|_| rng.gen_range(0..2)).collect();
        let centre = 32usize;
        let mut origin = centre as i64;
        for g in factors.iter().rev() {
            origin += g.cocycle_at(&x, origin as usize);
        }
        assert_eq!(product.cocycle_at(&x, centre), origin - centre as i64);
    }
}

#[test]
fn canned_orders() {
    let b = Alphabet::binary();
    assert_eq!(
        tfg_order_search(&TfgElement::identity(b.clone()), 8, 4).unwrap(),
        OrderVerdict::Torsion { order: 1 }
    );
    assert!(matches!(
        tfg_order_search(&TfgElement::shift(b), 8, 4).unwrap(),
        OrderVerdict::InfiniteOrder { displacement: 1, .. }
    ));
    assert_eq!(
        tfg_order_search(&TfgElement::block_swap(), 8, 4).unwrap(),
        OrderVerdict::Torsion { order: 2 }
    );
    let id = compose(&TfgElement::block_swap(), &TfgElement::block_swap()).unwrap();
    assert!(id.is_identity());
}
