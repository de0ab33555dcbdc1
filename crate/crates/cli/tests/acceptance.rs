//! Acceptance criteria C1–C11, one line each.
//!
//! `C2` is expected to fail: the stated lower bound on the `τ₃` visit
//! counts is false from `n = 4` on. It is run exactly as stated and reported
//! as FAIL. The process exits nonzero on any other failure, or if `C2`
//! starts passing. Set `ACCEPTANCE_STRICT=1` to fail on `C2` too.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use blobshift::automata::{
    compose, evolve, find_glider, nilpotency_probe, tfg_order_search, CaRule, FiniteConfig, NilpotencyVerdict,
    OrderVerdict, TfgElement,
};
use blobshift::blobfractal::{build_hierarchy, classify, verify_axioms, FractalTag};
use blobshift::paths::{
    classify_path_space, derivative, integrate, visit_profile, HeightWord, MoveSubstitution, MoveWord, PathClass,
};
use blobshift::patterns::{blobs, zero_glue, Alphabet, Cell, Dim, Pattern};
use blobshift::primes::{
    crt_zero_run, dirichlet_isolated, gap_floor, is_prime, late_contains, late_language, sieve, SIEVE_CAP,
};
use blobshift::substitution::{
    build_unbounded_rows, canned, density, density_word, iterate_1d, iterate_2d, BlockHierarchySpec,
};
use blobshift::DEFAULT_CELL_CAP;
use num::{BigInt, BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_RED: &[&str] = &["C2"];

type Check = Result<String, String>;

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Check {
    let s = MoveSubstitution::tau1();
    let mut last = 0;
    let mut sizes = Vec::new();
    for n in 0..=8u32 {
        let prof = visit_profile(&s.word(n).map_err(|e| e.to_string())?);
        let min = prof.counts().values().copied().min().unwrap_or(0);
        ensure(min >= 1 << n, || format!("n={n}: count {min} < 2^{n}"))?;
        ensure(prof.support_len() > last, || format!("n={n}: support did not grow"))?;
        last = prof.support_len();
        sizes.push(last);
    }
    Ok(format!("support sizes {sizes:?}"))
}

fn c2() -> Check {
    let s = MoveSubstitution::tau3();
    for n in 1..=12u32 {
        let prof = visit_profile(&s.word(n).map_err(|e| e.to_string())?);
        let top = n as i64 + 1;
        ensure(prof.span() == Some((0, top)) && prof.support_len() == n as usize + 2, || {
            format!("n={n}: support {:?}", prof.span())
        })?;
        ensure(prof.get(0) == 1, || format!("n={n}: z_0 = {}", prof.get(0)))?;
        for i in 1..=top {
            let z = prof.get(i);
            ensure(z >= 1 << (n - 1), || format!("n={n}: z_{i} = {z} < 2^{} = {}", n - 1, 1u64 << (n - 1)))?;
        }
    }
    Ok("all bounds hold".into())
}

fn product(k: u32) -> BigRational {
    (2..=k).fold(BigRational::one(), |acc, i| {
        acc * (BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << i))
    })
}

fn c3() -> Check {
    let half = BigRational::new(1.into(), 2.into());
    for k in 2..=16 {
        let d = density(k).map_err(|e| e.to_string())?;
        ensure(d == product(k), || format!("k={k}: {d} differs from the product"))?;
        ensure(d > half, || format!("k={k}: {d} <= 1/2"))?;
    }
    for k in 2..=6 {
        let (_, d) = density_word(k, DEFAULT_CELL_CAP).map_err(|e| e.to_string())?;
        let exact = BigRational::new((*d.numer()).into(), (*d.denom()).into());
        ensure(exact == product(k), || format!("k={k}: materialised word density {d}"))?;
    }
    Ok(format!("density(16) = {}", density(16).map_err(|e| e.to_string())?))
}

fn c4() -> Check {
    let mut checked = 0;
    for k in [2usize, 3] {
        let spec = BlockHierarchySpec::canonical(k).map_err(|e| e.to_string())?;
        for i in 1..=4u32 {
            let m_prev = if i == 1 { 1 } else { spec.side(i - 1).unwrap() as i64 };
            let side = spec.side(i).unwrap();
            ensure(side == (k as u128 + 1).pow(i - 1) * spec.seed_side() as u128, || format!("k={k} i={i}: side"))?;
            let mut nonzero_rows: Vec<BTreeSet<i64>> = Vec::new();
            for j in 1..=k {
                let p = build_unbounded_rows(&spec, i, j, DEFAULT_CELL_CAP).map_err(|e| e.to_string())?;
                let mut rows = vec![BTreeSet::new(); side as usize];
                for c in p.support() {
                    rows[c.y as usize].insert(c.x);
                }
                let tag = format!("k={k} i={i} j={j}");
                ensure(rows[0] == BTreeSet::from([0]), || format!("{tag}: bottom row {:?}", rows[0]))?;
                ensure(rows.iter().all(|r| r.len() <= k), || format!("{tag}: a row exceeds k"))?;
                ensure(
                    rows.iter().any(|r| {
                        let xs: Vec<i64> = r.iter().copied().collect();
                        xs.len() == k && xs.windows(2).all(|w| w[1] - w[0] >= m_prev)
                    }),
                    || format!("{tag}: no spread row"),
                )?;
                nonzero_rows.push((0..side as i64).filter(|&y| !rows[y as usize].is_empty()).collect());
                checked += 1;
            }
            for a in 0..k {
                for b in a + 1..k {
                    let shared: Vec<_> = nonzero_rows[a].intersection(&nonzero_rows[b]).copied().collect();
                    ensure(shared == [0], || format!("k={k} i={i}: shared rows {shared:?}"))?;
                }
            }
        }
    }
    Ok(format!("{checked} blocks"))
}

fn c5() -> Check {
    let w = iterate_1d(&canned::cantor(), &[1], 4).map_err(|e| e.to_string())?;
    let p = Pattern::from_word(Alphabet::binary(), &w, 0)
        .and_then(|p| p.padded(30))
        .map_err(|e| e.to_string())?;
    let radii: Vec<u64> = (1..=4).map(|i| 3u64.pow(i - 1) + 1).collect();
    let h = build_hierarchy(&p, &radii).map_err(|e| e.to_string())?;
    let report = verify_axioms(&h).map_err(|e| e.to_string())?;
    ensure(report.verified_levels == 4, || format!("cantor verified {} levels", report.verified_levels))?;
    let plus = iterate_2d(&canned::plus(), &canned::unit_seed(), 4)
        .and_then(|p| p.padded(3))
        .map_err(|e| e.to_string())?;
    let h = build_hierarchy(&plus, &[1, 2]).map_err(|e| e.to_string())?;
    let report = verify_axioms(&h).map_err(|e| e.to_string())?;
    ensure(!report.pairs[0].two_disjoint.pass, || "plus fractal passes two-disjoint".into())?;
    let v = classify(&plus, &[1, 2], 50).map_err(|e| e.to_string())?;
    ensure(matches!(v.tag, FractalTag::UnboundedComponent { .. }), || format!("plus classified {:?}", v.tag))?;
    Ok(format!("cantor radii {radii:?}; plus {:?}", v.tag))
}

fn random_pattern(rng: &mut ChaCha8Rng) -> Pattern {
    let (w, h) = (rng.gen_range(1..=10), rng.gen_range(1..=10));
    let density = rng.gen_range(0.05..0.6);
    let mut p = Pattern::new(Dim::Two, Alphabet::new('0', &['a', 'b']).unwrap());
    for y in 0..h {
        for x in 0..w {
            let s = if rng.gen_bool(density) { rng.gen_range(1..=2) } else { 0 };
            p.insert(Cell::new(x, y), s).unwrap();
        }
    }
    p
}

fn c6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut blob_count = 0;
    for _ in 0..1000 {
        let base = random_pattern(&mut rng);
        for r in 1..=3u64 {
            let p = base.padded(r).map_err(|e| e.to_string())?;
            let bs = blobs(&p, r).map_err(|e| e.to_string())?;
            let mut seen = BTreeSet::new();
            let mut glued: Option<Pattern> = None;
            for (b, a) in &bs {
                for c in b.support() {
                    let c = c.checked_add(*a).map_err(|e| e.to_string())?;
                    ensure(seen.insert(c), || format!("cell {c} in two blobs"))?;
                }
                let placed = b.placed_at(*a).map_err(|e| e.to_string())?;
                glued = Some(match glued {
                    None => placed,
                    Some(g) => zero_glue(&g, &placed).map_err(|e| e.to_string())?,
                });
            }
            ensure(seen == p.support(), || "a nonzero cell lies in no blob".into())?;
            if let Some(g) = glued {
                ensure(g.support() == p.support(), || "glued support differs".into())?;
                ensure(g.iter().all(|(c, s)| p.get(c) == Some(s)), || "glued symbols differ".into())?;
            }
            blob_count += bs.len();
        }
    }
    Ok(format!("3000 decompositions, {blob_count} blobs"))
}

fn c7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let len = rng.gen_range(2..64);
        let h: Vec<i64> = (0..len).map(|_| rng.gen_range(-20..=20)).collect();
        let moves: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
        let w = MoveWord::from_moves(moves);
        ensure(derivative(&integrate(&w)) == w, || "derivative∘integrate".into())?;
        let hw = HeightWord::normalized(&h).map_err(|e| e.to_string())?;
        ensure(integrate(&derivative(&hw)) == hw, || "integrate∘derivative".into())?;
        let a = rng.gen_range(0..len - 1);
        let l = rng.gen_range(1..=len - 1 - a);
        let win = HeightWord::normalized(&h[a..=a + l]).map_err(|e| e.to_string())?;
        ensure(derivative(&win).moves() == derivative(&hw).window(a, l).moves(), || "shift equivariance".into())?;
    }
    let up = classify_path_space(&MoveSubstitution::constant_up(), 64, None).map_err(|e| e.to_string())?;
    ensure(up.class == PathClass::Ascending { constant: 1 }, || format!("up: {:?}", up.class))?;
    let tm = classify_path_space(&MoveSubstitution::thue_morse_derivative(), 1024, None).map_err(|e| e.to_string())?;
    ensure(tm.class == PathClass::Bounded { constant: 1 }, || format!("thue-morse: {:?}", tm.class))?;
    let t1 = classify_path_space(&MoveSubstitution::tau1(), 2000, None).map_err(|e| e.to_string())?;
    let PathClass::UnboundedRecurrent { returns, .. } = &t1.class else {
        return Err(format!("tau1: {:?}", t1.class));
    };
    Ok(format!("tau1 witness returns {}", returns.len()))
}

fn c8() -> Check {
    let g = find_glider(&CaRule::shift(Alphabet::binary()), 3, 8).map_err(|e| e.to_string())?;
    ensure(matches!(&g, Some(g) if (g.n, g.m) == (1, 1)), || format!("shift glider {g:?}"))?;
    let v = nilpotency_probe(&CaRule::decrement(), 4, 16).map_err(|e| e.to_string())?;
    ensure(v == NilpotencyVerdict::NilpotentOnProbe { steps: 2 }, || format!("decrement {v:?}"))?;
    let x = find_glider(&CaRule::xor(), 4, 16).map_err(|e| e.to_string())?;
    ensure(x.is_none(), || format!("xor glider {x:?}"))?;
    let traj = evolve(&CaRule::xor(), &FiniteConfig::new(0, &[1]), 64).map_err(|e| e.to_string())?;
    let mut row = vec![1u8];
    for (t, c) in traj.iter().enumerate() {
        let expected: Vec<u8> = row.iter().rev().copied().collect();
        ensure(*c == FiniteConfig::new(-(t as i64), &expected), || format!("xor step {t}"))?;
        let mut next = vec![1u8; t + 2];
        for j in 1..=t {
            next[j] = row[j - 1] ^ row[j];
        }
        row = next;
    }
    Ok("glider (1,1); nilpotent at 2; xor parity over 64 steps".into())
}

fn c9() -> Check {
    let b = Alphabet::binary();
    let id = tfg_order_search(&TfgElement::identity(b.clone()), 8, 4).map_err(|e| e.to_string())?;
    ensure(id == OrderVerdict::Torsion { order: 1 }, || format!("identity {id:?}"))?;
    let sigma = tfg_order_search(&TfgElement::shift(b.clone()), 8, 4).map_err(|e| e.to_string())?;
    ensure(matches!(sigma, OrderVerdict::InfiniteOrder { displacement: 1, .. }), || format!("shift {sigma:?}"))?;
    let swap = TfgElement::block_swap();
    let v = tfg_order_search(&swap, 8, 4).map_err(|e| e.to_string())?;
    ensure(v == OrderVerdict::Torsion { order: 2 }, || format!("swap {v:?}"))?;
    ensure(compose(&swap, &swap).map_err(|e| e.to_string())?.is_identity(), || "swap² ≠ id".into())?;
    let inv = TfgElement::from_fn(b.clone(), 1, |_| -1).map_err(|e| e.to_string())?;
    let els = [TfgElement::identity(b.clone()), TfgElement::shift(b), inv, swap];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let g = &els[rng.gen_range(0..els.len())];
        let h = &els[rng.gen_range(0..els.len())];
        let gh = compose(g, h).map_err(|e| e.to_string())?;
        let x: Vec<u8> = (0..32).map(|_| rng.gen_range(0..2)).collect();
        let a = h.cocycle_at(&x, 16);
        let expected = a + g.cocycle_at(&x, (16 + a) as usize);
        ensure(gh.cocycle_at(&x, 16) == expected, || "cocycle law".into())?;
    }
    Ok("orders 1, ∞, 2; cocycle law on 1000 points".into())
}

fn c10() -> Check {
    let c = crt_zero_run(3, Some(&[5, 7, 11])).map_err(|e| e.to_string())?;
    ensure((c.k, c.modulus) == (20, 385), || format!("crt {c:?}"))?;
    ensure(c.verify() && (0..3).all(|i| !is_prime((c.start + i) as u64)), || "crt run".into())?;
    let w6 = sieve(1_000_000, SIEVE_CAP).map_err(|e| e.to_string())?;
    let l3 = late_language(&w6, 3, 100_000).map_err(|e| e.to_string())?;
    ensure(l3.contains(&vec![1, 0, 1]), || "101 missing".into())?;
    let l2 = late_language(&w6, 2, 10).map_err(|e| e.to_string())?;
    ensure(!l2.contains(&vec![1, 1]), || "11 present".into())?;
    let g = gap_floor(&w6, 100_000);
    ensure(g == Some(2), || format!("gap floor {g:?}"))?;
    let w7 = sieve(10_000_000, SIEVE_CAP).map_err(|e| e.to_string())?;
    for n in 1..=20 {
        let found = late_contains(&w7, &vec![0; n], 10_000).map_err(|e| e.to_string())?;
        ensure(found, || format!("0^{n} not found"))?;
    }
    let mut ps = Vec::new();
    for n in 1..=2 {
        let d = dirichlet_isolated(n, 100_000, None).map_err(|e| e.to_string())?;
        ensure(is_prime(d.p) && (1..=n).all(|i| !is_prime(d.p - i) && !is_prime(d.p + i)), || {
            format!("dirichlet {d:?}")
        })?;
        ps.push(d.p);
    }
    Ok(format!("isolated primes {ps:?}"))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn c11() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let plus = dir.path().join("plus.pat");
    let gen = blobshift_cli::run_with_cap(
        ["blobshift", "gen", "--subst", &data("plus.sub"), "--seed", "1", "--iters", "2", "--format", "text"],
        DEFAULT_CELL_CAP,
    );
    std::fs::write(&plus, &gen.stdout).map_err(|e| e.to_string())?;
    let plus = plus.to_string_lossy().into_owned();
    let cantor = write_cantor(dir.path())?;
    let runs: Vec<Vec<String>> = [
        vec!["gen", "--subst", &data("plus.sub"), "--seed", "1", "--iters", "3"],
        vec!["gen", "--subst", &data("cantor.sub"), "--seed", "1", "--iters", "4", "--format", "pbm"],
        vec!["gen", "--hierarchy", "2", "--level", "3", "--row", "1"],
        vec!["blobs", "--pattern", &plus, "--radius", "1"],
        vec!["glue", "--left", &data("left.pat"), "--right", &data("right.pat"), "--offset", "3,0"],
        vec!["width", "--pattern", &plus, "--radius", "1"],
        vec!["fractal", "verify", "--pattern", &cantor, "--radii", "2,4,10"],
        vec!["fractal", "classify", "--pattern", &plus, "--radii", "1,2", "--threshold", "5"],
        vec!["classify-path", "--builtin", "tau1", "--horizon", "2000"],
        vec!["classify-path", "--subst", &data("tau1.sub"), "--horizon", "500"],
        vec!["pathcover", "geodesic", "--pattern", &plus, "--radius", "1"],
        vec!["pathcover", "ascend", "--pattern", &plus, "--radius", "1", "--m", "2"],
        vec!["pathcover", "guided", "--steps", "1,2", "--offsets", "0,1,-1", "--length", "12"],
        vec!["ca", "glider", "--rule", &data("shift.ca"), "--max-width", "3", "--max-time", "8"],
        vec!["ca", "nilpotent", "--rule", &data("decrement.ca")],
        vec!["ca", "profile", "--rule", &data("xor.ca"), "--config", "1", "--steps", "64"],
        vec!["tfg", "order", "--element", &data("swap.tfg")],
        vec!["primes", "lang", "--limit", "100000", "--length", "6", "--threshold", "1000"],
        vec!["primes", "crt", "--n", "3", "--injection", "5,7,11"],
        vec!["primes", "isolated", "--n", "3", "--limit", "10000"],
        vec!["primes", "dirichlet", "--n", "2"],
        vec!["primes", "gaps", "--limit", "1000000", "--threshold", "100000"],
        vec!["render", "--builtin", "tau1", "--iters", "4", "--format", "svg-paths"],
    ]
    .into_iter()
    .map(|v| std::iter::once("blobshift").chain(v).map(String::from).collect())
    .collect();
    let mut commands = BTreeSet::new();
    for argv in &runs {
        let a = blobshift_cli::run_with_cap(argv, DEFAULT_CELL_CAP);
        let b = blobshift_cli::run_with_cap(argv, DEFAULT_CELL_CAP);
        ensure(a.code == 0, || format!("{argv:?} exited {}: {}", a.code, a.stderr))?;
        ensure(a == b, || format!("{argv:?} differs between runs"))?;
        commands.insert(argv[1].clone());
    }
    ensure(commands.len() == 11, || format!("covered {commands:?}"))?;
    Ok(format!("{} invocations over {} subcommands", runs.len(), commands.len()))
}

fn write_cantor(dir: &Path) -> Result<String, String> {
    let w = iterate_1d(&canned::cantor(), &[1], 3).map_err(|e| e.to_string())?;
    let p = Pattern::from_word(Alphabet::binary(), &w, 0)
        .and_then(|p| p.padded(12))
        .map_err(|e| e.to_string())?;
    let path = dir.join("cantor.pat");
    std::fs::write(&path, blobshift::patterns::to_text(&p)).map_err(|e| e.to_string())?;
    Ok(path.to_string_lossy().into_owned())
}

fn main() {
    let criteria = [
        Criterion { id: "C1", name: "tau1 visit-count law", limit: Duration::from_secs(5), run: c1 },
        Criterion { id: "C2", name: "tau3 visit-count law", limit: Duration::from_secs(10), run: c2 },
        Criterion { id: "C3", name: "density product", limit: Duration::from_secs(5), run: c3 },
        Criterion { id: "C4", name: "block hierarchy invariants", limit: Duration::from_secs(10), run: c4 },
        Criterion { id: "C5", name: "blob axioms", limit: Duration::from_secs(10), run: c5 },
        Criterion { id: "C6", name: "blob partition law", limit: Duration::from_secs(10), run: c6 },
        Criterion { id: "C7", name: "path conjugacy and classification", limit: Duration::from_secs(10), run: c7 },
        Criterion { id: "C8", name: "cellular automata", limit: Duration::from_secs(10), run: c8 },
        Criterion { id: "C9", name: "topological full group", limit: Duration::from_secs(10), run: c9 },
        Criterion { id: "C10", name: "primes", limit: Duration::from_secs(60), run: c10 },
        Criterion { id: "C11", name: "determinism audit", limit: Duration::from_secs(60), run: c11 },
    ];
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > c.limit => Err(format!("{d}; took {elapsed:.2?} > {:?}", c.limit)),
            o => o,
        };
        let known = KNOWN_RED.contains(&c.id);
        match &outcome {
            Ok(detail) => {
                println!("[acceptance] {} {} ... PASS ({elapsed:.2?}) {detail}", c.id, c.name);
                if known {
                    unexpected.push(format!("{} passes but is recorded as failing", c.id));
                }
            }
            Err(why) => {
                let note = if known { " [known failure]" } else { "" };
                println!("[acceptance] {} {} ... FAIL ({elapsed:.2?}) {why}{note}", c.id, c.name);
                if !known || strict {
                    unexpected.push(format!("{} failed", c.id));
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("[acceptance] unexpected: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
