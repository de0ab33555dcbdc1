//! One adapter per subcommand: read inputs, call the library, shape the
//! result.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use blobshift::automata::{
    asymptotic_profile, evolve, find_glider, nilpotency_probe, parse_ca, parse_tfg, tfg_order_search, FiniteConfig,
};
use blobshift::blobfractal::{auto_radii, build_hierarchy, classify, size_histogram, verify_axioms, Level};
use blobshift::pathcover::{find_ascending_path, geodesic_witness, trace_guided_path};
use blobshift::paths::{classify_path_space, MoveSubstitution, MoveWord, PathClass};
use blobshift::patterns::{
    blob_decomposition, essential_width_lower_bound, from_text, sparsity, to_text, zero_glue, Alphabet, Cell, Dim,
    Pattern,
};
use blobshift::primes::{
    crt_zero_run, dirichlet_isolated, gap_floor, isolated_prime_search, late_language, sieve, SIEVE_CAP,
};
use blobshift::substitution::{
    build_unbounded_rows, iterate_1d, iterate_2d, parse_substitution, AnySubstitution, BlockHierarchySpec,
};

use crate::args::*;
use crate::render::{render, render_moves};
use crate::{CliError, Context, Produced};

type Out = Result<Produced, CliError>;

pub(crate) fn dispatch(cmd: &Command, ctx: &mut Context) -> Out {
    match cmd {
        Command::Gen(a) => gen(a, ctx),
        Command::Blobs { pattern, radius } => blobs(ctx, pattern, *radius),
        Command::Glue { left, right, offset } => glue(ctx, left, right, offset),
        Command::Width { pattern, radius } => width(ctx, pattern, *radius),
        Command::Fractal(f) => fractal(f, ctx),
        Command::ClassifyPath(a) => classify_path(a, ctx),
        Command::Pathcover(p) => pathcover(p, ctx),
        Command::Ca(c) => ca(c, ctx),
        Command::Tfg(TfgCommand::Order {
            element,
            max_order,
            max_period,
        }) => {
            let g = parse_tfg(&ctx.read("element", element)?)?;
            json_only(&tfg_order_search(&g, *max_order, *max_period)?)
        }
        Command::Primes(p) => primes(p),
        Command::Render(a) => render_cmd(a, ctx),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialise")
}

fn json_only<T: serde::Serialize>(v: &T) -> Out {
    Ok(Produced {
        result: to_value(v),
        raw: None,
    })
}

fn pattern_summary(p: &Pattern) -> Value {
    let bounds = p.bounds().map(|(lo, hi)| json!([lo, hi]));
    json!({
        "dims": p.dim().as_u8(),
        "alphabet": p.alphabet().spec(),
        "bounds": bounds,
        "support_len": p.support_len(),
        "text": to_text(p),
    })
}

fn pattern_out(p: &Pattern, ctx: &Context) -> Out {
    Ok(Produced {
        result: pattern_summary(p),
        raw: Some(render(p, ctx.format)?),
    })
}

fn read_pattern(ctx: &mut Context, flag: &str, path: &Path) -> Result<Pattern, CliError> {
    Ok(from_text(&ctx.read(flag, path)?)?)
}

fn gen(a: &GenArgs, ctx: &mut Context) -> Out {
    if let Some(k) = a.hierarchy {
        let spec = BlockHierarchySpec::canonical(k)?;
        let p = build_unbounded_rows(&spec, a.level.unwrap_or(1), a.row.unwrap_or(1), ctx.cap)?;
        return pattern_out(&p, ctx);
    }
    let Some(path) = &a.subst else {
        return Err(CliError::Usage("gen needs --subst or --hierarchy".into()));
    };
    let p = match parse_substitution(&ctx.read("subst", path)?)? {
        AnySubstitution::One(s) => {
            let s = s.with_cap(ctx.cap);
            let seed = match (&a.seed, &a.seed_file) {
                (Some(w), _) => s.encode(w)?,
                (None, Some(f)) => read_pattern(ctx, "seed-file", f)?.word()?,
                (None, None) => return Err(CliError::Usage("gen needs --seed or --seed-file".into())),
            };
            let w = iterate_1d(&s, &seed, a.iters)?;
            Pattern::from_word(s.alphabet().clone(), &w, 0)?
        }
        AnySubstitution::Two(s) => {
            let s = s.with_cap(ctx.cap);
            let seed = match (&a.seed, &a.seed_file) {
                (Some(c), _) => seed_symbol(s.alphabet(), c)?,
                (None, Some(f)) => read_pattern(ctx, "seed-file", f)?,
                (None, None) => return Err(CliError::Usage("gen needs --seed or --seed-file".into())),
            };
            iterate_2d(&s, &seed, a.iters)?
        }
    };
    pattern_out(&p, ctx)
}

fn seed_symbol(alpha: &Alphabet, s: &str) -> Result<Pattern, CliError> {
    let mut chars = s.chars();
    let (Some(c), None) = (chars.next(), chars.next()) else {
        return Err(CliError::Usage(format!("--seed {s}: a 2D seed is a single symbol")));
    };
    let sym = alpha
        .symbol_of(c)
        .ok_or_else(|| CliError::Usage(format!("--seed {s}: not in alphabet {}", alpha.spec())))?;
    let mut p = Pattern::new(Dim::Two, alpha.clone());
    p.insert(Cell::ORIGIN, sym)?;
    Ok(p)
}

fn blobs(ctx: &mut Context, path: &Path, r: u64) -> Out {
    let p = read_pattern(ctx, "pattern", path)?;
    let items: Vec<Value> = blob_decomposition(&p, r)?
        .iter()
        .map(|cb| {
            let rel: Vec<Cell> = cb
                .support
                .iter()
                .map(|c| Cell::new(c.x - cb.anchor.x, c.y - cb.anchor.y))
                .collect();
            json!({
                "anchor": cb.anchor,
                "support": rel,
                "truncated": cb.blob.is_none(),
                "text": cb.blob.as_ref().map(|b| to_text(b.pattern())),
            })
        })
        .collect();
    let text: String = items
        .iter()
        .map(|b| format!("{} {} {}\n", b["anchor"], b["support"].as_array().map_or(0, Vec::len), b["truncated"]))
        .collect();
    Ok(Produced {
        result: json!({ "radius": r, "blobs": items }),
        raw: text_only(ctx, text)?,
    })
}

fn text_only(ctx: &Context, text: String) -> Result<Option<Vec<u8>>, CliError> {
    match ctx.format {
        Format::Json | Format::Text => Ok(Some(text.into_bytes())),
        f => Err(CliError::Domain(blobshift::Error::UnsupportedFormat(format!("{f:?} for this subcommand")))),
    }
}

fn glue(ctx: &mut Context, left: &Path, right: &Path, offset: &[i64]) -> Out {
    let a = read_pattern(ctx, "left", left)?;
    let v = Cell::new(offset.first().copied().unwrap_or(0), offset.get(1).copied().unwrap_or(0));
    let b = read_pattern(ctx, "right", right)?.translate(v)?;
    pattern_out(&zero_glue(&a, &b)?, ctx)
}

fn width(ctx: &mut Context, path: &Path, r: u64) -> Out {
    let p = read_pattern(ctx, "pattern", path)?;
    let rows = p.rows();
    json_only(&json!({
        "radius": r,
        "rows": rows.len(),
        "sparsity": sparsity(&rows),
        "width_lower_bound": essential_width_lower_bound(&rows, r),
    }))
}

fn radii_for(a: &RadiiArgs, p: &Pattern) -> Result<Vec<u64>, CliError> {
    if a.auto {
        Ok(auto_radii(p, 1, a.max_levels)?)
    } else {
        Ok(a.radii.clone())
    }
}

fn level_summary(l: &Level) -> Value {
    let hist: Vec<[usize; 2]> = size_histogram(l).into_iter().map(|(s, n)| [s, n]).collect();
    json!({
        "radius": l.radius,
        "distinct_blobs": l.blobs.len(),
        "occurrences": l.occurrences.len(),
        "truncated": l.truncated,
        "size_histogram": hist,
    })
}

fn fractal(f: &FractalCommand, ctx: &mut Context) -> Out {
    match f {
        FractalCommand::Verify { radii, render_dir } => {
            let p = read_pattern(ctx, "pattern", &radii.pattern)?;
            let rs = radii_for(radii, &p)?;
            let h = build_hierarchy(&p, &rs)?;
            let report = verify_axioms(&h)?;
            if let Some(dir) = render_dir {
                fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("--render-dir {}: {e}", dir.display())))?;
                for (i, l) in h.levels.iter().enumerate() {
                    let cells = l.occurrences.iter().filter(|o| o.blob.is_some()).flat_map(|o| {
                        l.blobs[o.blob.expect("filtered")]
                            .support
                            .iter()
                            .map(move |c| Cell::new(c.x + o.anchor.x, c.y + o.anchor.y))
                    });
                    let mut q = Pattern::new(p.dim(), Alphabet::binary());
                    for c in p.domain() {
                        q.insert(c, 0)?;
                    }
                    for c in cells {
                        q.insert(c, 1)?;
                    }
                    let file = dir.join(format!("level-{}.pbm", i + 1));
                    fs::write(&file, render(&q, Format::Pbm)?)
                        .map_err(|e| CliError::Usage(format!("--render-dir {}: {e}", file.display())))?;
                }
            }
            json_only(&json!({
                "radii": rs,
                "levels": h.levels.iter().map(level_summary).collect::<Vec<_>>(),
                "axioms": report,
            }))
        }
        FractalCommand::Classify { radii, threshold } => {
            let p = read_pattern(ctx, "pattern", &radii.pattern)?;
            let rs = radii_for(radii, &p)?;
            let v = classify(&p, &rs, *threshold)?;
            json_only(&json!({ "radii": rs, "threshold": threshold, "verdict": v }))
        }
    }
}

fn builtin_path(b: PathBuiltin) -> MoveSubstitution {
    match b {
        PathBuiltin::Tau1 => MoveSubstitution::tau1(),
        PathBuiltin::Tau2 => MoveSubstitution::tau2(),
        PathBuiltin::Tau3 => MoveSubstitution::tau3(),
        PathBuiltin::Up => MoveSubstitution::constant_up(),
        PathBuiltin::ThueMorse => MoveSubstitution::thue_morse_derivative(),
    }
}

fn classify_path(a: &ClassifyPathArgs, ctx: &mut Context) -> Out {
    let s = match (&a.subst, a.builtin) {
        (Some(path), _) => match parse_substitution(&ctx.read("subst", path)?)? {
            AnySubstitution::One(s) => MoveSubstitution::from_signs(s.with_cap(ctx.cap), a.seed)?,
            AnySubstitution::Two(_) => {
                return Err(CliError::Usage("--subst: path substitutions are one-dimensional".into()))
            }
        },
        (None, Some(b)) => builtin_path(b),
        (None, None) => return Err(CliError::Usage("classify-path needs --subst or --builtin".into())),
    };
    let v = classify_path_space(&s, a.horizon, a.min_returns)?;
    let (constant, witness) = match &v.class {
        PathClass::Ascending { constant } | PathClass::Descending { constant } => (Some(*constant as u64), None),
        PathClass::Bounded { constant } => (Some(*constant), None),
        PathClass::UnboundedRecurrent { witness, .. } => (None, Some(witness.clone())),
        PathClass::Inconclusive => (None, None),
    };
    let tag = to_value(&v.class)["tag"].clone();
    json_only(&json!({
        "tag": tag,
        "constant": constant,
        "witness": witness,
        "horizon": v.horizon,
        "certificate": v,
    }))
}

fn pathcover(p: &PathcoverCommand, ctx: &mut Context) -> Out {
    match p {
        PathcoverCommand::Geodesic { pattern, radius } => {
            let q = read_pattern(ctx, "pattern", pattern)?;
            let path = geodesic_witness(&q, *radius)?;
            json_only(&json!({ "radius": radius, "len": path.len(), "cells": path.cells() }))
        }
        PathcoverCommand::Ascend {
            pattern,
            radius,
            m,
            budget,
        } => {
            let q = read_pattern(ctx, "pattern", pattern)?;
            let s = find_ascending_path(&q, *radius, *m, *budget)?;
            json_only(&json!({
                "radius": radius,
                "m": m,
                "exhaustive": s.exhaustive,
                "expanded": s.expanded,
                "cells": s.path.as_ref().map(|p| p.cells()),
            }))
        }
        PathcoverCommand::Guided { steps, offsets, length } => {
            let steps: Vec<u64> = steps.iter().copied().cycle().take(*length).collect();
            let offsets: Vec<i64> = offsets.iter().copied().cycle().take(*length).collect();
            let q = trace_guided_path(&steps, &offsets, *length)?;
            if (q.len() as u128) > ctx.cap {
                return Err(blobshift::Error::SizeLimit {
                    requested: q.len() as u128,
                    cap: ctx.cap,
                }
                .into());
            }
            pattern_out(&q, ctx)
        }
    }
}

fn parse_config(alpha: &Alphabet, s: &str, offset: i64) -> Result<FiniteConfig, CliError> {
    let word = s
        .chars()
        .map(|c| {
            alpha
                .symbol_of(c)
                .ok_or_else(|| CliError::Usage(format!("--config {s}: '{c}' not in alphabet {}", alpha.spec())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteConfig::new(offset, &word))
}

fn ca(c: &CaCommand, ctx: &mut Context) -> Out {
    match c {
        CaCommand::Glider {
            rule,
            max_width,
            max_time,
        } => {
            let r = parse_ca(&ctx.read("rule", rule)?)?;
            let g = find_glider(&r, *max_width, *max_time)?;
            json_only(&json!({ "glider": g }))
        }
        CaCommand::Nilpotent {
            rule,
            max_width,
            max_time,
        } => {
            let r = parse_ca(&ctx.read("rule", rule)?)?;
            json_only(&nilpotency_probe(&r, *max_width, *max_time)?)
        }
        CaCommand::Profile {
            rule,
            config,
            offset,
            steps,
        } => {
            let r = parse_ca(&ctx.read("rule", rule)?)?;
            let c0 = parse_config(r.alphabet(), config, *offset)?;
            let counts = asymptotic_profile(&r, &c0, *steps)?;
            let traj = evolve(&r, &c0, *steps)?;
            let text: String = traj
                .iter()
                .map(|c| format!("{:>6} {}\n", c.offset, c.render(r.alphabet())))
                .collect();
            Ok(Produced {
                result: json!({ "counts": counts, "final": traj.last() }),
                raw: text_only(ctx, text)?,
            })
        }
    }
}

fn primes(p: &PrimesCommand) -> Out {
    match p {
        PrimesCommand::Lang {
            limit,
            length,
            threshold,
            export,
        } => {
            let w = sieve(*limit, SIEVE_CAP)?;
            let words: Vec<String> = late_language(&w, *length, *threshold)?
                .iter()
                .map(|f| f.iter().map(|b| char::from(b'0' + b)).collect())
                .collect();
            if let Some(path) = export {
                fs::write(path, to_text(&w.to_pattern()?))
                    .map_err(|e| CliError::Usage(format!("--export {}: {e}", path.display())))?;
            }
            json_only(&json!({ "limit": limit, "length": length, "threshold": threshold, "words": words }))
        }
        PrimesCommand::Crt { n, injection } => json_only(&crt_zero_run(*n, injection.as_deref())?),
        PrimesCommand::Isolated { n, limit } => {
            let w = sieve(*limit, SIEVE_CAP)?;
            json_only(&json!({ "n": n, "limit": limit, "prime": isolated_prime_search(*n, &w) }))
        }
        PrimesCommand::Dirichlet {
            n,
            scan_limit,
            injection,
        } => json_only(&dirichlet_isolated(*n, *scan_limit, injection.as_deref())?),
        PrimesCommand::Gaps { limit, threshold } => {
            let w = sieve(*limit, SIEVE_CAP)?;
            json_only(&json!({ "limit": limit, "threshold": threshold, "gap_floor": gap_floor(&w, *threshold) }))
        }
    }
}

fn render_cmd(a: &RenderArgs, ctx: &mut Context) -> Out {
    let moves = match (&a.pattern, &a.moves, a.builtin) {
        (Some(path), _, _) => {
            let p = read_pattern(ctx, "pattern", path)?;
            return pattern_out(&p, ctx);
        }
        (None, Some(m), _) => MoveWord::parse(m)?,
        (None, None, Some(b)) => builtin_path(b).word(a.iters)?,
        (None, None, None) => return Err(CliError::Usage("render needs --pattern, --moves or --builtin".into())),
    };
    Ok(Produced {
        result: json!({ "moves": moves.to_string(), "len": moves.len() }),
        raw: Some(render_moves(&moves, ctx.format)?),
    })
}
