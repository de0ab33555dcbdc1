//! Blob hierarchies: distinct blobs at a schedule of radii, checks of the
//! three blob-fractal axioms between consecutive levels, and the
//! finite-point / unbounded-component / blob-fractal classification of a
//! finite window.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pathcover::geodesic_witness;
use crate::patterns::{blob_decomposition, zero_glue, Blob, Cell, Pattern};

/// A distinct blob of one level together with how often it occurs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelBlob {
    #[serde(skip)]
    pub blob: Blob,
    pub support: Vec<Cell>,
    pub count: usize,
    pub first_anchor: Cell,
}

/// One `r`-component of the source window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub anchor: Cell,
    /// Index into the level's blobs; `None` if the component is truncated
    /// by the window.
    pub blob: Option<usize>,
    pub support_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    pub radius: u64,
    pub blobs: Vec<LevelBlob>,
    pub occurrences: Vec<Occurrence>,
    pub truncated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlobHierarchy {
    pub source: Pattern,
    pub levels: Vec<Level>,
}

/// Distinct `r_i`-blobs of `p` for each radius of the schedule. Components
/// whose padding leaves the window are recorded as truncated.
pub fn build_hierarchy(p: &Pattern, radii: &[u64]) -> Result<BlobHierarchy> {
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::RadiiNotIncreasing);
    }
    let mut levels = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut blobs: Vec<LevelBlob> = Vec::new();
        let mut index: HashMap<Blob, usize> = HashMap::new();
        let mut occurrences = Vec::new();
        let mut truncated = 0;
        for cb in blob_decomposition(p, r)? {
            let slot = match cb.blob {
                Some(b) => {
                    let i = *index.entry(b.clone()).or_insert_with(|| {
                        blobs.push(LevelBlob {
                            support: b.support().into_iter().collect(),
                            blob: b,
                            count: 0,
                            first_anchor: cb.anchor,
                        });
                        blobs.len() - 1
                    });
                    blobs[i].count += 1;
                    Some(i)
                }
                None => {
                    truncated += 1;
                    None
                }
            };
            occurrences.push(Occurrence {
                anchor: cb.anchor,
                blob: slot,
                support_len: cb.support.len(),
            });
        }
        levels.push(Level {
            radius: r,
            blobs,
            occurrences,
            truncated,
        });
    }
    Ok(BlobHierarchy {
        source: p.clone(),
        levels,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub pass: bool,
    /// A source-window cell where the axiom fails.
    pub counterexample: Option<Cell>,
    pub detail: Option<String>,
}

impl AxiomCheck {
    fn ok() -> Self {
        AxiomCheck {
            pass: true,
            counterexample: None,
            detail: None,
        }
    }

    fn fail(cell: Option<Cell>, detail: impl Into<String>) -> Self {
        AxiomCheck {
            pass: false,
            counterexample: cell,
            detail: Some(detail.into()),
        }
    }
}

/// Axioms between level `lower` and level `lower + 1`:
/// (a) gluing, (b) containment of every lower blob, (c) two disjoint
/// lower blobs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub lower: usize,
    pub glue: AxiomCheck,
    pub contains_all: AxiomCheck,
    pub two_disjoint: AxiomCheck,
}

impl PairReport {
    pub fn pass(&self) -> bool {
        self.glue.pass && self.contains_all.pass && self.two_disjoint.pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub pairs: Vec<PairReport>,
    /// One more than the number of leading level pairs that pass.
    pub verified_levels: usize,
}

/// Checks the three axioms on every consecutive pair of levels, using only
/// blobs that are not truncated by the window.
pub fn verify_axioms(h: &BlobHierarchy) -> Result<AxiomReport> {
    if h.levels.len() < 2 {
        return Err(Error::InvalidArgument("need at least two levels".into()));
    }
    let mut pairs = Vec::new();
    for i in 0..h.levels.len() - 1 {
        pairs.push(check_pair(&h.levels[i], &h.levels[i + 1], i)?);
    }
    let leading = pairs.iter().take_while(|p| p.pass()).count();
    Ok(AxiomReport {
        pairs,
        verified_levels: leading + 1,
    })
}

fn check_pair(low: &Level, high: &Level, lower: usize) -> Result<PairReport> {
    let mut report = PairReport {
        lower,
        glue: AxiomCheck::ok(),
        contains_all: AxiomCheck::ok(),
        two_disjoint: AxiomCheck::ok(),
    };
    if low.blobs.is_empty() || high.blobs.is_empty() {
        let msg = "no complete blobs at this scale";
        report.glue = AxiomCheck::fail(None, msg);
        report.contains_all = AxiomCheck::fail(None, msg);
        report.two_disjoint = AxiomCheck::fail(None, msg);
        return Ok(report);
    }
    let known: HashMap<&Blob, usize> = low.blobs.iter().enumerate().map(|(i, b)| (&b.blob, i)).collect();
    for upper in &high.blobs {
        let base = upper.first_anchor;
        let parts = blob_decomposition(upper.blob.pattern(), low.radius)?;
        let mut members = Vec::new();
        let mut glued: Option<Pattern> = None;
        for part in &parts {
            let at = part.anchor.checked_add(base)?;
            let Some(b) = &part.blob else {
                if report.glue.pass {
                    report.glue = AxiomCheck::fail(Some(at), "sub-component padding leaves the blob");
                }
                continue;
            };
            match known.get(b) {
                Some(&k) => members.push(k),
                None if report.glue.pass => {
                    report.glue = AxiomCheck::fail(Some(at), "sub-blob is not a blob of the lower level");
                }
                None => {}
            }
            let placed = b.placed_at(part.anchor)?;
            glued = match glued {
                None => Some(placed),
                Some(g) => match zero_glue(&g, &placed) {
                    Ok(p) => Some(p),
                    Err(_) => {
                        if report.glue.pass {
                            report.glue = AxiomCheck::fail(Some(at), "sub-blobs do not zero-glue");
                        }
                        Some(g)
                    }
                },
            };
        }
        if report.glue.pass {
            let g = glued.expect("blobs have nonempty support");
            let agrees = g.support() == upper.blob.support()
                && g.iter().all(|(c, s)| upper.blob.pattern().get(c) == Some(s));
            if !agrees {
                report.glue = AxiomCheck::fail(Some(base), "gluing does not reproduce the blob");
            }
        }
        if report.contains_all.pass {
            if let Some(missing) = (0..low.blobs.len()).find(|k| !members.contains(k)) {
                report.contains_all = AxiomCheck::fail(
                    Some(base),
                    format!("lower blob first seen at {} does not occur", low.blobs[missing].first_anchor),
                );
            }
        }
        if report.two_disjoint.pass && members.len() < 2 {
            report.two_disjoint = AxiomCheck::fail(
                Some(base),
                format!("only {} lower blob(s) inside", members.len()),
            );
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum FractalTag {
    FinitePointCandidate,
    UnboundedComponent { r: u64, witness_len: usize },
    BlobFractalCandidate { levels_verified: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractalVerdict {
    pub tag: FractalTag,
    pub report: Option<AxiomReport>,
}

/// Classifies the window `p` at the given radii.
///
/// Checked in order: some radius has a component whose geodesic witness
/// reaches `component_threshold` cells; the last two levels hold one
/// complete blob each, with the same support; otherwise a blob-fractal
/// candidate with the number of verified levels.
pub fn classify(p: &Pattern, radii: &[u64], component_threshold: usize) -> Result<FractalVerdict> {
    if component_threshold == 0 {
        return Err(Error::InvalidArgument("component threshold must be positive".into()));
    }
    let h = build_hierarchy(p, radii)?;
    let report = if h.levels.len() >= 2 { Some(verify_axioms(&h)?) } else { None };
    if p.support_len() > 0 {
        for &r in radii {
            let len = geodesic_witness(p, r)?.len();
            if len >= component_threshold {
                return Ok(FractalVerdict {
                    tag: FractalTag::UnboundedComponent { r, witness_len: len },
                    report,
                });
            }
        }
    }
    let single = |l: &Level| l.occurrences.len() == 1 && l.truncated == 0;
    let n = h.levels.len();
    if n >= 2 && single(&h.levels[n - 2]) && single(&h.levels[n - 1])
        && h.levels[n - 2].blobs[0].support == h.levels[n - 1].blobs[0].support
    {
        return Ok(FractalVerdict {
            tag: FractalTag::FinitePointCandidate,
            report,
        });
    }
    let levels_verified = report.as_ref().map_or(h.levels.len().min(1), |r| r.verified_levels);
    Ok(FractalVerdict {
        tag: FractalTag::BlobFractalCandidate { levels_verified },
        report,
    })
}

/// Radii schedule starting at `start` and doubling, keeping each radius at
/// which the number of components changes, until a single component
/// remains or `max_levels` radii are collected.
pub fn auto_radii(p: &Pattern, start: u64, max_levels: usize) -> Result<Vec<u64>> {
    let support = p.support();
    let mut out = Vec::new();
    let mut prev = None;
    let mut r = start.max(1);
    while out.len() < max_levels {
        let count = crate::patterns::connected_components(&support, r).len();
        if prev != Some(count) {
            out.push(r);
            prev = Some(count);
        }
        if count <= 1 {
            break;
        }
        r = r.checked_mul(2).ok_or(Error::CoordinateOverflow)?;
    }
    Ok(out)
}

/// Nonzero cells covered by complete blobs, per level, counted with
/// multiplicity.
pub fn covered_cells(h: &BlobHierarchy) -> Vec<usize> {
    h.levels
        .iter()
        .map(|l| l.blobs.iter().map(|b| b.count * b.support.len()).sum())
        .collect()
}

/// Occurrence counts keyed by blob support size, for reports.
pub fn size_histogram(level: &Level) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for b in &level.blobs {
        *h.entry(b.support.len()).or_insert(0) += b.count;
    }
    h
}
