//! The elimination pipeline. For a sporadic group `H`, a group with the same
//! codegree set would have a simple quotient `G/N`, a cover-like extension
//! when `N` is central, or an embedding of `H` into `GL(n, p)` when `N` is
//! elementary abelian. Each stage rules one of these out with exact
//! arithmetic, and a final sweep checks that no sporadic codegree set
//! contains another.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::arith::{divides, BigNat};
use crate::codegrees::{count_dividing, is_subset, witness_codegree};
use crate::dataset::{check_reference_multipliers, Dataset, DiscrepancyNote, SporadicRecord};
use crate::groups::{duplicate_of, enumerate_candidates, formula_order, gl_order, SimpleGroupId, Sporadic};
use crate::tables::{table1_rows, Table1Row, Table2Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Stage {
    Quotient,
    Schur,
    GlEmbedding,
    Pairwise,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Quotient => "quotient",
            Stage::Schur => "schur",
            Stage::GlEmbedding => "gl-embedding",
            Stage::Pairwise => "pairwise",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum EliminationReason {
    BelowGenericThreshold,
    BelowExceptionalThreshold,
    IsTargetGroup,
    /// A sporadic candidate whose codegree set is not inside `cod(H)`.
    CodegreesNotContained,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CandidateVerdict {
    pub candidate: SimpleGroupId,
    pub order: BigNat,
    pub dividing_codegree_count: usize,
    pub threshold_applied: u32,
    pub eliminated: bool,
    pub reason: Option<EliminationReason>,
    /// Another emitted id naming the same abstract group.
    pub duplicate_of: Option<SimpleGroupId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuotientDetails {
    pub candidates: Vec<CandidateVerdict>,
    pub max_dividing_count: usize,
    /// Present for the Monster.
    pub table1: Option<Vec<Table1Row>>,
}

/// A printed codegree compared with the computed witness codegree.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReferenceCheck {
    pub text: String,
    pub value: BigNat,
    pub matches: bool,
    pub composite_bases: Vec<BigNat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoverCheck {
    pub divisor: u64,
    pub cover_order: BigNat,
    pub witness_degree: Option<BigNat>,
    pub witness_codegree: Option<BigNat>,
    pub ruled_out: bool,
    pub reference: Option<ReferenceCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchurDetails {
    pub multiplier: BigNat,
    pub covers: Vec<CoverCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GlCase {
    pub p: u64,
    pub n: u32,
    pub gl_order: BigNat,
    pub embeds: bool,
    pub min_faithful: Option<u64>,
    pub ruled_out: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GlDetails {
    pub cases: Vec<GlCase>,
    pub table2: Vec<Table2Row>,
    pub upward_closed: bool,
}

/// A codegree of `k` missing from `cod(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairWitness {
    pub k: Sporadic,
    pub h: Sporadic,
    pub codegree: BigNat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairwiseDetails {
    pub pairs_checked: usize,
    pub non_contained: usize,
    pub contained: Vec<(Sporadic, Sporadic)>,
    pub witnesses: Vec<PairWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum StageDetails {
    Quotient(QuotientDetails),
    Schur(SchurDetails),
    GlEmbedding(GlDetails),
    Pairwise(PairwiseDetails),
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StageReport {
    /// Absent for the pairwise sweep, which covers every group.
    pub group: Option<Sporadic>,
    pub stage: Stage,
    pub passed: bool,
    pub notes: Vec<String>,
    pub details: StageDetails,
}

fn candidate_order(c: &SimpleGroupId) -> BigNat {
    formula_order(c)
}

/// Non-sporadic candidates from the enumeration plus every other sporadic
/// group whose order divides `|H|`.
pub fn quotient_candidates(h: Sporadic) -> Vec<SimpleGroupId> {
    let bound = h.order();
    let mut out = enumerate_candidates(&bound);
    out.extend(
        Sporadic::ALL
            .into_iter()
            .filter(|&k| k != h && k.order().divides(&bound))
            .map(SimpleGroupId::Sporadic),
    );
    out
}

pub fn stage_quotient(h: &SporadicRecord, ds: &Dataset) -> StageReport {
    let cod_h = h.codegrees();
    let generic = ds.thresholds.generic_min_codegrees;
    let mut verdicts = Vec::new();
    let mut notes = Vec::new();
    for candidate in quotient_candidates(h.group) {
        let order = candidate_order(&candidate);
        let count = count_dividing(cod_h, &order);
        let (threshold, eliminated, reason) = if candidate == SimpleGroupId::Sporadic(h.group) {
            (generic, true, Some(EliminationReason::IsTargetGroup))
        } else if let Some(k) = candidate.as_sporadic() {
            let contained = is_subset(ds.record(k).codegrees(), cod_h);
            (generic, !contained, (!contained).then_some(EliminationReason::CodegreesNotContained))
        } else if let Some(pair) = ds.exceptional_pair(h.group, &candidate) {
            let t = pair.threshold(&ds.thresholds);
            let ok = count <= t as usize;
            if let Some(note) = &pair.note {
                notes.push(format!("{candidate}: {note}"));
            }
            (t, ok, ok.then_some(EliminationReason::BelowExceptionalThreshold))
        } else {
            let ok = count <= generic as usize;
            (generic, ok, ok.then_some(EliminationReason::BelowGenericThreshold))
        };
        if !eliminated {
            notes.push(format!(
                "{candidate} survives: {count} codegrees of {} divide its order (threshold {threshold})",
                h.name()
            ));
        }
        verdicts.push(CandidateVerdict {
            duplicate_of: duplicate_of(&candidate),
            candidate,
            order,
            dividing_codegree_count: count,
            threshold_applied: threshold,
            eliminated,
            reason,
        });
    }
    let passed = verdicts.iter().all(|v| v.eliminated);
    let max_dividing_count = verdicts
        .iter()
        .filter(|v| v.candidate.as_sporadic().is_none())
        .map(|v| v.dividing_codegree_count)
        .max()
        .unwrap_or(0);
    let table1 = (h.group == Sporadic::M).then(|| table1_rows(verdicts.iter().map(|v| &v.candidate)));
    StageReport {
        group: Some(h.group),
        stage: Stage::Quotient,
        passed,
        notes,
        details: StageDetails::Quotient(QuotientDetails {
            candidates: verdicts,
            max_dividing_count,
            table1,
        }),
    }
}

pub fn stage_schur(h: &SporadicRecord) -> StageReport {
    let mut notes = Vec::new();
    let mut covers = Vec::new();
    let multiplier = h.schur_multiplier.to_bignat();
    if h.schur_multiplier.is_one() {
        notes.push(format!("Schur multiplier of {} is trivial, so no proper cover exists", h.name()));
    }
    for c in h.cover_primes() {
        let cover_order = h.order_value() * c;
        let Some(w) = h.witness_for(c) else {
            notes.push(format!("insufficient data: no witness degree for {c}.{}", h.name()));
            covers.push(CoverCheck {
                divisor: c,
                cover_order,
                witness_degree: None,
                witness_codegree: None,
                ruled_out: false,
                reference: None,
            });
            continue;
        };
        let codegree = witness_codegree(&cover_order, &w.degree).expect("validated at load");
        let ruled_out = !h.codegrees().contains(&codegree);
        if !ruled_out {
            notes.push(format!(
                "witness degree {} of {c}.{} gives codegree {codegree}, which lies in cod({})",
                w.degree,
                h.name(),
                h.name()
            ));
        }
        let reference = w.reference_codegree.as_ref().map(|r| {
            let value = r.value();
            let matches = value == codegree;
            let composite_bases = r.composite_bases();
            if !matches {
                notes.push(format!(
                    "reference codegree `{}` for {c}.{} evaluates to {value}, but the witness gives {codegree}",
                    r.text,
                    h.name()
                ));
            }
            if !composite_bases.is_empty() {
                let list: Vec<String> = composite_bases.iter().map(ToString::to_string).collect();
                notes.push(format!(
                    "reference codegree `{}` for {c}.{} is not a prime factorization (composite base {})",
                    r.text,
                    h.name(),
                    list.join(", ")
                ));
            }
            ReferenceCheck {
                text: r.text.clone(),
                value,
                matches,
                composite_bases,
            }
        });
        covers.push(CoverCheck {
            divisor: c,
            cover_order,
            witness_degree: Some(w.degree.clone()),
            witness_codegree: Some(codegree),
            ruled_out,
            reference,
        });
    }
    StageReport {
        group: Some(h.group),
        stage: Stage::Schur,
        passed: covers.iter().all(|c| c.ruled_out),
        notes,
        details: StageDetails::Schur(SchurDetails { multiplier, covers }),
    }
}

/// Whether the embedding `n` values for each prime form a suffix of the
/// tested range, as `|GL(n, p)|` divides `|GL(n + 1, p)|` forces.
pub fn is_upward_closed(cases: &[GlCase]) -> bool {
    let mut i = 0;
    while i < cases.len() {
        let p = cases[i].p;
        let mut seen_embedding = false;
        while i < cases.len() && cases[i].p == p {
            if seen_embedding && !cases[i].embeds {
                return false;
            }
            seen_embedding |= cases[i].embeds;
            i += 1;
        }
    }
    true
}

pub fn stage_gl(h: &SporadicRecord) -> StageReport {
    let order = h.order_value();
    let mut cases = Vec::new();
    let mut notes = Vec::new();
    // n = 1 would make N central of prime order, which the Schur stage covers
    for (p, e) in h.order.iter().filter(|&(_, e)| e >= 2) {
        let min_faithful = h.min_faithful_degree.get(&p).copied();
        for n in 2..=e {
            let gl = gl_order(n, p);
            let embeds = divides(order, &gl).expect("orders are positive");
            let ruled_out = !embeds || min_faithful.is_some_and(|d| d > n as u64);
            if embeds && min_faithful.is_none() {
                notes.push(format!(
                    "insufficient data: |{}| divides |GL({n}, {p})| and no minimal faithful degree in characteristic {p} is recorded",
                    h.name()
                ));
            } else if !ruled_out {
                notes.push(format!(
                    "{} may embed in GL({n}, {p}): minimal faithful degree {} does not exceed {n}",
                    h.name(),
                    min_faithful.expect("checked above")
                ));
            }
            cases.push(GlCase {
                p,
                n,
                gl_order: gl,
                embeds,
                min_faithful,
                ruled_out,
            });
        }
    }
    let upward_closed = is_upward_closed(&cases);
    if !upward_closed {
        notes.push("embedding set is not upward closed in n".into());
    }
    let mut table2 = Vec::new();
    for case in cases.iter().filter(|c| c.embeds) {
        match table2.last_mut() {
            Some(Table2Row { p, n_max, .. }) if *p == case.p => *n_max = case.n,
            _ => table2.push(Table2Row {
                group: h.group,
                p: case.p,
                n_min: case.n,
                n_max: case.n,
                min_faithful: case.min_faithful,
            }),
        }
    }
    StageReport {
        group: Some(h.group),
        stage: Stage::GlEmbedding,
        passed: upward_closed && cases.iter().all(|c| c.ruled_out),
        notes,
        details: StageDetails::GlEmbedding(GlDetails {
            cases,
            table2,
            upward_closed,
        }),
    }
}

pub fn stage_pairwise(ds: &Dataset) -> StageReport {
    let mut witnesses = Vec::new();
    let mut contained = Vec::new();
    let mut notes = Vec::new();
    let mut pairs_checked = 0;
    for k in ds.records() {
        for h in ds.records() {
            if k.group == h.group {
                continue;
            }
            pairs_checked += 1;
            match k.codegrees().difference(h.codegrees()).next() {
                Some(c) => witnesses.push(PairWitness {
                    k: k.group,
                    h: h.group,
                    codegree: c.clone(),
                }),
                None => {
                    notes.push(format!("cod({}) is contained in cod({})", k.name(), h.name()));
                    contained.push((k.group, h.group));
                }
            }
        }
    }
    StageReport {
        group: None,
        stage: Stage::Pairwise,
        passed: contained.is_empty(),
        notes,
        details: StageDetails::Pairwise(PairwiseDetails {
            pairs_checked,
            non_contained: witnesses.len(),
            contained,
            witnesses,
        }),
    }
}

/// Re-derives every elimination in `report` directly from the dataset.
/// Returns a description of each elimination that does not hold.
pub fn recheck(report: &StageReport, ds: &Dataset) -> Vec<String> {
    let mut problems = Vec::new();
    let record = report.group.map(|g| ds.record(g));
    match &report.details {
        StageDetails::Quotient(d) => {
            let h = record.expect("quotient reports name a group");
            for v in d.candidates.iter().filter(|v| v.eliminated) {
                let order = candidate_order(&v.candidate);
                if order != v.order || !divides(&order, h.order_value()).expect("nonzero") {
                    problems.push(format!("{}: order does not divide |{}|", v.candidate, h.name()));
                    continue;
                }
                let count = count_dividing(h.codegrees(), &order);
                let holds = match v.reason {
                    Some(EliminationReason::BelowGenericThreshold) => {
                        count <= ds.thresholds.generic_min_codegrees as usize
                    }
                    Some(EliminationReason::BelowExceptionalThreshold) => ds
                        .exceptional_pair(h.group, &v.candidate)
                        .is_some_and(|p| count <= p.threshold(&ds.thresholds) as usize),
                    Some(EliminationReason::CodegreesNotContained) => v
                        .candidate
                        .as_sporadic()
                        .is_some_and(|k| !is_subset(ds.record(k).codegrees(), h.codegrees())),
                    Some(EliminationReason::IsTargetGroup) => v.candidate == SimpleGroupId::Sporadic(h.group),
                    None => false,
                };
                if !holds || count != v.dividing_codegree_count {
                    problems.push(format!("{}: elimination does not hold on recheck", v.candidate));
                }
            }
        }
        StageDetails::Schur(d) => {
            let h = record.expect("schur reports name a group");
            for c in d.covers.iter().filter(|c| c.ruled_out) {
                let cover = h.order_value() * c.divisor;
                let holds = c.witness_degree.as_ref().is_some_and(|deg| {
                    witness_codegree(&cover, deg).is_ok_and(|cd| {
                        !h.codegrees().contains(&cd) && Some(&cd) == c.witness_codegree.as_ref()
                    })
                });
                if !holds {
                    problems.push(format!("{}.{}: witness does not hold on recheck", c.divisor, h.name()));
                }
            }
        }
        StageDetails::GlEmbedding(d) => {
            let h = record.expect("gl reports name a group");
            for c in d.cases.iter().filter(|c| c.ruled_out) {
                let embeds = divides(h.order_value(), &gl_order(c.n, c.p)).expect("nonzero");
                let holds = !embeds || h.min_faithful_degree.get(&c.p).is_some_and(|&m| m > c.n as u64);
                if !holds || embeds != c.embeds {
                    problems.push(format!("GL({}, {}): exclusion does not hold on recheck", c.n, c.p));
                }
            }
        }
        StageDetails::Pairwise(d) => {
            for w in &d.witnesses {
                let in_k = ds.record(w.k).codegrees().contains(&w.codegree);
                let in_h = ds.record(w.h).codegrees().contains(&w.codegree);
                if !in_k || in_h {
                    problems.push(format!("({}, {}): witness does not hold on recheck", w.k, w.h));
                }
            }
        }
    }
    problems
}

fn with_recheck(mut report: StageReport, ds: &Dataset) -> StageReport {
    let problems = recheck(&report, ds);
    if !problems.is_empty() {
        report.passed = false;
        report.notes.extend(problems);
    }
    report
}

/// Quotient, Schur and GL stages for one group, each re-checked.
pub fn verify_group(group: Sporadic, ds: &Dataset) -> Vec<StageReport> {
    let h = ds.record(group);
    [stage_quotient(h, ds), stage_schur(h), stage_gl(h)]
        .into_iter()
        .map(|r| with_recheck(r, ds))
        .collect()
}

/// The pairwise sweep, re-checked.
pub fn verify_pairwise(ds: &Dataset) -> StageReport {
    with_recheck(stage_pairwise(ds), ds)
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GroupVerdict {
    pub group: Sporadic,
    pub passed: bool,
    pub stages: Vec<StageReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NoteRecord {
    pub group: Sporadic,
    pub message: String,
}

impl From<DiscrepancyNote> for NoteRecord {
    fn from(n: DiscrepancyNote) -> Self {
        NoteRecord {
            group: n.group,
            message: n.message,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerificationSummary {
    pub theorem_verified: bool,
    pub stages_passed: usize,
    pub stages_failed: usize,
    pub groups: Vec<GroupVerdict>,
    pub pairwise: Option<StageReport>,
    pub discrepancies: Vec<NoteRecord>,
}

/// Assembles per-group reports (in any order) and an optional pairwise
/// report into a summary sorted by group.
pub fn summarize(
    mut per_group: Vec<(Sporadic, Vec<StageReport>)>,
    pairwise: Option<StageReport>,
    ds: &Dataset,
) -> VerificationSummary {
    per_group.sort_by_key(|(g, _)| *g);
    let groups: Vec<GroupVerdict> = per_group
        .into_iter()
        .map(|(group, stages)| GroupVerdict {
            group,
            passed: stages.iter().all(|s| s.passed),
            stages,
        })
        .collect();
    let all_stages = || groups.iter().flat_map(|g| g.stages.iter()).chain(pairwise.iter());
    let stages_passed = all_stages().filter(|s| s.passed).count();
    let stages_failed = all_stages().filter(|s| !s.passed).count();
    let complete = groups.len() == Sporadic::ALL.len() && pairwise.is_some();
    let discrepancies = check_reference_multipliers(ds)
        .into_iter()
        .filter(|n| groups.iter().any(|g| g.group == n.group))
        .map(NoteRecord::from)
        .collect();
    VerificationSummary {
        theorem_verified: complete && stages_failed == 0,
        stages_passed,
        stages_failed,
        groups,
        pairwise,
        discrepancies,
    }
}

/// All 26 groups plus the pairwise sweep, sequentially.
pub fn verify_all(ds: &Dataset) -> VerificationSummary {
    let per_group = Sporadic::ALL.into_iter().map(|g| (g, verify_group(g, ds))).collect();
    summarize(per_group, Some(verify_pairwise(ds)), ds)
}
