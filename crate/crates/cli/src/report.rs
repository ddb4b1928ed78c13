//! Text rendering and structured (JSON) documents for every command.

use std::fmt::Write as _;

use codegree_core::arith::{factor_by_trial_division, BigNat, Factorization};
use codegree_core::groups::{SimpleGroupId, Sporadic};
use codegree_core::tables::{Table1Row, Table2Row};
use codegree_core::verify::{StageDetails, StageReport, VerificationSummary};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDoc {
    pub group: SimpleGroupId,
    pub order: BigNat,
    /// `[[p, e], ...]`, absent when the order is not fully factored.
    pub factored: Option<Vec<(u64, u32)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodegreesDoc {
    pub group: Sporadic,
    pub order: BigNat,
    pub count: usize,
    pub codegrees: Vec<BigNat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Doc {
    pub group: Sporadic,
    pub rows: Vec<Table1Row>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Doc {
    pub rows: Vec<Table2Row>,
}

/// Trial division up to 10^6 fully factors every order the tool prints for
/// sporadic groups and for Lie-type groups over small fields.
pub fn order_doc(group: SimpleGroupId, order: BigNat) -> OrderDoc {
    let factored = match factor_by_trial_division(&order, 1_000_000) {
        Ok(Factorization::Complete(f)) => Some(f.iter().collect()),
        _ => None,
    };
    OrderDoc { group, order, factored }
}

fn factored_text(pairs: &[(u64, u32)]) -> String {
    let parts: Vec<String> = pairs
        .iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect();
    parts.join("·")
}

pub fn render_order(doc: &OrderDoc) -> String {
    let mut s = format!("{}\norder: {}\n", doc.group, doc.order);
    if let Some(f) = &doc.factored {
        let _ = writeln!(s, "factored: {}", factored_text(f));
    }
    s
}

pub fn render_codegrees(doc: &CodegreesDoc) -> String {
    let mut s = format!("cod({}): {} values\n", doc.group, doc.count);
    for c in &doc.codegrees {
        let _ = writeln!(s, "{c}");
    }
    s
}

pub fn render_table1(doc: &Table1Doc) -> String {
    let mut s = format!("Possible simple quotients with order dividing |{}|\n", doc.group);
    let _ = writeln!(s, "{:<14} {:>3}  max q / range", "family", "n");
    for row in &doc.rows {
        let n = row.n.map_or_else(|| "-".to_string(), |n| n.to_string());
        let _ = writeln!(s, "{:<14} {:>3}  {}", row.family.label(), n, row.entry);
    }
    s
}

pub fn render_table2(doc: &Table2Doc) -> String {
    let mut s = format!("{:<6} {:>2}  {:<6} {}\n", "group", "p", "n", "min degree");
    for r in &doc.rows {
        let n = if r.n_min == r.n_max {
            r.n_min.to_string()
        } else {
            format!("{}-{}", r.n_min, r.n_max)
        };
        let d = r.min_faithful.map_or_else(|| "?".to_string(), |d| d.to_string());
        let _ = writeln!(s, "{:<6} {:>2}  {:<6} {}", r.group.name(), r.p, n, d);
    }
    s
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

/// One-line summary of a stage's payload.
pub fn stage_summary(report: &StageReport) -> String {
    match &report.details {
        StageDetails::Quotient(d) => {
            let survivors = d.candidates.iter().filter(|c| !c.eliminated).count();
            format!(
                "{} candidates, max dividing count {}, {} surviving",
                d.candidates.len(),
                d.max_dividing_count,
                survivors
            )
        }
        StageDetails::Schur(d) => {
            if d.covers.is_empty() {
                "trivial multiplier".to_string()
            } else {
                let parts: Vec<String> = d
                    .covers
                    .iter()
                    .map(|c| match (&c.witness_degree, &c.witness_codegree) {
                        (Some(deg), Some(cod)) => format!("{}-cover degree {deg} -> codegree {cod}", c.divisor),
                        _ => format!("{}-cover: no witness", c.divisor),
                    })
                    .collect();
                format!("multiplier {}; {}", d.multiplier, parts.join("; "))
            }
        }
        StageDetails::GlEmbedding(d) => {
            let embeds = d.cases.iter().filter(|c| c.embeds).count();
            let mut s = format!("{} cases, {} embeddings", d.cases.len(), embeds);
            for r in &d.table2 {
                let _ = write!(s, "; p={} n={}-{} min degree {}", r.p, r.n_min, r.n_max,
                    r.min_faithful.map_or_else(|| "?".to_string(), |d| d.to_string()));
            }
            s
        }
        StageDetails::Pairwise(d) => format!(
            "{} ordered pairs, {} not contained, {} contained",
            d.pairs_checked,
            d.non_contained,
            d.contained.len()
        ),
    }
}

fn render_stage(s: &mut String, report: &StageReport, indent: &str) {
    let _ = writeln!(
        s,
        "{indent}{:<13} {}  {}",
        report.stage.name(),
        verdict(report.passed),
        stage_summary(report)
    );
    for note in &report.notes {
        let _ = writeln!(s, "{indent}  note: {note}");
    }
}

pub fn render_summary(summary: &VerificationSummary) -> String {
    let mut s = String::new();
    for g in &summary.groups {
        let _ = writeln!(s, "{} {}", g.group, verdict(g.passed));
        for stage in &g.stages {
            render_stage(&mut s, stage, "  ");
        }
    }
    if let Some(p) = &summary.pairwise {
        render_stage(&mut s, p, "");
    }
    if !summary.discrepancies.is_empty() {
        s.push_str("discrepancies:\n");
        for n in &summary.discrepancies {
            let _ = writeln!(s, "  {}: {}", n.group, n.message);
        }
    }
    let _ = writeln!(
        s,
        "stages passed: {}, failed: {}",
        summary.stages_passed, summary.stages_failed
    );
    let _ = writeln!(s, "theorem_verified: {}", summary.theorem_verified);
    s
}

pub fn render_pairwise(report: &StageReport) -> String {
    let mut s = String::new();
    render_stage(&mut s, report, "");
    s
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report types serialize");
    s.push('\n');
    s
}

/// Parses a structured `verify` document.
pub fn parse_summary(text: &str) -> Result<VerificationSummary, serde_json::Error> {
    serde_json::from_str(text)
}
