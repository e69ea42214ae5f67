//! The full faithfulness report: every property over one source/summary
//! pair, bundled deterministically.
//!
//! The JSON shape is stable:
//!
//! ```json
//! {
//!   "p1":  {"source": 0.83, "summary": 1.0},
//!   "p2_mean": {"source": 0.67, "summary": 0.75},
//!   "p3": 1.0,
//!   "p4": 1.0,
//!   "p5": {"epsilon": 0.1, "theta": 1.0},
//!   "per_proposal": [ ... ],
//!   "supplementary": { ... },      // only when requested
//!   "sweep": { ... },              // only when bases were given
//!   "unavailable": [ ... ],        // only when something failed softly
//!   "display": { ... }             // 2-decimal strings of the headline numbers
//! }
//! ```
//!
//! Values that cannot be computed are `null`, with a matching entry in
//! `unavailable` naming the property and the reason; the report itself still
//! builds.  Detail rows carry unrounded numbers — the `display` block and
//! the renderers round to two decimals.

use serde::Serialize;

use crate::alignment::MatchMap;
use crate::extensions::SearchBudget;
use crate::graph::ArgumentId;
use crate::properties::{
    acceptance_pairs, p1_relevance, p2_mean, p3_preferability_from_pairs,
    p4_balance_with_strengths, p5_epsilon_with_strengths, sorted_proposals,
    supplementary_properties, EvalContext, PropertiesError, SupplementaryProperties,
};
use crate::semantics::{evaluate, StrengthMap};

/// One value per graph side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SidePair {
    pub source: Option<f64>,
    pub summary: Option<f64>,
}

/// P5 keeps its ε next to the θ it produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct P5Block {
    pub epsilon: f64,
    pub theta: Option<f64>,
}

/// Everything known about one provision, unrounded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProposalRow {
    pub id: ArgumentId,
    pub in_source: bool,
    pub in_summary: bool,
    pub source_strength: Option<f64>,
    pub summary_strength: Option<f64>,
    pub source_ratio: Option<f64>,
    pub summary_ratio: Option<f64>,
    pub source_accepted: Option<bool>,
    pub summary_accepted: Option<bool>,
    pub p3_agrees: Option<bool>,
    pub p4_balanced: Option<bool>,
    pub p5_within: Option<bool>,
}

/// Strength-dependent θ values recomputed at one alternative speech base.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub speech_base: f64,
    pub p4: Option<f64>,
    pub p5: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepBlock {
    pub speech_bases: Vec<f64>,
    pub rows: Vec<SweepRow>,
}

/// A property that could not be computed, and why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnavailableEntry {
    pub property: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideDisplay {
    pub source: Option<String>,
    pub summary: Option<String>,
}

/// The headline numbers as fixed 2-decimal strings, `null` where the value
/// is unavailable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisplayBlock {
    pub p1: SideDisplay,
    pub p2_mean: SideDisplay,
    pub p3: Option<String>,
    pub p4: Option<String>,
    pub p5: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FullReport {
    pub p1: SidePair,
    pub p2_mean: SidePair,
    pub p3: Option<f64>,
    pub p4: Option<f64>,
    pub p5: P5Block,
    pub per_proposal: Vec<ProposalRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub supplementary: Option<SupplementaryProperties>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepBlock>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unavailable: Vec<UnavailableEntry>,
    pub display: DisplayBlock,
}

impl FullReport {
    /// Canonical JSON rendering: pretty, sorted structure, trailing newline.
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        text.push('\n');
        text
    }
}

/// Supplementary-property request: a pre-computed speech match plus its
/// cut-offs.
#[derive(Debug, Clone)]
pub struct SupplementaryRequest {
    pub matches: MatchMap,
    pub c: f64,
    pub n: usize,
}

/// Switches for [`full_report`].
#[derive(Debug, Clone)]
pub struct FullReportOptions {
    pub budget: SearchBudget,
    /// Alternative speech base scores to re-evaluate P4/P5 under; empty
    /// for no sweep block.
    pub sweep_bases: Vec<f64>,
    pub supplementary: Option<SupplementaryRequest>,
}

impl Default for FullReportOptions {
    fn default() -> Self {
        FullReportOptions {
            budget: SearchBudget::default(),
            sweep_bases: Vec::new(),
            supplementary: None,
        }
    }
}

fn fmt2(value: Option<f64>) -> Option<String> {
    value.map(|v| format!("{v:.2}"))
}

/// Compute the whole report.
///
/// Hard errors (invalid configuration, malformed graphs) are returned;
/// soft failures — extension budget exhaustion, non-converged strengths —
/// null out the affected properties and are listed under `unavailable`.
pub fn full_report(
    ctx: &EvalContext,
    options: &FullReportOptions,
) -> Result<FullReport, PropertiesError> {
    let mut unavailable = Vec::new();

    // Strengths for both graphs; convergence gates every strength-based
    // property but not the structural ones.
    let source_strengths = evaluate(ctx.source, &ctx.semantics)?;
    let summary_strengths = evaluate(ctx.summary, &ctx.semantics)?;
    let converged = source_strengths.converged && summary_strengths.converged;

    let p1 = SidePair { source: p1_relevance(ctx.source), summary: p1_relevance(ctx.summary) };

    let source_p2 = p2_mean(ctx.source)?;
    let summary_p2 = p2_mean(ctx.summary)?;
    let p2 = SidePair { source: source_p2.mean, summary: summary_p2.mean };

    // P3: acceptance statuses, downgraded to unavailable on budget
    // exhaustion.
    let acceptance = match acceptance_pairs(ctx, &options.budget) {
        Ok(pairs) => Some(pairs),
        Err(err) if err.is_unavailable() => {
            unavailable
                .push(UnavailableEntry { property: "p3".into(), reason: err.to_string() });
            None
        }
        Err(err) => return Err(err),
    };
    let p3_result = acceptance.as_deref().map(p3_preferability_from_pairs);
    let p3 = p3_result.as_ref().and_then(|r| r.theta);

    // P4/P5 need converged strengths.
    let (p4_result, p5_result) = if converged {
        (
            Some(p4_balance_with_strengths(ctx, &source_strengths, &summary_strengths)?),
            Some(p5_epsilon_with_strengths(ctx, &source_strengths, &summary_strengths)?),
        )
    } else {
        let reason = "strength evaluation did not converge".to_string();
        unavailable.push(UnavailableEntry { property: "p4".into(), reason: reason.clone() });
        unavailable.push(UnavailableEntry { property: "p5".into(), reason });
        (None, None)
    };
    let p4 = p4_result.as_ref().and_then(|r| r.theta);
    let p5_theta = p5_result.as_ref().and_then(|r| r.theta);

    let supplementary = match &options.supplementary {
        None => None,
        Some(request) => {
            match supplementary_properties(ctx, &request.matches, request.c, request.n) {
                Ok(result) => Some(result),
                Err(err) if err.is_unavailable() => {
                    unavailable.push(UnavailableEntry {
                        property: "supplementary".into(),
                        reason: err.to_string(),
                    });
                    None
                }
                Err(err) => return Err(err),
            }
        }
    };

    let per_proposal = proposal_rows(
        ctx,
        converged.then_some(&source_strengths),
        converged.then_some(&summary_strengths),
        &source_p2,
        &summary_p2,
        acceptance.as_deref(),
        p4_result.as_ref().map(|r| &r.details),
        p5_result.as_ref().map(|r| &r.details),
    );

    let sweep = if options.sweep_bases.is_empty() {
        None
    } else {
        Some(sweep_block(ctx, &options.sweep_bases)?)
    };

    let display = DisplayBlock {
        p1: SideDisplay { source: fmt2(p1.source), summary: fmt2(p1.summary) },
        p2_mean: SideDisplay { source: fmt2(p2.source), summary: fmt2(p2.summary) },
        p3: fmt2(p3),
        p4: fmt2(p4),
        p5: fmt2(p5_theta),
    };

    Ok(FullReport {
        p1,
        p2_mean: p2,
        p3,
        p4,
        p5: P5Block { epsilon: ctx.epsilon, theta: p5_theta },
        per_proposal,
        supplementary,
        sweep,
        unavailable,
        display,
    })
}

#[allow(clippy::too_many_arguments)]
fn proposal_rows(
    ctx: &EvalContext,
    source_strengths: Option<&StrengthMap>,
    summary_strengths: Option<&StrengthMap>,
    source_p2: &crate::properties::ProConMean,
    summary_p2: &crate::properties::ProConMean,
    acceptance: Option<&[crate::properties::AcceptancePair]>,
    p4_details: Option<&Vec<crate::properties::ThetaDetail>>,
    p5_details: Option<&Vec<crate::properties::ThetaDetail>>,
) -> Vec<ProposalRow> {
    // Union of provisions from both graphs, ordered by provision index.
    let mut ids: Vec<ArgumentId> = Vec::new();
    for arg in sorted_proposals(ctx.source) {
        ids.push(arg.id.clone());
    }
    for arg in sorted_proposals(ctx.summary) {
        if !ids.contains(&arg.id) {
            ids.push(arg.id.clone());
        }
    }
    ids.sort_by_key(|id| (id.provision_index().unwrap_or(u32::MAX), id.clone()));

    let ratio = |mean: &crate::properties::ProConMean, id: &ArgumentId| {
        mean.per_proposal
            .iter()
            .find(|(pid, _)| pid == id)
            .and_then(|(_, ratio)| *ratio)
    };
    let detail = |details: Option<&Vec<crate::properties::ThetaDetail>>, id: &ArgumentId| {
        details.and_then(|rows| rows.iter().find(|d| &d.id == id).map(|d| d.satisfied))
    };

    ids.into_iter()
        .map(|id| {
            let in_source = ctx.source.contains(&id);
            let in_summary = ctx.summary.contains(&id);
            let pair = acceptance.and_then(|rows| rows.iter().find(|p| p.id == id));
            ProposalRow {
                source_strength: source_strengths.and_then(|m| m.get(&id)),
                summary_strength: summary_strengths.and_then(|m| m.get(&id)),
                source_ratio: ratio(source_p2, &id),
                summary_ratio: ratio(summary_p2, &id),
                source_accepted: pair.map(|p| p.source_accepted),
                summary_accepted: pair.map(|p| p.summary_accepted),
                p3_agrees: pair.map(|p| p.source_accepted == p.summary_accepted),
                p4_balanced: detail(p4_details, &id),
                p5_within: detail(p5_details, &id),
                in_source,
                in_summary,
                id,
            }
        })
        .collect()
}

fn sweep_block(ctx: &EvalContext, bases: &[f64]) -> Result<SweepBlock, PropertiesError> {
    let mut rows = Vec::with_capacity(bases.len());
    for &base in bases {
        if !(0.0..=1.0).contains(&base) {
            return Err(PropertiesError::Config(format!(
                "sweep base {base} outside [0, 1]"
            )));
        }
        let source = evaluate(&ctx.source.with_speech_base(base), &ctx.semantics)?;
        let summary = evaluate(&ctx.summary.with_speech_base(base), &ctx.semantics)?;
        if source.converged && summary.converged {
            let p4 = p4_balance_with_strengths(ctx, &source, &summary)?;
            let p5 = p5_epsilon_with_strengths(ctx, &source, &summary)?;
            rows.push(SweepRow { speech_base: base, p4: p4.theta, p5: p5.theta });
        } else {
            rows.push(SweepRow { speech_base: base, p4: None, p5: None });
        }
    }
    Ok(SweepBlock { speech_bases: bases.to_vec(), rows })
}

fn cell(value: Option<String>) -> String {
    value.unwrap_or_else(|| "-".into())
}

fn flag(value: Option<bool>) -> &'static str {
    match value {
        Some(true) => "pass",
        Some(false) => "fail",
        None => "-",
    }
}

fn yes_no(value: Option<bool>) -> &'static str {
    match value {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

/// Markdown rendering of a report, 2-decimal throughout.
pub fn render_markdown(report: &FullReport) -> String {
    let mut out = String::new();
    out.push_str("# Faithfulness report\n\n");

    out.push_str("| Property | Source | Summary |\n| --- | --- | --- |\n");
    out.push_str(&format!(
        "| P1 speech relevance | {} | {} |\n",
        cell(report.display.p1.source.clone()),
        cell(report.display.p1.summary.clone())
    ));
    out.push_str(&format!(
        "| P2 mean pro/con ratio | {} | {} |\n",
        cell(report.display.p2_mean.source.clone()),
        cell(report.display.p2_mean.summary.clone())
    ));
    out.push('\n');

    out.push_str("| Property | Degree |\n| --- | --- |\n");
    out.push_str(&format!(
        "| P3 preferability consistency | {} |\n",
        cell(report.display.p3.clone())
    ));
    out.push_str(&format!(
        "| P4 balance consistency | {} |\n",
        cell(report.display.p4.clone())
    ));
    out.push_str(&format!(
        "| P5 accuracy (epsilon = {:.2}) | {} |\n",
        report.p5.epsilon,
        cell(report.display.p5.clone())
    ));
    out.push('\n');

    out.push_str("## Per-proposal detail\n\n");
    out.push_str(
        "| Proposal | Strength (source) | Strength (summary) | Accepted (source) | \
         Accepted (summary) | P2 (source) | P2 (summary) | P3 | P4 | P5 |\n",
    );
    out.push_str("| --- | --- | --- | --- | --- | --- | --- | --- | --- | --- |\n");
    for row in &report.per_proposal {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            row.id,
            cell(fmt2(row.source_strength)),
            cell(fmt2(row.summary_strength)),
            yes_no(row.source_accepted),
            yes_no(row.summary_accepted),
            cell(fmt2(row.source_ratio)),
            cell(fmt2(row.summary_ratio)),
            flag(row.p3_agrees),
            flag(row.p4_balanced),
            flag(row.p5_within),
        ));
    }

    if let Some(supplementary) = &report.supplementary {
        out.push_str(&format!(
            "\n## Supplementary properties (c = {:.2}, n = {})\n\n",
            supplementary.c, supplementary.n
        ));
        out.push_str("| Property | Holds |\n| --- | --- |\n");
        for (name, holds) in [
            ("relevant", supplementary.relevant),
            ("complete", supplementary.complete),
            ("strength-inclusive", supplementary.strength_inclusive),
            ("influencer-inclusive", supplementary.influencer_inclusive),
            ("pro/con-consistent", supplementary.pro_con_consistent),
        ] {
            out.push_str(&format!("| {} | {} |\n", name, if holds { "yes" } else { "no" }));
        }
    }

    if let Some(sweep) = &report.sweep {
        out.push_str("\n## Speech base sweep\n\n");
        out.push_str("| Base | P4 | P5 |\n| --- | --- | --- |\n");
        for row in &sweep.rows {
            out.push_str(&format!(
                "| {:.2} | {} | {} |\n",
                row.speech_base,
                cell(fmt2(row.p4)),
                cell(fmt2(row.p5)),
            ));
        }
    }

    if !report.unavailable.is_empty() {
        out.push_str("\n## Unavailable\n\n");
        for entry in &report.unavailable {
            out.push_str(&format!("- {}: {}\n", entry.property, entry.reason));
        }
    }

    out
}

/// Plain-text rendering: the headline numbers, one per line.
pub fn render_text(report: &FullReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "P1 speech relevance        source {}  summary {}\n",
        cell(report.display.p1.source.clone()),
        cell(report.display.p1.summary.clone())
    ));
    out.push_str(&format!(
        "P2 mean pro/con ratio      source {}  summary {}\n",
        cell(report.display.p2_mean.source.clone()),
        cell(report.display.p2_mean.summary.clone())
    ));
    out.push_str(&format!("P3 preferability           {}\n", cell(report.display.p3.clone())));
    out.push_str(&format!("P4 balance                 {}\n", cell(report.display.p4.clone())));
    out.push_str(&format!(
        "P5 accuracy (epsilon {:.2})  {}\n",
        report.p5.epsilon,
        cell(report.display.p5.clone())
    ));
    for entry in &report.unavailable {
        out.push_str(&format!("unavailable: {} ({})\n", entry.property, entry.reason));
    }
    out
}
