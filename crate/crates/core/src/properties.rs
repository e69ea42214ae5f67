//! Graded faithfulness properties for debate summaries.
//!
//! Two single-graph measures and three pairwise measures, numbered the way
//! the report presents them:
//!
//! * **P1** — speech-argument relevance: the fraction of speech arguments
//!   with a directed path to at least one proposal.
//! * **P2** — pro/con ratio per proposal: `|pro| / |pro ∪ con|`, undefined
//!   when nothing argues either way; the graph-level score is the mean over
//!   proposals with a defined ratio.
//! * **P3** — preferability consistency: the fraction of summary proposals
//!   whose credulous acceptance (under preferred extensions of the derived
//!   attack framework) agrees with their original counterpart.
//! * **P4** — balance consistency: the fraction of summary proposals on the
//!   same side of the neutral strength 0.5 as their counterpart, judging
//!   both strict inequalities; an exact 0.5 only matches an exact 0.5.
//! * **P5** — ε-accuracy: the fraction of summary proposals whose strength
//!   is within ε of their counterpart's (closed interval).
//!
//! The pairwise scores are *degrees* θ = |S| / |summary proposals|; each
//! result carries per-proposal pass flags so `|S|` is auditable.  Low-level
//! `*_from_pairs` variants score explicit value pairs directly, which is how
//! frozen numeric fixtures drive them.  Five supplementary boolean
//! properties judge the speech-argument match as a whole.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alignment::{align_proposals, MatchMap, ProposalAlignment};
use crate::extensions::{compile_derived_af, credulously_accepted, ExtensionError, SearchBudget};
use crate::graph::{Argument, ArgumentId, ArgumentKind, GraphError, Qbaf};
use crate::semantics::{evaluate, SemanticsConfig, SemanticsError, StrengthMap};

/// Default half-width for P5's closed interval.
pub const DEFAULT_EPSILON: f64 = 0.1;

#[derive(Debug, Error)]
pub enum PropertiesError {
    #[error("invalid property parameter: {0}")]
    Config(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("strength evaluation did not converge")]
    NotConverged,
}

impl PropertiesError {
    /// Failures that mean "could not be computed" rather than "caller
    /// error": search budget exhaustion and non-converged strengths.
    pub fn is_unavailable(&self) -> bool {
        matches!(
            self,
            PropertiesError::NotConverged
                | PropertiesError::Extension(ExtensionError::BudgetExceeded)
        )
    }
}

/// Everything a pairwise property needs: the two graphs, their proposal
/// alignment, the semantics configuration, and ε.
#[derive(Debug, Clone)]
pub struct EvalContext<'a> {
    pub source: &'a Qbaf,
    pub summary: &'a Qbaf,
    pub alignment: ProposalAlignment,
    pub semantics: SemanticsConfig,
    pub epsilon: f64,
}

impl<'a> EvalContext<'a> {
    pub fn new(
        source: &'a Qbaf,
        summary: &'a Qbaf,
        semantics: SemanticsConfig,
        epsilon: f64,
    ) -> Result<EvalContext<'a>, PropertiesError> {
        if !(epsilon >= 0.0) {
            return Err(PropertiesError::Config(format!("epsilon {epsilon} must be >= 0")));
        }
        semantics.validate()?;
        let alignment = align_proposals(source, summary);
        Ok(EvalContext { source, summary, alignment, semantics, epsilon })
    }

    /// Summary proposals in provision order — the denominator population of
    /// every θ.
    pub fn summary_proposals(&self) -> Vec<&'a Argument> {
        sorted_proposals(self.summary)
    }

    /// Map a summary proposal to its original counterpart, if any.
    pub fn source_counterpart(&self, summary_id: &ArgumentId) -> Option<&ArgumentId> {
        self.alignment
            .pairs
            .iter()
            .find(|(_, sum)| sum == summary_id)
            .map(|(src, _)| src)
    }
}

pub(crate) fn sorted_proposals(qbaf: &Qbaf) -> Vec<&Argument> {
    let mut proposals: Vec<&Argument> = qbaf.proposals().collect();
    proposals.sort_by_key(|a| (a.id.provision_index().unwrap_or(u32::MAX), a.id.clone()));
    proposals
}

/// P1 — fraction of speech arguments with a directed path to a proposal.
///
/// `None` when the graph has no speech arguments.
pub fn p1_relevance(qbaf: &Qbaf) -> Option<f64> {
    let n = qbaf.arguments().len();
    let mut reaches = vec![false; n];
    let mut queue = Vec::new();
    for (i, arg) in qbaf.arguments().iter().enumerate() {
        if arg.kind == ArgumentKind::Proposal {
            reaches[i] = true;
            queue.push(i);
        }
    }
    while let Some(u) = queue.pop() {
        for &(src, _) in qbaf.incoming(u) {
            if !reaches[src] {
                reaches[src] = true;
                queue.push(src);
            }
        }
    }
    let mut speech = 0usize;
    let mut relevant = 0usize;
    for (i, arg) in qbaf.arguments().iter().enumerate() {
        if arg.kind == ArgumentKind::Speech {
            speech += 1;
            if reaches[i] {
                relevant += 1;
            }
        }
    }
    if speech == 0 {
        None
    } else {
        Some(relevant as f64 / speech as f64)
    }
}

/// P2 for one proposal: `|pro| / |pro ∪ con|` over speech arguments.
///
/// `None` when no speech argument reaches the proposal either way.
pub fn p2_pro_con_ratio(
    qbaf: &Qbaf,
    proposal: &ArgumentId,
) -> Result<Option<f64>, PropertiesError> {
    let arg = qbaf
        .argument(proposal)
        .ok_or_else(|| GraphError::UnknownArgument(proposal.clone()))?;
    if arg.kind != ArgumentKind::Proposal {
        return Err(PropertiesError::Config(format!(
            "`{proposal}` is a speech argument, not a proposal"
        )));
    }
    let pro_con = qbaf.pro_con(proposal)?;
    let is_speech = |id: &ArgumentId| {
        qbaf.argument(id).map(|a| a.kind == ArgumentKind::Speech).unwrap_or(false)
    };
    let pro: Vec<&ArgumentId> = pro_con.pro.iter().filter(|id| is_speech(id)).collect();
    let mut union: std::collections::BTreeSet<&ArgumentId> = pro.iter().copied().collect();
    for id in pro_con.con.iter().filter(|id| is_speech(id)) {
        union.insert(id);
    }
    if union.is_empty() {
        Ok(None)
    } else {
        Ok(Some(pro.len() as f64 / union.len() as f64))
    }
}

/// P2 aggregated over every proposal of a graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProConMean {
    /// `(proposal, ratio)` in provision order; `None` marks an undefined
    /// ratio.
    pub per_proposal: Vec<(ArgumentId, Option<f64>)>,
    /// Mean of the defined ratios; `None` when every ratio is undefined.
    pub mean: Option<f64>,
    /// How many proposals had a defined ratio.
    pub defined: usize,
    /// How many were excluded as undefined.
    pub skipped: usize,
}

/// P2 mean over all proposals, skipping undefined entries.
pub fn p2_mean(qbaf: &Qbaf) -> Result<ProConMean, PropertiesError> {
    let mut per_proposal = Vec::new();
    let mut sum = 0.0;
    let mut defined = 0usize;
    let mut skipped = 0usize;
    for arg in sorted_proposals(qbaf) {
        let ratio = p2_pro_con_ratio(qbaf, &arg.id)?;
        match ratio {
            Some(v) => {
                sum += v;
                defined += 1;
            }
            None => skipped += 1,
        }
        per_proposal.push((arg.id.clone(), ratio));
    }
    let mean = if defined == 0 { None } else { Some(sum / defined as f64) };
    Ok(ProConMean { per_proposal, mean, defined, skipped })
}

/// Per-proposal pass flag inside a θ result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaDetail {
    pub id: ArgumentId,
    pub satisfied: bool,
}

/// A degree θ = satisfied / total with its per-proposal breakdown.
///
/// `theta` is `None` only when the summary has no proposals at all.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaResult {
    pub theta: Option<f64>,
    pub satisfied: usize,
    pub total: usize,
    pub details: Vec<ThetaDetail>,
}

fn theta_from_flags(flags: Vec<(ArgumentId, bool)>) -> ThetaResult {
    let total = flags.len();
    let satisfied = flags.iter().filter(|(_, ok)| *ok).count();
    let details =
        flags.into_iter().map(|(id, satisfied)| ThetaDetail { id, satisfied }).collect();
    let theta = if total == 0 { None } else { Some(satisfied as f64 / total as f64) };
    ThetaResult { theta, satisfied, total, details }
}

/// Credulous-acceptance statuses of one proposal in both graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptancePair {
    pub id: ArgumentId,
    pub source_accepted: bool,
    pub summary_accepted: bool,
}

/// P3 from explicit acceptance statuses: satisfied where they agree.
pub fn p3_preferability_from_pairs(pairs: &[AcceptancePair]) -> ThetaResult {
    theta_from_flags(
        pairs
            .iter()
            .map(|p| (p.id.clone(), p.source_accepted == p.summary_accepted))
            .collect(),
    )
}

/// Strengths of one proposal in both graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthPair {
    pub id: ArgumentId,
    pub source: f64,
    pub summary: f64,
}

/// P4 from explicit strengths: the counterpart must sit on the same side of
/// 0.5, under both strict comparisons.
pub fn p4_balance_from_pairs(pairs: &[StrengthPair]) -> ThetaResult {
    theta_from_flags(
        pairs
            .iter()
            .map(|p| {
                let balanced = (p.summary > 0.5) == (p.source > 0.5)
                    && (p.summary < 0.5) == (p.source < 0.5);
                (p.id.clone(), balanced)
            })
            .collect(),
    )
}

/// P5 from explicit strengths: `|summary − source| ≤ ε`.
pub fn p5_epsilon_from_pairs(
    pairs: &[StrengthPair],
    epsilon: f64,
) -> Result<ThetaResult, PropertiesError> {
    if !(epsilon >= 0.0) {
        return Err(PropertiesError::Config(format!("epsilon {epsilon} must be >= 0")));
    }
    Ok(theta_from_flags(
        pairs
            .iter()
            .map(|p| (p.id.clone(), (p.summary - p.source).abs() <= epsilon))
            .collect(),
    ))
}

/// Credulous-acceptance statuses of every summary proposal, in provision
/// order, against their counterparts.
///
/// A summary proposal with no counterpart compares against `false` — the
/// original cannot credulously accept an argument it does not contain.
/// Budget exhaustion surfaces as an error the report layer downgrades to
/// "unavailable".
pub fn acceptance_pairs(
    ctx: &EvalContext,
    budget: &SearchBudget,
) -> Result<Vec<AcceptancePair>, PropertiesError> {
    let source_af = compile_derived_af(ctx.source);
    let summary_af = compile_derived_af(ctx.summary);
    let mut pairs = Vec::new();
    for proposal in ctx.summary_proposals() {
        let summary_accepted = credulously_accepted(&summary_af, &proposal.id, budget)?;
        let source_accepted = match ctx.source_counterpart(&proposal.id) {
            Some(src) => credulously_accepted(&source_af, src, budget)?,
            None => false,
        };
        pairs.push(AcceptancePair { id: proposal.id.clone(), source_accepted, summary_accepted });
    }
    Ok(pairs)
}

/// P3 over a context: credulous acceptance of each summary proposal versus
/// its counterpart — see [`acceptance_pairs`] for the orphan convention.
pub fn p3_preferability_theta(
    ctx: &EvalContext,
    budget: &SearchBudget,
) -> Result<ThetaResult, PropertiesError> {
    Ok(p3_preferability_from_pairs(&acceptance_pairs(ctx, budget)?))
}

fn strength_pairs(
    ctx: &EvalContext,
    source_strengths: &StrengthMap,
    summary_strengths: &StrengthMap,
) -> Result<Vec<(ArgumentId, Option<StrengthPair>)>, PropertiesError> {
    let mut rows = Vec::new();
    for proposal in ctx.summary_proposals() {
        let summary = summary_strengths
            .get(&proposal.id)
            .ok_or_else(|| GraphError::UnknownArgument(proposal.id.clone()))?;
        let pair = ctx.source_counterpart(&proposal.id).map(|src| {
            let source = source_strengths.get(src).expect("aligned ids exist in their graph");
            StrengthPair { id: proposal.id.clone(), source, summary }
        });
        rows.push((proposal.id.clone(), pair));
    }
    Ok(rows)
}

fn converged_strengths(ctx: &EvalContext) -> Result<(StrengthMap, StrengthMap), PropertiesError> {
    let source = evaluate(ctx.source, &ctx.semantics)?;
    let summary = evaluate(ctx.summary, &ctx.semantics)?;
    if !source.converged || !summary.converged {
        return Err(PropertiesError::NotConverged);
    }
    Ok((source, summary))
}

/// P4 over a context.  Proposals without a counterpart count as
/// unsatisfied — there is no strength to balance against.
pub fn p4_balance_theta(ctx: &EvalContext) -> Result<ThetaResult, PropertiesError> {
    let (source, summary) = converged_strengths(ctx)?;
    p4_balance_with_strengths(ctx, &source, &summary)
}

/// P4 from pre-computed strength maps (the report computes strengths once
/// and reuses them here).
pub fn p4_balance_with_strengths(
    ctx: &EvalContext,
    source_strengths: &StrengthMap,
    summary_strengths: &StrengthMap,
) -> Result<ThetaResult, PropertiesError> {
    let rows = strength_pairs(ctx, source_strengths, summary_strengths)?;
    let flags = rows
        .into_iter()
        .map(|(id, pair)| match pair {
            Some(p) => {
                let result = p4_balance_from_pairs(&[p]);
                (id, result.satisfied == 1)
            }
            None => (id, false),
        })
        .collect();
    Ok(theta_from_flags(flags))
}

/// P5 over a context, at the context's ε.  Orphan proposals count as
/// unsatisfied, as in P4.
pub fn p5_epsilon_theta(ctx: &EvalContext) -> Result<ThetaResult, PropertiesError> {
    let (source, summary) = converged_strengths(ctx)?;
    p5_epsilon_with_strengths(ctx, &source, &summary)
}

/// P5 from pre-computed strength maps.
pub fn p5_epsilon_with_strengths(
    ctx: &EvalContext,
    source_strengths: &StrengthMap,
    summary_strengths: &StrengthMap,
) -> Result<ThetaResult, PropertiesError> {
    if !(ctx.epsilon >= 0.0) {
        return Err(PropertiesError::Config(format!("epsilon {} must be >= 0", ctx.epsilon)));
    }
    let rows = strength_pairs(ctx, source_strengths, summary_strengths)?;
    let flags = rows
        .into_iter()
        .map(|(id, pair)| match pair {
            Some(p) => (id, (p.summary - p.source).abs() <= ctx.epsilon),
            None => (id, false),
        })
        .collect();
    Ok(theta_from_flags(flags))
}

/// The five supplementary boolean properties of a speech-argument match.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupplementaryProperties {
    /// Strength cut-off used by `strength_inclusive`.
    pub c: f64,
    /// Relation-count cut-off used by `influencer_inclusive`.
    pub n: usize,
    /// The summary's speech arguments are nonempty and all matched into the
    /// original.
    pub relevant: bool,
    /// `relevant`, and every original speech argument is matched.
    pub complete: bool,
    /// Every original speech argument stronger than `c` is matched.
    pub strength_inclusive: bool,
    /// Every original speech argument with more than `n` direct attackers
    /// and supporters combined is matched.
    pub influencer_inclusive: bool,
    /// Every matched pair lands on the same pro/con sides for every aligned
    /// proposal.
    pub pro_con_consistent: bool,
}

/// Evaluate the supplementary properties for a given speech match.
pub fn supplementary_properties(
    ctx: &EvalContext,
    matches: &MatchMap,
    c: f64,
    n: usize,
) -> Result<SupplementaryProperties, PropertiesError> {
    if !(0.0..=1.0).contains(&c) {
        return Err(PropertiesError::Config(format!("strength cut-off {c} outside [0, 1]")));
    }

    let summary_speech: Vec<&Argument> = ctx.summary.speech_arguments().collect();
    let source_speech: Vec<&Argument> = ctx.source.speech_arguments().collect();

    let relevant = !summary_speech.is_empty()
        && summary_speech.iter().all(|a| matches.source_for(&a.id).is_some());
    let complete =
        relevant && source_speech.iter().all(|a| matches.summary_for(&a.id).is_some());

    let (source_strengths, _) = converged_strengths(ctx)?;
    let strength_inclusive = source_speech.iter().all(|a| {
        let strong = source_strengths.get(&a.id).map(|s| s > c).unwrap_or(false);
        !strong || matches.summary_for(&a.id).is_some()
    });

    let mut influencer_inclusive = true;
    for arg in &source_speech {
        let (attackers, supporters) = ctx.source.direct_relations(&arg.id)?;
        let relations = attackers.union(&supporters).count();
        if relations > n && matches.summary_for(&arg.id).is_none() {
            influencer_inclusive = false;
            break;
        }
    }

    let mut pro_con_consistent = true;
    'outer: for (src_p, sum_p) in &ctx.alignment.pairs {
        let source_sides = ctx.source.pro_con(src_p)?;
        let summary_sides = ctx.summary.pro_con(sum_p)?;
        for (src_arg, sum_arg) in matches.pairs() {
            let pro_agrees =
                source_sides.pro.contains(src_arg) == summary_sides.pro.contains(sum_arg);
            let con_agrees =
                source_sides.con.contains(src_arg) == summary_sides.con.contains(sum_arg);
            if !pro_agrees || !con_agrees {
                pro_con_consistent = false;
                break 'outer;
            }
        }
    }

    Ok(SupplementaryProperties {
        c,
        n,
        relevant,
        complete,
        strength_inclusive,
        influencer_inclusive,
        pro_con_consistent,
    })
}
