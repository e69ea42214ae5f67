//! Aligning a summary graph with the original it condenses.
//!
//! Proposals carry stable provision indices, so they align by id.  Speech
//! arguments have no shared ids and are matched by text instead: exactly,
//! after whitespace/punctuation normalization, or through a pluggable
//! similarity scorer with a threshold.  Matching is one-to-one and greedy —
//! best score first, ties broken by id — so results are deterministic for a
//! deterministic scorer.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ArgumentId, ArgumentKind, Qbaf};

#[derive(Debug, Error)]
pub enum AlignmentError {
    #[error("invalid matcher config: {0}")]
    Config(String),
    #[error("similarity scorer failed: {0}")]
    Scorer(String),
}

/// Pairing of proposals between an original graph and a summary graph.
///
/// Proposals pair up when both graphs contain the same provision index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProposalAlignment {
    /// `(original, summary)` id pairs, ascending by provision index.
    pub pairs: Vec<(ArgumentId, ArgumentId)>,
    /// Proposals only in the original, ascending by provision index.
    pub source_only: Vec<ArgumentId>,
    /// Proposals only in the summary, ascending by provision index.
    pub summary_only: Vec<ArgumentId>,
}

impl ProposalAlignment {
    pub fn is_total(&self) -> bool {
        self.source_only.is_empty() && self.summary_only.is_empty()
    }
}

/// Align proposals of two graphs by provision index.
pub fn align_proposals(source: &Qbaf, summary: &Qbaf) -> ProposalAlignment {
    fn by_index(qbaf: &Qbaf) -> BTreeMap<u32, ArgumentId> {
        qbaf.proposals()
            .filter_map(|arg| arg.id.provision_index().map(|k| (k, arg.id.clone())))
            .collect()
    }
    let source_map = by_index(source);
    let summary_map = by_index(summary);
    let mut pairs = Vec::new();
    let mut source_only = Vec::new();
    let mut summary_only = Vec::new();
    for (k, id) in &source_map {
        match summary_map.get(k) {
            Some(other) => pairs.push((id.clone(), other.clone())),
            None => source_only.push(id.clone()),
        }
    }
    for (k, id) in &summary_map {
        if !source_map.contains_key(k) {
            summary_only.push(id.clone());
        }
    }
    ProposalAlignment { pairs, source_only, summary_only }
}

/// Replace every run of whitespace with a single space and trim the ends.
pub fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Canonical form for text comparison: lowercase, punctuation stripped to
/// spaces, whitespace collapsed.
pub fn normalize_text(text: &str) -> String {
    let mapped: String = text
        .to_lowercase()
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .collect();
    collapse_whitespace(&mapped)
}

/// How speech texts are compared when matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMethod {
    /// Byte-for-byte equality.
    Exact,
    /// Equality of [`normalize_text`] forms.
    Normalized,
    /// A [`SimilarityScorer`] plus threshold.
    Similarity,
}

/// Matching configuration.
///
/// `threshold` only gates the `Similarity` method; the text-equality methods
/// behave as similarity 1 on a match and 0 otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatcherConfig {
    pub method: MatchMethod,
    pub threshold: f64,
}

impl Default for MatcherConfig {
    fn default() -> Self {
        MatcherConfig { method: MatchMethod::Normalized, threshold: 0.8 }
    }
}

impl MatcherConfig {
    pub fn validate(&self) -> Result<(), AlignmentError> {
        if !(self.threshold > 0.0 && self.threshold <= 1.0) {
            return Err(AlignmentError::Config(format!(
                "threshold {} must lie in (0, 1]",
                self.threshold
            )));
        }
        Ok(())
    }
}

/// Scores text pairs in `[0, 1]`; higher means more alike.
///
/// Implementations receive all pairs at once so remote scorers can batch.
pub trait SimilarityScorer {
    fn score(&self, pairs: &[(String, String)]) -> Result<Vec<f64>, AlignmentError>;
}

/// One-to-one correspondence between source and summary speech arguments.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchMap {
    forward: BTreeMap<ArgumentId, ArgumentId>,
    backward: BTreeMap<ArgumentId, ArgumentId>,
}

impl MatchMap {
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Summary counterpart of a source speech argument.
    pub fn summary_for(&self, source: &ArgumentId) -> Option<&ArgumentId> {
        self.forward.get(source)
    }

    /// Source counterpart of a summary speech argument.
    pub fn source_for(&self, summary: &ArgumentId) -> Option<&ArgumentId> {
        self.backward.get(summary)
    }

    /// `(source, summary)` pairs, ascending by source id.
    pub fn pairs(&self) -> impl Iterator<Item = (&ArgumentId, &ArgumentId)> {
        self.forward.iter()
    }

    fn insert(&mut self, source: ArgumentId, summary: ArgumentId) {
        self.backward.insert(summary.clone(), source.clone());
        self.forward.insert(source, summary);
    }
}

struct EqualityScorer {
    normalized: bool,
}

impl SimilarityScorer for EqualityScorer {
    fn score(&self, pairs: &[(String, String)]) -> Result<Vec<f64>, AlignmentError> {
        Ok(pairs
            .iter()
            .map(|(a, b)| {
                let same = if self.normalized { normalize_text(a) == normalize_text(b) } else { a == b };
                if same {
                    1.0
                } else {
                    0.0
                }
            })
            .collect())
    }
}

/// Match speech arguments using the method named in `config`.
///
/// The `Similarity` method is not available here — it needs a scorer, so use
/// [`match_speech_with_scorer`] for it.
pub fn match_speech(
    source: &Qbaf,
    summary: &Qbaf,
    config: &MatcherConfig,
) -> Result<MatchMap, AlignmentError> {
    config.validate()?;
    match config.method {
        MatchMethod::Exact => {
            greedy_match(source, summary, &EqualityScorer { normalized: false }, 1.0)
        }
        MatchMethod::Normalized => {
            greedy_match(source, summary, &EqualityScorer { normalized: true }, 1.0)
        }
        MatchMethod::Similarity => Err(AlignmentError::Config(
            "similarity matching needs a scorer; use match_speech_with_scorer".into(),
        )),
    }
}

/// Match speech arguments with an explicit similarity scorer.
///
/// Pairs scoring at least `threshold` are candidates; the greedy assignment
/// takes the best-scoring candidates first (ties by source id, then summary
/// id) and never reuses an endpoint.
pub fn match_speech_with_scorer(
    source: &Qbaf,
    summary: &Qbaf,
    scorer: &dyn SimilarityScorer,
    threshold: f64,
) -> Result<MatchMap, AlignmentError> {
    MatcherConfig { method: MatchMethod::Similarity, threshold }.validate()?;
    greedy_match(source, summary, scorer, threshold)
}

fn greedy_match(
    source: &Qbaf,
    summary: &Qbaf,
    scorer: &dyn SimilarityScorer,
    threshold: f64,
) -> Result<MatchMap, AlignmentError> {
    let source_speech: Vec<_> = source
        .arguments()
        .iter()
        .filter(|a| a.kind == ArgumentKind::Speech)
        .collect();
    let summary_speech: Vec<_> = summary
        .arguments()
        .iter()
        .filter(|a| a.kind == ArgumentKind::Speech)
        .collect();

    let mut pair_ids = Vec::new();
    let mut pair_texts = Vec::new();
    for src in &source_speech {
        for dst in &summary_speech {
            pair_ids.push((src.id.clone(), dst.id.clone()));
            pair_texts.push((src.text.clone(), dst.text.clone()));
        }
    }

    let scores = scorer.score(&pair_texts)?;
    if scores.len() != pair_ids.len() {
        return Err(AlignmentError::Scorer(format!(
            "scorer returned {} scores for {} pairs",
            scores.len(),
            pair_ids.len()
        )));
    }
    let mut candidates = Vec::new();
    for (score, (src, dst)) in scores.into_iter().zip(pair_ids) {
        if !(0.0..=1.0).contains(&score) {
            return Err(AlignmentError::Scorer(format!(
                "score {score} for ({src}, {dst}) outside [0, 1]"
            )));
        }
        if score >= threshold {
            candidates.push((score, src, dst));
        }
    }
    candidates.sort_by(|a, b| {
        b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1)).then_with(|| a.2.cmp(&b.2))
    });

    let mut map = MatchMap::default();
    for (_, src, dst) in candidates {
        if map.summary_for(&src).is_none() && map.source_for(&dst).is_none() {
            map.insert(src, dst);
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{QbafBuilder, SourceKind};

    fn graph_with_texts(debate: &str, kind: SourceKind, texts: &[(&str, &str)]) -> Qbaf {
        let mut builder = QbafBuilder::new(debate, kind).proposal(1, "First provision");
        for (id, text) in texts {
            builder = builder.speech_full(id, text, 0.2, None);
        }
        builder.build()
    }

    #[test]
    fn proposals_align_by_provision_index() {
        let source = QbafBuilder::new("d", SourceKind::Original)
            .proposal(1, "")
            .proposal(2, "")
            .proposal(10, "")
            .build();
        let summary = QbafBuilder::new("d", SourceKind::Summary)
            .proposal(2, "")
            .proposal(3, "")
            .proposal(10, "")
            .build();
        let alignment = align_proposals(&source, &summary);
        let pairs: Vec<(&str, &str)> = alignment
            .pairs
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        assert_eq!(pairs, [("p:2", "p:2"), ("p:10", "p:10")]);
        assert_eq!(alignment.source_only, ["p:1".into()]);
        assert_eq!(alignment.summary_only, ["p:3".into()]);
        assert!(!alignment.is_total());
    }

    #[test]
    fn identical_proposal_sets_align_totally() {
        let source =
            QbafBuilder::new("d", SourceKind::Original).proposal(1, "").proposal(2, "").build();
        let summary =
            QbafBuilder::new("d", SourceKind::Summary).proposal(1, "").proposal(2, "").build();
        assert!(align_proposals(&source, &summary).is_total());
    }

    #[test]
    fn whitespace_collapses_to_single_spaces() {
        assert_eq!(collapse_whitespace("  a \t b\n\nc  "), "a b c");
        assert_eq!(collapse_whitespace(""), "");
    }

    #[test]
    fn normalization_strips_case_and_punctuation() {
        assert_eq!(normalize_text("  Hello,   WORLD!! "), "hello world");
        assert_eq!(normalize_text("co-op's budget"), "co op s budget");
        assert_eq!(normalize_text("..."), "");
    }

    #[test]
    fn exact_matching_requires_identical_text() {
        let source = graph_with_texts(
            "d",
            SourceKind::Original,
            &[("s1", "Cut fares."), ("s2", "raise fares")],
        );
        let summary = graph_with_texts(
            "d",
            SourceKind::Summary,
            &[("t1", "Cut fares."), ("t2", "Raise fares!")],
        );
        let map =
            match_speech(&source, &summary, &MatcherConfig { method: MatchMethod::Exact, threshold: 0.8 })
                .unwrap();
        assert_eq!(map.len(), 1);
        assert_eq!(map.summary_for(&"s1".into()), Some(&"t1".into()));
        assert_eq!(map.source_for(&"t2".into()), None);
    }

    #[test]
    fn normalized_matching_ignores_case_and_punctuation() {
        let source =
            graph_with_texts("d", SourceKind::Original, &[("s1", "Raise   fares"), ("s2", "Other")]);
        let summary = graph_with_texts("d", SourceKind::Summary, &[("t1", "raise fares!")]);
        let map = match_speech(&source, &summary, &MatcherConfig::default()).unwrap();
        assert_eq!(map.summary_for(&"s1".into()), Some(&"t1".into()));
        assert_eq!(map.len(), 1);
    }

    #[test]
    fn matching_is_one_to_one_with_lexicographic_tie_break() {
        // Two identical source texts compete for one summary argument: the
        // lexicographically smaller source id wins.
        let source =
            graph_with_texts("d", SourceKind::Original, &[("s2", "Same text"), ("s1", "Same text")]);
        let summary = graph_with_texts("d", SourceKind::Summary, &[("t1", "Same text")]);
        let map = match_speech(&source, &summary, &MatcherConfig::default()).unwrap();
        assert_eq!(map.len(), 1);
        assert_eq!(map.summary_for(&"s1".into()), Some(&"t1".into()));
        assert_eq!(map.summary_for(&"s2".into()), None);
    }

    #[test]
    fn similarity_method_requires_a_scorer() {
        let source = graph_with_texts("d", SourceKind::Original, &[("s1", "a")]);
        let summary = graph_with_texts("d", SourceKind::Summary, &[("t1", "a")]);
        let err = match_speech(
            &source,
            &summary,
            &MatcherConfig { method: MatchMethod::Similarity, threshold: 0.8 },
        )
        .unwrap_err();
        assert!(matches!(err, AlignmentError::Config(_)));
    }

    struct TableScorer {
        rows: Vec<((String, String), f64)>,
    }

    impl SimilarityScorer for TableScorer {
        fn score(&self, pairs: &[(String, String)]) -> Result<Vec<f64>, AlignmentError> {
            Ok(pairs
                .iter()
                .map(|pair| {
                    self.rows
                        .iter()
                        .find(|(key, _)| key == pair)
                        .map(|(_, v)| *v)
                        .unwrap_or(0.0)
                })
                .collect())
        }
    }

    #[test]
    fn scored_matching_prefers_higher_scores() {
        let source =
            graph_with_texts("d", SourceKind::Original, &[("s1", "alpha"), ("s2", "beta")]);
        let summary =
            graph_with_texts("d", SourceKind::Summary, &[("t1", "alpha-ish"), ("t2", "beta-ish")]);
        let scorer = TableScorer {
            rows: vec![
                (("alpha".into(), "alpha-ish".into()), 0.9),
                (("alpha".into(), "beta-ish".into()), 0.85),
                (("beta".into(), "beta-ish".into()), 0.84),
            ],
        };
        let map = match_speech_with_scorer(&source, &summary, &scorer, 0.8).unwrap();
        // s1 takes t1 (0.9); s1's second-best t2 is burned, leaving t2 for s2.
        assert_eq!(map.summary_for(&"s1".into()), Some(&"t1".into()));
        assert_eq!(map.summary_for(&"s2".into()), Some(&"t2".into()));
    }

    #[test]
    fn threshold_excludes_weak_candidates() {
        let source = graph_with_texts("d", SourceKind::Original, &[("s1", "alpha")]);
        let summary = graph_with_texts("d", SourceKind::Summary, &[("t1", "omega")]);
        let scorer = TableScorer { rows: vec![(("alpha".into(), "omega".into()), 0.5)] };
        let map = match_speech_with_scorer(&source, &summary, &scorer, 0.6).unwrap();
        assert!(map.is_empty());
        let map = match_speech_with_scorer(&source, &summary, &scorer, 0.5).unwrap();
        assert_eq!(map.len(), 1);
    }

    #[test]
    fn scorer_misbehaviour_is_reported() {
        struct ShortScorer;
        impl SimilarityScorer for ShortScorer {
            fn score(&self, _: &[(String, String)]) -> Result<Vec<f64>, AlignmentError> {
                Ok(vec![])
            }
        }
        struct WildScorer;
        impl SimilarityScorer for WildScorer {
            fn score(&self, pairs: &[(String, String)]) -> Result<Vec<f64>, AlignmentError> {
                Ok(vec![1.5; pairs.len()])
            }
        }
        let source = graph_with_texts("d", SourceKind::Original, &[("s1", "a")]);
        let summary = graph_with_texts("d", SourceKind::Summary, &[("t1", "b")]);
        assert!(matches!(
            match_speech_with_scorer(&source, &summary, &ShortScorer, 0.5),
            Err(AlignmentError::Scorer(_))
        ));
        assert!(matches!(
            match_speech_with_scorer(&source, &summary, &WildScorer, 0.5),
            Err(AlignmentError::Scorer(_))
        ));
    }

    #[test]
    fn out_of_range_threshold_is_rejected() {
        let source = graph_with_texts("d", SourceKind::Original, &[("s1", "a")]);
        let summary = graph_with_texts("d", SourceKind::Summary, &[("t1", "a")]);
        for bad in [0.0, -0.2, 1.2] {
            let scorer = TableScorer { rows: vec![] };
            assert!(matches!(
                match_speech_with_scorer(&source, &summary, &scorer, bad),
                Err(AlignmentError::Config(_))
            ));
        }
    }
}
