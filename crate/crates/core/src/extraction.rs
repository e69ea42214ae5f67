//! Building debate graphs from transcripts.
//!
//! A transcript is a debate id, numbered provisions, and ordered speech
//! segments.  The pipeline is:
//!
//! 1. [`candidate_pairs`] — enumerate the pairs a classifier may label.
//!    Original debates are temporally constrained: a segment can only
//!    relate to *earlier* segments (plus any provision); summaries carry no
//!    temporal meaning and use all ordered segment pairs.
//! 2. [`classify_pairs`] — label each pair attack/support/neither through a
//!    pluggable [`RelationClassifier`], with a content-addressed disk cache
//!    so reruns cost no remote calls.
//! 3. [`build_qbaf`] — assemble the graph: provisions become proposals
//!    (base 0.5), segments become speech arguments (configurable base),
//!    attack/support verdicts become edges, isolated segments are kept.
//!
//! The module also scores classifier output against gold labels: accuracy,
//! per-class and macro F1, and Cohen's kappa between annotators.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{ArgumentId, Qbaf, QbafBuilder, SourceKind};
use crate::remote::{run_bounded, JsonClient, RemoteError};

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("could not access {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invalid transcript: {0}")]
    InvalidTranscript(String),
    #[error("({source}, {target}) is not a candidate pair of this transcript")]
    UnknownPair { source: ArgumentId, target: ArgumentId },
    #[error("more than one verdict for ({source}, {target})")]
    DuplicateVerdict { source: ArgumentId, target: ArgumentId },
    #[error("{0} candidate pairs have no verdict")]
    MissingVerdicts(usize),
    #[error("classifier failed: {0}")]
    Classifier(String),
    #[error(transparent)]
    Remote(#[from] RemoteError),
    #[error("gold label set is empty")]
    EmptyGold,
    #[error("gold labels do not cover the verdicts: {0}")]
    GoldMismatch(String),
}

/// A numbered provision under debate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provision {
    pub index: u32,
    pub text: String,
}

/// One speaker turn, pre-segmented into a single argumentative unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeechSegment {
    pub order: u64,
    pub speaker: String,
    pub text: String,
}

/// A debate or summary transcript: provisions plus ordered segments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub debate_id: String,
    pub provisions: Vec<Provision>,
    pub segments: Vec<SpeechSegment>,
}

impl Transcript {
    /// Enforce the structural invariants: unique provision indices ≥ 1,
    /// strictly increasing segment orders, non-empty segment text.
    pub fn validate(&self) -> Result<(), ExtractError> {
        let mut seen = HashSet::new();
        for provision in &self.provisions {
            if provision.index < 1 {
                return Err(ExtractError::InvalidTranscript(format!(
                    "provision index {} must be at least 1",
                    provision.index
                )));
            }
            if !seen.insert(provision.index) {
                return Err(ExtractError::InvalidTranscript(format!(
                    "duplicate provision index {}",
                    provision.index
                )));
            }
        }
        for window in self.segments.windows(2) {
            if window[1].order <= window[0].order {
                return Err(ExtractError::InvalidTranscript(format!(
                    "segment orders must strictly increase ({} then {})",
                    window[0].order, window[1].order
                )));
            }
        }
        for segment in &self.segments {
            if segment.text.trim().is_empty() {
                return Err(ExtractError::InvalidTranscript(format!(
                    "segment {} has empty text",
                    segment.order
                )));
            }
        }
        Ok(())
    }

    fn text_of(&self, id: &ArgumentId) -> Option<&str> {
        if let Some(index) = id.provision_index() {
            return self
                .provisions
                .iter()
                .find(|p| p.index == index)
                .map(|p| p.text.as_str());
        }
        let order: u64 = id.as_str().strip_prefix("s:")?.parse().ok()?;
        self.segments.iter().find(|s| s.order == order).map(|s| s.text.as_str())
    }
}

/// Parse and validate a transcript from its JSON form.
pub fn parse_transcript(text: &str) -> Result<Transcript, ExtractError> {
    let transcript: Transcript =
        serde_json::from_str(text).map_err(|e| ExtractError::Parse(e.to_string()))?;
    transcript.validate()?;
    Ok(transcript)
}

pub fn load_transcript_file(path: &Path) -> Result<Transcript, ExtractError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ExtractError::Io { path: path.to_path_buf(), message: e.to_string() })?;
    parse_transcript(&text)
}

/// Which segment pairs are candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    /// Later segments may relate to earlier segments only — the original
    /// debate's temporal constraint.
    Temporal,
    /// All ordered segment pairs — summaries have no temporal reading.
    AllPairs,
}

/// Candidate pairs under the temporal constraint: every
/// (later segment, earlier segment) pair plus every (segment, provision)
/// pair.  Count: `s(s−1)/2 + s·p`.
pub fn candidate_pairs(transcript: &Transcript) -> Vec<(ArgumentId, ArgumentId)> {
    candidate_pairs_with(transcript, PairMode::Temporal, None)
}

/// Candidate pairs under an explicit mode and optional window.
///
/// A window of `k` keeps only the `k` nearest preceding segments as targets
/// (temporal mode only); provision pairs are never windowed.
pub fn candidate_pairs_with(
    transcript: &Transcript,
    mode: PairMode,
    window: Option<usize>,
) -> Vec<(ArgumentId, ArgumentId)> {
    let mut pairs = Vec::new();
    let segments = &transcript.segments;
    for (i, segment) in segments.iter().enumerate() {
        let source = ArgumentId::segment(segment.order);
        match mode {
            PairMode::Temporal => {
                let from = window.map(|w| i.saturating_sub(w)).unwrap_or(0);
                for earlier in &segments[from..i] {
                    pairs.push((source.clone(), ArgumentId::segment(earlier.order)));
                }
            }
            PairMode::AllPairs => {
                for (j, other) in segments.iter().enumerate() {
                    if i != j {
                        pairs.push((source.clone(), ArgumentId::segment(other.order)));
                    }
                }
            }
        }
        for provision in &transcript.provisions {
            pairs.push((source.clone(), ArgumentId::proposal(provision.index)));
        }
    }
    pairs
}

/// The three relation classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationLabel {
    Attack,
    Support,
    Neither,
}

impl RelationLabel {
    pub const ALL: [RelationLabel; 3] =
        [RelationLabel::Attack, RelationLabel::Support, RelationLabel::Neither];

    pub fn parse(text: &str) -> Option<RelationLabel> {
        match text.trim().to_lowercase().as_str() {
            "attack" => Some(RelationLabel::Attack),
            "support" => Some(RelationLabel::Support),
            "neither" => Some(RelationLabel::Neither),
            _ => None,
        }
    }
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            RelationLabel::Attack => "attack",
            RelationLabel::Support => "support",
            RelationLabel::Neither => "neither",
        };
        f.write_str(text)
    }
}

/// One classified pair.  `label` is `None` when classification failed after
/// retries and the run was not strict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationVerdict {
    pub source: ArgumentId,
    pub target: ArgumentId,
    pub label: Option<RelationLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confidence: Option<f64>,
    /// Name of the classifier that produced this verdict.
    pub classifier: String,
    /// Digest of the raw remote response, when one existed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub response_digest: Option<String>,
}

/// Classifier output for one pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classified {
    pub label: RelationLabel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confidence: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub response_digest: Option<String>,
}

/// Labels the relation from a source statement toward a target statement.
///
/// `name` identifies the classifier *and its configuration* — it keys the
/// disk cache, so anything that changes behaviour (model, prompt) must
/// change the name.
pub trait RelationClassifier {
    fn name(&self) -> String;
    fn classify(&self, source_text: &str, target_text: &str) -> Result<Classified, ExtractError>;
}

/// Stub: everything is unrelated.
pub struct AlwaysNeither;

impl RelationClassifier for AlwaysNeither {
    fn name(&self) -> String {
        "always-neither".into()
    }

    fn classify(&self, _: &str, _: &str) -> Result<Classified, ExtractError> {
        Ok(Classified { label: RelationLabel::Neither, confidence: None, response_digest: None })
    }
}

/// Stub: label by stance keywords in the source text.
///
/// Attack keywords are checked first — "disagree" contains "agree", so the
/// order is load-bearing.
pub struct KeywordClassifier {
    attack: Vec<String>,
    support: Vec<String>,
}

impl Default for KeywordClassifier {
    fn default() -> Self {
        KeywordClassifier {
            attack: ["disagree", "oppose", "against", "reject", "object"]
                .map(String::from)
                .to_vec(),
            support: ["agree", "support", "favour", "favor", "endorse", "back"]
                .map(String::from)
                .to_vec(),
        }
    }
}

impl KeywordClassifier {
    pub fn new(attack: Vec<String>, support: Vec<String>) -> KeywordClassifier {
        KeywordClassifier { attack, support }
    }
}

impl RelationClassifier for KeywordClassifier {
    fn name(&self) -> String {
        "keyword-stub".into()
    }

    fn classify(&self, source_text: &str, _: &str) -> Result<Classified, ExtractError> {
        let lowered = source_text.to_lowercase();
        let label = if self.attack.iter().any(|k| lowered.contains(k.as_str())) {
            RelationLabel::Attack
        } else if self.support.iter().any(|k| lowered.contains(k.as_str())) {
            RelationLabel::Support
        } else {
            RelationLabel::Neither
        };
        Ok(Classified { label, confidence: None, response_digest: None })
    }
}

#[derive(Serialize)]
struct ChatMessage<'a> {
    role: &'a str,
    content: &'a str,
}

#[derive(Serialize)]
struct ChatRequest<'a> {
    model: &'a str,
    messages: Vec<ChatMessage<'a>>,
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<ChatChoice>,
}

#[derive(Deserialize)]
struct ChatChoice {
    message: ChatResponseMessage,
}

#[derive(Deserialize)]
struct ChatResponseMessage {
    content: String,
}

/// Remote classifier speaking the chat-completions JSON shape.
///
/// The prompt is configuration, not code: it arrives as text and its digest
/// becomes part of the classifier name, so a prompt change invalidates the
/// cache.  The answer is read as the *first* of "attack" / "support" /
/// "neither" occurring in the reply.
pub struct ChatClassifier {
    client: JsonClient,
    url: String,
    model: String,
    prompt: String,
    name: String,
}

impl ChatClassifier {
    pub fn new(
        client: JsonClient,
        url: impl Into<String>,
        model: impl Into<String>,
        prompt: impl Into<String>,
    ) -> ChatClassifier {
        let model = model.into();
        let prompt = prompt.into();
        let prompt_digest = hex::encode(Sha256::digest(prompt.as_bytes()));
        let name = format!("chat:{model}:{}", &prompt_digest[..12]);
        ChatClassifier { client, url: url.into(), model, prompt, name }
    }

    fn parse_reply(content: &str) -> Option<RelationLabel> {
        let lowered = content.to_lowercase();
        RelationLabel::ALL
            .iter()
            .filter_map(|&label| lowered.find(&label.to_string()).map(|at| (at, label)))
            .min_by_key(|&(at, _)| at)
            .map(|(_, label)| label)
    }
}

impl RelationClassifier for ChatClassifier {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn classify(&self, source_text: &str, target_text: &str) -> Result<Classified, ExtractError> {
        let user = format!(
            "Source statement:\n{source_text}\n\nTarget statement:\n{target_text}\n\n\
             Answer with exactly one word: attack, support, or neither."
        );
        let request = ChatRequest {
            model: &self.model,
            messages: vec![
                ChatMessage { role: "system", content: &self.prompt },
                ChatMessage { role: "user", content: &user },
            ],
        };
        let response: ChatResponse = self.client.post_json(&self.url, &request)?;
        let content = response
            .choices
            .first()
            .map(|c| c.message.content.as_str())
            .ok_or_else(|| ExtractError::Classifier("reply carried no choices".into()))?;
        let label = Self::parse_reply(content).ok_or_else(|| {
            ExtractError::Classifier(format!("unrecognized relation reply: {content:?}"))
        })?;
        Ok(Classified {
            label,
            confidence: None,
            response_digest: Some(hex::encode(Sha256::digest(content.as_bytes()))),
        })
    }
}

/// Options for [`classify_pairs`].
#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Directory for the verdict cache; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
    /// Maximum classifier calls in flight.
    pub parallelism: usize,
    /// Abort on the first failure instead of recording unclassified pairs.
    pub strict: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            cache_dir: None,
            parallelism: crate::remote::DEFAULT_PARALLELISM,
            strict: false,
        }
    }
}

/// Outcome of a classification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationRun {
    pub verdicts: Vec<RelationVerdict>,
    /// Pairs that failed after retries (label `None`).
    pub failures: usize,
    /// Pairs answered from the disk cache.
    pub cache_hits: usize,
    /// Actual classifier invocations.
    pub classifier_calls: usize,
}

/// Cache key: classifier identity and the two texts, digested.
fn cache_digest(classifier: &str, source_text: &str, target_text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(classifier.as_bytes());
    hasher.update([0u8]);
    hasher.update(source_text.as_bytes());
    hasher.update([0u8]);
    hasher.update(target_text.as_bytes());
    hex::encode(hasher.finalize())
}

fn cache_read(dir: &Path, digest: &str) -> Option<Classified> {
    let path = dir.join(format!("{digest}.json"));
    let text = std::fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn cache_write(dir: &Path, digest: &str, entry: &Classified) -> Result<(), ExtractError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| ExtractError::Io { path: dir.to_path_buf(), message: e.to_string() })?;
    let path = dir.join(format!("{digest}.json"));
    let text = serde_json::to_string_pretty(entry).expect("cache entry serializes");
    std::fs::write(&path, text)
        .map_err(|e| ExtractError::Io { path, message: e.to_string() })
}

/// Classify every pair, consulting and filling the disk cache.
///
/// Verdicts come back in pair order.  Failures after retries either abort
/// (strict) or yield verdicts with `label: None` and a failure count.
pub fn classify_pairs(
    transcript: &Transcript,
    pairs: &[(ArgumentId, ArgumentId)],
    classifier: &(dyn RelationClassifier + Sync),
    options: &ClassifyOptions,
) -> Result<ClassificationRun, ExtractError> {
    let classifier_name = classifier.name();

    struct Job<'a> {
        pair_index: usize,
        source_text: &'a str,
        target_text: &'a str,
        digest: String,
    }

    let mut outcomes: Vec<Option<Classified>> = vec![None; pairs.len()];
    let mut jobs: Vec<Job> = Vec::new();
    let mut cache_hits = 0usize;

    for (pair_index, (source, target)) in pairs.iter().enumerate() {
        let source_text = transcript.text_of(source).ok_or_else(|| {
            ExtractError::UnknownPair { source: source.clone(), target: target.clone() }
        })?;
        let target_text = transcript.text_of(target).ok_or_else(|| {
            ExtractError::UnknownPair { source: source.clone(), target: target.clone() }
        })?;
        let digest = cache_digest(&classifier_name, source_text, target_text);
        if let Some(dir) = &options.cache_dir {
            if let Some(entry) = cache_read(dir, &digest) {
                outcomes[pair_index] = Some(entry);
                cache_hits += 1;
                continue;
            }
        }
        jobs.push(Job { pair_index, source_text, target_text, digest });
    }

    let classifier_calls = jobs.len();
    let results = run_bounded(&jobs, options.parallelism, options.strict, |job| {
        classifier.classify(job.source_text, job.target_text)
    });

    let mut failures = 0usize;
    let mut first_error = None;
    for (job, result) in jobs.iter().zip(results) {
        match result {
            Some(Ok(entry)) => {
                if let Some(dir) = &options.cache_dir {
                    cache_write(dir, &job.digest, &entry)?;
                }
                outcomes[job.pair_index] = Some(entry);
            }
            Some(Err(err)) => {
                failures += 1;
                if first_error.is_none() {
                    first_error = Some(err);
                }
            }
            None => failures += 1,
        }
    }
    if options.strict {
        if let Some(err) = first_error {
            return Err(err);
        }
    }

    let verdicts = pairs
        .iter()
        .zip(outcomes)
        .map(|((source, target), outcome)| match outcome {
            Some(entry) => RelationVerdict {
                source: source.clone(),
                target: target.clone(),
                label: Some(entry.label),
                confidence: entry.confidence,
                classifier: classifier_name.clone(),
                response_digest: entry.response_digest,
            },
            None => RelationVerdict {
                source: source.clone(),
                target: target.clone(),
                label: None,
                confidence: None,
                classifier: classifier_name.clone(),
                response_digest: None,
            },
        })
        .collect();

    Ok(ClassificationRun { verdicts, failures, cache_hits, classifier_calls })
}

/// How [`build_qbaf`] assembles the graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildConfig {
    pub source: SourceKind,
    pub speech_base: f64,
    pub pair_mode: PairMode,
    pub window: Option<usize>,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            source: SourceKind::Original,
            speech_base: 0.2,
            pair_mode: PairMode::Temporal,
            window: None,
        }
    }
}

impl BuildConfig {
    /// The conventional mode for each graph side: temporal pairs for the
    /// original debate, all pairs for a summary.
    pub fn for_source(source: SourceKind) -> BuildConfig {
        let pair_mode = match source {
            SourceKind::Original => PairMode::Temporal,
            SourceKind::Summary => PairMode::AllPairs,
        };
        BuildConfig { source, pair_mode, ..BuildConfig::default() }
    }
}

/// Assemble a debate graph from a transcript and its verdicts.
///
/// Every verdict must name a candidate pair, exactly once, and every
/// candidate pair must have a verdict.  Unclassified verdicts become
/// "neither" and are reported in the returned warnings.  Segment orders are
/// recorded on original graphs and dropped on summaries.
pub fn build_qbaf(
    transcript: &Transcript,
    verdicts: &[RelationVerdict],
    config: &BuildConfig,
) -> Result<(Qbaf, Vec<String>), ExtractError> {
    transcript.validate()?;
    let candidates: HashSet<(ArgumentId, ArgumentId)> =
        candidate_pairs_with(transcript, config.pair_mode, config.window)
            .into_iter()
            .collect();

    let mut seen: HashSet<(ArgumentId, ArgumentId)> = HashSet::new();
    let mut warnings = Vec::new();
    let mut unclassified = 0usize;
    let mut builder = QbafBuilder::new(&transcript.debate_id, config.source);

    for provision in &transcript.provisions {
        builder = builder.proposal(provision.index, &provision.text);
    }
    for segment in &transcript.segments {
        let order = match config.source {
            SourceKind::Original => Some(segment.order),
            SourceKind::Summary => None,
        };
        builder = builder.speech_full(
            ArgumentId::segment(segment.order).as_str(),
            &segment.text,
            config.speech_base,
            order,
        );
    }

    for verdict in verdicts {
        let pair = (verdict.source.clone(), verdict.target.clone());
        if !candidates.contains(&pair) {
            return Err(ExtractError::UnknownPair {
                source: verdict.source.clone(),
                target: verdict.target.clone(),
            });
        }
        if !seen.insert(pair) {
            return Err(ExtractError::DuplicateVerdict {
                source: verdict.source.clone(),
                target: verdict.target.clone(),
            });
        }
        match verdict.label {
            Some(RelationLabel::Attack) => {
                builder = builder.attack(verdict.source.as_str(), verdict.target.as_str());
            }
            Some(RelationLabel::Support) => {
                builder = builder.support(verdict.source.as_str(), verdict.target.as_str());
            }
            Some(RelationLabel::Neither) => {}
            None => unclassified += 1,
        }
    }

    if seen.len() < candidates.len() {
        return Err(ExtractError::MissingVerdicts(candidates.len() - seen.len()));
    }
    if unclassified > 0 {
        warnings.push(format!("{unclassified} unclassified pairs treated as neither"));
    }
    Ok((builder.build(), warnings))
}

/// File form of a verdict list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictFile {
    pub verdicts: Vec<RelationVerdict>,
}

/// Canonical JSON for a verdict list (pretty, trailing newline).
pub fn verdicts_to_json(verdicts: &[RelationVerdict]) -> String {
    let file = VerdictFile { verdicts: verdicts.to_vec() };
    let mut text = serde_json::to_string_pretty(&file).expect("verdicts serialize");
    text.push('\n');
    text
}

pub fn parse_verdicts(text: &str) -> Result<Vec<RelationVerdict>, ExtractError> {
    let file: VerdictFile =
        serde_json::from_str(text).map_err(|e| ExtractError::Parse(e.to_string()))?;
    Ok(file.verdicts)
}

/// One gold-labeled pair, optionally with the individual annotator labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldPair {
    pub source: ArgumentId,
    pub target: ArgumentId,
    pub label: RelationLabel,
    pub annotators: Vec<RelationLabel>,
}

/// Read gold labels from CSV: `source_id,target_id,label[,annotator…]`.
///
/// A first row whose label column is not attack/support/neither is treated
/// as a header and skipped.
pub fn load_gold_csv(text: &str) -> Result<Vec<GoldPair>, ExtractError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (row_index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| ExtractError::Parse(e.to_string()))?;
        if record.len() < 3 {
            return Err(ExtractError::Parse(format!(
                "gold row {} has {} fields, need at least 3",
                row_index + 1,
                record.len()
            )));
        }
        let label = match RelationLabel::parse(&record[2]) {
            Some(label) => label,
            None if row_index == 0 => continue, // header row
            None => {
                return Err(ExtractError::Parse(format!(
                    "gold row {} has unknown label {:?}",
                    row_index + 1,
                    &record[2]
                )))
            }
        };
        let mut annotators = Vec::new();
        for field in record.iter().skip(3) {
            if field.trim().is_empty() {
                continue;
            }
            let annotator = RelationLabel::parse(field).ok_or_else(|| {
                ExtractError::Parse(format!(
                    "gold row {} has unknown annotator label {:?}",
                    row_index + 1,
                    field
                ))
            })?;
            annotators.push(annotator);
        }
        rows.push(GoldPair {
            source: ArgumentId::new(record[0].trim()),
            target: ArgumentId::new(record[1].trim()),
            label,
            annotators,
        });
    }
    Ok(rows)
}

pub fn load_gold_csv_file(path: &Path) -> Result<Vec<GoldPair>, ExtractError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ExtractError::Io { path: path.to_path_buf(), message: e.to_string() })?;
    load_gold_csv(&text)
}

/// Cohen's kappa between two label sequences of equal length.
///
/// Complete agreement with a degenerate margin (both raters constant on the
/// same class) is reported as 1.
pub fn cohen_kappa<T: Ord + Clone>(a: &[T], b: &[T]) -> Result<f64, ExtractError> {
    if a.is_empty() || a.len() != b.len() {
        return Err(ExtractError::Parse(format!(
            "kappa needs two equal nonempty label lists, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len() as f64;
    let observed = a.iter().zip(b).filter(|(x, y)| x == y).count() as f64 / n;
    let mut count_a: BTreeMap<&T, usize> = BTreeMap::new();
    let mut count_b: BTreeMap<&T, usize> = BTreeMap::new();
    for x in a {
        *count_a.entry(x).or_default() += 1;
    }
    for y in b {
        *count_b.entry(y).or_default() += 1;
    }
    let mut expected = 0.0;
    for (value, &ca) in &count_a {
        if let Some(&cb) = count_b.get(value) {
            expected += (ca as f64 / n) * (cb as f64 / n);
        }
    }
    if (1.0 - expected).abs() < 1e-12 {
        return Ok(if (observed - 1.0).abs() < 1e-12 { 1.0 } else { 0.0 });
    }
    Ok((observed - expected) / (1.0 - expected))
}

/// Classifier-versus-gold metrics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcMetrics {
    /// Number of scored pairs.
    pub total: usize,
    /// Exact-match rate; unclassified predictions never match.
    pub accuracy: f64,
    /// Per-class F1 in the fixed order attack, support, neither; `None`
    /// when a class occurs in neither gold nor predictions.
    pub per_class_f1: Vec<(RelationLabel, Option<f64>)>,
    /// Unweighted mean F1 over the classes present in gold or predictions.
    pub macro_f1: f64,
    /// Cohen's kappa for each annotator pair `(i, j)`, when the gold rows
    /// carry annotator labels.
    pub annotator_kappa: Vec<((usize, usize), f64)>,
    /// Mean of the pairwise kappas, when any exist.
    pub mean_kappa: Option<f64>,
}

/// Score verdicts against gold labels.
///
/// Every verdicted pair must appear in the gold set; spare gold rows are
/// ignored.  Annotator agreement uses the gold rows of the scored pairs and
/// requires a consistent annotator count.
pub fn arc_eval(
    verdicts: &[RelationVerdict],
    gold: &[GoldPair],
) -> Result<ArcMetrics, ExtractError> {
    if gold.is_empty() {
        return Err(ExtractError::EmptyGold);
    }
    if verdicts.is_empty() {
        return Err(ExtractError::GoldMismatch("no verdicts to score".into()));
    }
    let by_pair: HashMap<(&ArgumentId, &ArgumentId), &GoldPair> =
        gold.iter().map(|g| ((&g.source, &g.target), g)).collect();

    let mut matched_gold = Vec::new();
    let mut correct = 0usize;
    // Confusion counts per class: (true positives, false positives, false
    // negatives).
    let mut confusion: BTreeMap<RelationLabel, (usize, usize, usize)> = BTreeMap::new();
    for verdict in verdicts {
        let gold_row = by_pair.get(&(&verdict.source, &verdict.target)).ok_or_else(|| {
            ExtractError::GoldMismatch(format!(
                "no gold label for ({}, {})",
                verdict.source, verdict.target
            ))
        })?;
        matched_gold.push(*gold_row);
        let actual = gold_row.label;
        match verdict.label {
            Some(predicted) if predicted == actual => {
                correct += 1;
                confusion.entry(actual).or_default().0 += 1;
            }
            Some(predicted) => {
                confusion.entry(predicted).or_default().1 += 1;
                confusion.entry(actual).or_default().2 += 1;
            }
            None => {
                confusion.entry(actual).or_default().2 += 1;
            }
        }
    }

    let total = verdicts.len();
    let accuracy = correct as f64 / total as f64;

    let mut per_class_f1 = Vec::new();
    let mut f1_sum = 0.0;
    let mut f1_count = 0usize;
    for label in RelationLabel::ALL {
        let (tp, fp, fn_) = confusion.get(&label).copied().unwrap_or((0, 0, 0));
        let f1 = if tp + fp + fn_ == 0 {
            None
        } else {
            Some(2.0 * tp as f64 / (2.0 * tp as f64 + fp as f64 + fn_ as f64))
        };
        if let Some(v) = f1 {
            f1_sum += v;
            f1_count += 1;
        }
        per_class_f1.push((label, f1));
    }
    debug_assert!(f1_count > 0, "gold is nonempty, so some class occurs");
    let macro_f1 = f1_sum / f1_count as f64;

    let annotator_counts: HashSet<usize> =
        matched_gold.iter().map(|g| g.annotators.len()).collect();
    let mut annotator_kappa = Vec::new();
    if annotator_counts == HashSet::from([0]) || matched_gold.is_empty() {
        // No annotator data.
    } else if annotator_counts.len() != 1 {
        return Err(ExtractError::GoldMismatch(
            "gold rows carry differing annotator counts".into(),
        ));
    } else {
        let k = *annotator_counts.iter().next().unwrap();
        for i in 0..k {
            for j in (i + 1)..k {
                let a: Vec<RelationLabel> =
                    matched_gold.iter().map(|g| g.annotators[i]).collect();
                let b: Vec<RelationLabel> =
                    matched_gold.iter().map(|g| g.annotators[j]).collect();
                annotator_kappa.push(((i, j), cohen_kappa(&a, &b)?));
            }
        }
    }
    let mean_kappa = if annotator_kappa.is_empty() {
        None
    } else {
        Some(annotator_kappa.iter().map(|(_, v)| v).sum::<f64>() / annotator_kappa.len() as f64)
    };

    Ok(ArcMetrics { total, accuracy, per_class_f1, macro_f1, annotator_kappa, mean_kappa })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn transcript(provisions: usize, segments: usize) -> Transcript {
        Transcript {
            debate_id: "d".into(),
            provisions: (1..=provisions as u32)
                .map(|index| Provision { index, text: format!("Provision {index}") })
                .collect(),
            segments: (1..=segments as u64)
                .map(|order| SpeechSegment {
                    order,
                    speaker: format!("Speaker {order}"),
                    text: format!("Remark {order}"),
                })
                .collect(),
        }
    }

    #[test]
    fn candidate_count_matches_the_closed_form() {
        for (s, p) in [(0, 3), (1, 1), (3, 2), (5, 0), (7, 4)] {
            let t = transcript(p, s);
            let expected = s * s.saturating_sub(1) / 2 + s * p;
            assert_eq!(candidate_pairs(&t).len(), expected, "s={s} p={p}");
        }
    }

    #[test]
    fn temporal_pairs_point_backwards_only() {
        let t = transcript(1, 3);
        let pairs = candidate_pairs(&t);
        let as_strings: Vec<(String, String)> = pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(
            as_strings,
            [
                ("s:1".to_string(), "p:1".to_string()),
                ("s:2".into(), "s:1".into()),
                ("s:2".into(), "p:1".into()),
                ("s:3".into(), "s:1".into()),
                ("s:3".into(), "s:2".into()),
                ("s:3".into(), "p:1".into()),
            ]
        );
    }

    #[test]
    fn window_limits_segment_targets_but_not_provisions() {
        let t = transcript(2, 4);
        let pairs = candidate_pairs_with(&t, PairMode::Temporal, Some(1));
        let segment_targets = pairs
            .iter()
            .filter(|(_, target)| target.as_str().starts_with("s:"))
            .count();
        assert_eq!(segment_targets, 3, "each later segment keeps one predecessor");
        let provision_targets = pairs.len() - segment_targets;
        assert_eq!(provision_targets, 4 * 2);
        assert!(pairs.contains(&("s:4".into(), "s:3".into())));
        assert!(!pairs.contains(&("s:4".into(), "s:2".into())));
    }

    #[test]
    fn all_pairs_mode_runs_both_directions() {
        let t = transcript(1, 3);
        let pairs = candidate_pairs_with(&t, PairMode::AllPairs, None);
        assert_eq!(pairs.len(), 3 * 2 + 3);
        assert!(pairs.contains(&("s:1".into(), "s:3".into())));
        assert!(pairs.contains(&("s:3".into(), "s:1".into())));
    }

    #[test]
    fn transcript_invariants_are_enforced() {
        let mut bad = transcript(1, 2);
        bad.provisions.push(Provision { index: 1, text: "again".into() });
        assert!(matches!(bad.validate(), Err(ExtractError::InvalidTranscript(_))));

        let mut bad = transcript(1, 2);
        bad.segments[1].order = 1;
        assert!(bad.validate().is_err());

        let mut bad = transcript(1, 2);
        bad.segments[0].text = "  ".into();
        assert!(bad.validate().is_err());

        let mut bad = transcript(1, 1);
        bad.provisions[0].index = 0;
        assert!(bad.validate().is_err());

        assert!(transcript(2, 3).validate().is_ok());
    }

    #[test]
    fn transcript_json_round_trips() {
        let text = r#"{
            "debate_id": "d-7",
            "provisions": [{"index": 1, "text": "One"}],
            "segments": [{"order": 1, "speaker": "A", "text": "First remark"}]
        }"#;
        let t = parse_transcript(text).unwrap();
        assert_eq!(t.debate_id, "d-7");
        assert_eq!(t.segments[0].speaker, "A");
        assert!(parse_transcript("{not json").is_err());
    }

    #[test]
    fn always_neither_labels_everything_neither() {
        let t = transcript(1, 3);
        let pairs = candidate_pairs(&t);
        let run =
            classify_pairs(&t, &pairs, &AlwaysNeither, &ClassifyOptions::default()).unwrap();
        assert_eq!(run.verdicts.len(), pairs.len());
        assert!(run.verdicts.iter().all(|v| v.label == Some(RelationLabel::Neither)));
        assert_eq!(run.failures, 0);
        assert_eq!(run.cache_hits, 0);
        assert_eq!(run.classifier_calls, pairs.len());
    }

    #[test]
    fn keyword_stub_checks_attack_words_first() {
        let classifier = KeywordClassifier::default();
        let attack = classifier.classify("I disagree with this strongly", "x").unwrap();
        assert_eq!(attack.label, RelationLabel::Attack);
        let support = classifier.classify("We agree on the point", "x").unwrap();
        assert_eq!(support.label, RelationLabel::Support);
        let neither = classifier.classify("The weather is mild", "x").unwrap();
        assert_eq!(neither.label, RelationLabel::Neither);
    }

    struct CountingClassifier {
        calls: AtomicUsize,
    }

    impl RelationClassifier for CountingClassifier {
        fn name(&self) -> String {
            "counting".into()
        }

        fn classify(&self, source: &str, _: &str) -> Result<Classified, ExtractError> {
            self.calls.fetch_add(1, Ordering::SeqCst);
            let label = if source.contains('1') {
                RelationLabel::Support
            } else {
                RelationLabel::Neither
            };
            Ok(Classified { label, confidence: Some(0.9), response_digest: None })
        }
    }

    #[test]
    fn cache_makes_reruns_free() {
        let dir = tempfile::tempdir().unwrap();
        let t = transcript(2, 3);
        let pairs = candidate_pairs(&t);
        let options = ClassifyOptions {
            cache_dir: Some(dir.path().to_path_buf()),
            ..ClassifyOptions::default()
        };
        let classifier = CountingClassifier { calls: AtomicUsize::new(0) };

        let first = classify_pairs(&t, &pairs, &classifier, &options).unwrap();
        assert_eq!(first.cache_hits, 0);
        assert_eq!(first.classifier_calls, pairs.len());
        assert_eq!(classifier.calls.load(Ordering::SeqCst), pairs.len());

        let second = classify_pairs(&t, &pairs, &classifier, &options).unwrap();
        assert_eq!(second.cache_hits, pairs.len());
        assert_eq!(second.classifier_calls, 0);
        assert_eq!(classifier.calls.load(Ordering::SeqCst), pairs.len());
        assert_eq!(first.verdicts, second.verdicts);
    }

    #[test]
    fn cache_is_keyed_by_classifier_identity() {
        let dir = tempfile::tempdir().unwrap();
        let t = transcript(1, 2);
        let pairs = candidate_pairs(&t);
        let options = ClassifyOptions {
            cache_dir: Some(dir.path().to_path_buf()),
            ..ClassifyOptions::default()
        };
        classify_pairs(&t, &pairs, &AlwaysNeither, &options).unwrap();
        let counting = CountingClassifier { calls: AtomicUsize::new(0) };
        let run = classify_pairs(&t, &pairs, &counting, &options).unwrap();
        assert_eq!(run.cache_hits, 0, "a different classifier does not share entries");
        assert_eq!(counting.calls.load(Ordering::SeqCst), pairs.len());
    }

    struct FailingClassifier;

    impl RelationClassifier for FailingClassifier {
        fn name(&self) -> String {
            "failing".into()
        }

        fn classify(&self, source: &str, _: &str) -> Result<Classified, ExtractError> {
            if source.contains('2') {
                Err(ExtractError::Classifier("refused".into()))
            } else {
                Ok(Classified {
                    label: RelationLabel::Neither,
                    confidence: None,
                    response_digest: None,
                })
            }
        }
    }

    #[test]
    fn lenient_runs_mark_failures_as_unclassified() {
        let t = transcript(1, 3);
        let pairs = candidate_pairs(&t);
        let run =
            classify_pairs(&t, &pairs, &FailingClassifier, &ClassifyOptions::default()).unwrap();
        assert!(run.failures > 0);
        let unlabeled = run.verdicts.iter().filter(|v| v.label.is_none()).count();
        assert_eq!(unlabeled, run.failures);
        assert_eq!(run.verdicts.len(), pairs.len());
    }

    #[test]
    fn strict_runs_abort_on_failure() {
        let t = transcript(1, 3);
        let pairs = candidate_pairs(&t);
        let options = ClassifyOptions { strict: true, ..ClassifyOptions::default() };
        let err = classify_pairs(&t, &pairs, &FailingClassifier, &options).unwrap_err();
        assert!(matches!(err, ExtractError::Classifier(_)));
    }

    #[test]
    fn chat_reply_parsing_takes_the_first_label_word() {
        assert_eq!(ChatClassifier::parse_reply("Support."), Some(RelationLabel::Support));
        assert_eq!(
            ChatClassifier::parse_reply("It is an ATTACK, not support"),
            Some(RelationLabel::Attack)
        );
        assert_eq!(
            ChatClassifier::parse_reply("neither, leaning support"),
            Some(RelationLabel::Neither)
        );
        assert_eq!(ChatClassifier::parse_reply("no idea"), None);
    }

    fn verdict(source: &str, target: &str, label: Option<RelationLabel>) -> RelationVerdict {
        RelationVerdict {
            source: source.into(),
            target: target.into(),
            label,
            confidence: None,
            classifier: "test".into(),
            response_digest: None,
        }
    }

    fn full_neither_verdicts(t: &Transcript, config: &BuildConfig) -> Vec<RelationVerdict> {
        candidate_pairs_with(t, config.pair_mode, config.window)
            .into_iter()
            .map(|(s, g)| verdict(s.as_str(), g.as_str(), Some(RelationLabel::Neither)))
            .collect()
    }

    #[test]
    fn single_support_verdict_lifts_the_provision() {
        let t = transcript(1, 1);
        let config = BuildConfig::default();
        let verdicts =
            vec![verdict("s:1", "p:1", Some(RelationLabel::Support))];
        let (qbaf, warnings) = build_qbaf(&t, &verdicts, &config).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(qbaf.edges().len(), 1);
        let strengths =
            crate::semantics::evaluate(&qbaf, &crate::semantics::SemanticsConfig::default())
                .unwrap();
        assert!((strengths.get(&"p:1".into()).unwrap() - 0.6).abs() < 1e-12);
        assert!(qbaf.validate(true).is_valid());
    }

    #[test]
    fn all_neither_builds_an_edgeless_graph() {
        let t = transcript(2, 3);
        let config = BuildConfig::default();
        let (qbaf, _) = build_qbaf(&t, &full_neither_verdicts(&t, &config), &config).unwrap();
        assert!(qbaf.edges().is_empty());
        assert_eq!(qbaf.arguments().len(), 5);
        assert_eq!(crate::properties::p1_relevance(&qbaf), Some(0.0));
    }

    #[test]
    fn forward_pair_verdicts_are_rejected_in_temporal_mode() {
        let t = transcript(1, 2);
        let config = BuildConfig::default();
        let mut verdicts = full_neither_verdicts(&t, &config);
        verdicts.push(verdict("s:1", "s:2", Some(RelationLabel::Attack)));
        assert!(matches!(
            build_qbaf(&t, &verdicts, &config),
            Err(ExtractError::UnknownPair { .. })
        ));
    }

    #[test]
    fn duplicate_and_missing_verdicts_are_rejected() {
        let t = transcript(1, 2);
        let config = BuildConfig::default();
        let mut doubled = full_neither_verdicts(&t, &config);
        doubled.push(doubled[0].clone());
        assert!(matches!(
            build_qbaf(&t, &doubled, &config),
            Err(ExtractError::DuplicateVerdict { .. })
        ));

        let mut short = full_neither_verdicts(&t, &config);
        short.pop();
        assert!(matches!(
            build_qbaf(&t, &short, &config),
            Err(ExtractError::MissingVerdicts(1))
        ));
    }

    #[test]
    fn unclassified_pairs_become_neither_with_a_warning() {
        let t = transcript(1, 1);
        let verdicts = vec![verdict("s:1", "p:1", None)];
        let (qbaf, warnings) = build_qbaf(&t, &verdicts, &BuildConfig::default()).unwrap();
        assert!(qbaf.edges().is_empty());
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("1 unclassified"));
    }

    #[test]
    fn original_graphs_keep_orders_and_pass_temporal_validation() {
        let t = transcript(1, 3);
        let config = BuildConfig::for_source(SourceKind::Original);
        let mut verdicts = full_neither_verdicts(&t, &config);
        verdicts[0] = verdict("s:2", "s:1", Some(RelationLabel::Attack));
        // Replace the corresponding entry to keep full coverage.
        let pairs = candidate_pairs(&t);
        for (v, (s, g)) in verdicts.iter_mut().zip(&pairs) {
            v.source = s.clone();
            v.target = g.clone();
        }
        verdicts
            .iter_mut()
            .find(|v| v.source.as_str() == "s:2" && v.target.as_str() == "s:1")
            .unwrap()
            .label = Some(RelationLabel::Attack);
        let (qbaf, _) = build_qbaf(&t, &verdicts, &config).unwrap();
        assert!(qbaf.validate(true).is_valid());
        assert_eq!(qbaf.argument(&"s:2".into()).unwrap().order, Some(2));
    }

    #[test]
    fn summary_graphs_drop_segment_orders() {
        let t = transcript(1, 2);
        let config = BuildConfig::for_source(SourceKind::Summary);
        let mut verdicts = full_neither_verdicts(&t, &config);
        // A forward pair is fine in a summary.
        verdicts
            .iter_mut()
            .find(|v| v.source.as_str() == "s:1" && v.target.as_str() == "s:2")
            .unwrap()
            .label = Some(RelationLabel::Support);
        let (qbaf, _) = build_qbaf(&t, &verdicts, &config).unwrap();
        assert_eq!(qbaf.argument(&"s:1".into()).unwrap().order, None);
        assert!(qbaf.validate(true).is_valid(), "no orders, no temporal violations");
        assert_eq!(qbaf.edges().len(), 1);
    }

    #[test]
    fn verdict_json_round_trips() {
        let verdicts = vec![
            verdict("s:2", "s:1", Some(RelationLabel::Attack)),
            verdict("s:2", "p:1", None),
        ];
        let text = verdicts_to_json(&verdicts);
        assert!(text.ends_with('\n'));
        let parsed = parse_verdicts(&text).unwrap();
        assert_eq!(parsed, verdicts);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["verdicts"][0]["label"], "attack");
        assert_eq!(value["verdicts"][1]["label"], serde_json::Value::Null);
    }

    #[test]
    fn gold_csv_with_and_without_header() {
        let with_header = "source_id,target_id,label\ns:2,s:1,attack\ns:3,p:1,support\n";
        let rows = load_gold_csv(with_header).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].label, RelationLabel::Attack);
        assert!(rows[0].annotators.is_empty());

        let bare = "s:2,s:1,neither\n";
        let rows = load_gold_csv(bare).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].label, RelationLabel::Neither);

        let with_annotators = "s:2,s:1,attack,attack,neither\n";
        let rows = load_gold_csv(with_annotators).unwrap();
        assert_eq!(
            rows[0].annotators,
            [RelationLabel::Attack, RelationLabel::Neither]
        );

        assert!(load_gold_csv("s:2,s:1\n").is_err());
        assert!(load_gold_csv("s:2,s:1,attack\ns:3,s:1,banana\n").is_err());
    }

    #[test]
    fn kappa_matches_the_hand_example() {
        // 20 items, observed agreement 0.7, both raters split 10/10, so
        // expected agreement 0.5 and kappa (0.7 - 0.5) / 0.5 = 0.4.
        use RelationLabel::{Attack as X, Support as Y};
        let a = [vec![X; 10], vec![Y; 10]].concat();
        let b = [vec![X; 7], vec![Y; 3], vec![X; 3], vec![Y; 7]].concat();
        let kappa = cohen_kappa(&a, &b).unwrap();
        assert!((kappa - 0.4).abs() < 1e-12);
    }

    #[test]
    fn kappa_edges() {
        use RelationLabel::{Attack as X, Support as Y};
        assert_eq!(cohen_kappa(&[X, Y, X], &[X, Y, X]).unwrap(), 1.0);
        assert_eq!(cohen_kappa(&[X, X], &[X, X]).unwrap(), 1.0, "degenerate margins");
        assert!(cohen_kappa(&[X], &[X, Y]).is_err());
        assert!(cohen_kappa::<RelationLabel>(&[], &[]).is_err());
    }

    fn gold(source: &str, target: &str, label: RelationLabel) -> GoldPair {
        GoldPair { source: source.into(), target: target.into(), label, annotators: vec![] }
    }

    #[test]
    fn perfect_predictions_score_one() {
        let gold_rows = vec![
            gold("s:2", "s:1", RelationLabel::Attack),
            gold("s:3", "s:1", RelationLabel::Support),
            gold("s:3", "s:2", RelationLabel::Neither),
        ];
        let verdicts: Vec<RelationVerdict> = gold_rows
            .iter()
            .map(|g| verdict(g.source.as_str(), g.target.as_str(), Some(g.label)))
            .collect();
        let metrics = arc_eval(&verdicts, &gold_rows).unwrap();
        assert_eq!(metrics.accuracy, 1.0);
        assert_eq!(metrics.macro_f1, 1.0);
        assert_eq!(metrics.total, 3);
    }

    #[test]
    fn constant_predictor_on_balanced_classes() {
        use RelationLabel::{Attack, Neither, Support};
        let gold_rows = vec![
            gold("a", "b", Attack),
            gold("a", "c", Attack),
            gold("b", "c", Support),
            gold("b", "d", Support),
            gold("c", "d", Neither),
            gold("c", "e", Neither),
        ];
        let verdicts: Vec<RelationVerdict> = gold_rows
            .iter()
            .map(|g| verdict(g.source.as_str(), g.target.as_str(), Some(Attack)))
            .collect();
        let metrics = arc_eval(&verdicts, &gold_rows).unwrap();
        assert!((metrics.accuracy - 1.0 / 3.0).abs() < 1e-12);
        assert!((metrics.macro_f1 - 1.0 / 6.0).abs() < 1e-12);
        assert_eq!(metrics.per_class_f1[0], (Attack, Some(0.5)));
        assert_eq!(metrics.per_class_f1[1], (Support, Some(0.0)));
        assert_eq!(metrics.per_class_f1[2], (Neither, Some(0.0)));
    }

    #[test]
    fn unclassified_predictions_count_against_accuracy() {
        let gold_rows =
            vec![gold("a", "b", RelationLabel::Attack), gold("a", "c", RelationLabel::Support)];
        let verdicts = vec![
            verdict("a", "b", Some(RelationLabel::Attack)),
            verdict("a", "c", None),
        ];
        let metrics = arc_eval(&verdicts, &gold_rows).unwrap();
        assert_eq!(metrics.accuracy, 0.5);
        // The unclassified pair is a miss for its gold class, not a false
        // positive anywhere.
        assert_eq!(metrics.per_class_f1[1], (RelationLabel::Support, Some(0.0)));
    }

    #[test]
    fn annotator_kappas_come_from_the_gold_rows() {
        use RelationLabel::{Attack as X, Support as Y};
        let mut gold_rows = Vec::new();
        let a = [vec![X; 10], vec![Y; 10]].concat();
        let b = [vec![X; 7], vec![Y; 3], vec![X; 3], vec![Y; 7]].concat();
        for (i, (left, right)) in a.iter().zip(&b).enumerate() {
            gold_rows.push(GoldPair {
                source: format!("s:{}", i + 2).as_str().into(),
                target: "s:1".into(),
                label: X,
                annotators: vec![*left, *right],
            });
        }
        let verdicts: Vec<RelationVerdict> = gold_rows
            .iter()
            .map(|g| verdict(g.source.as_str(), g.target.as_str(), Some(g.label)))
            .collect();
        let metrics = arc_eval(&verdicts, &gold_rows).unwrap();
        assert_eq!(metrics.annotator_kappa.len(), 1);
        let ((i, j), kappa) = metrics.annotator_kappa[0];
        assert_eq!((i, j), (0, 1));
        assert!((kappa - 0.4).abs() < 1e-12);
        assert_eq!(metrics.mean_kappa, Some(kappa));
    }

    #[test]
    fn gold_must_cover_every_verdict() {
        let gold_rows = vec![gold("a", "b", RelationLabel::Attack)];
        let verdicts = vec![verdict("a", "z", Some(RelationLabel::Attack))];
        assert!(matches!(
            arc_eval(&verdicts, &gold_rows),
            Err(ExtractError::GoldMismatch(_))
        ));
        assert!(matches!(arc_eval(&verdicts, &[]), Err(ExtractError::EmptyGold)));
    }
}
