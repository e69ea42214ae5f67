//! QBAF data model: arguments, attack/support edges, structural validation,
//! and the path/parity queries the rest of the crate builds on.
//!
//! A graph holds two kinds of arguments.  Proposal arguments stand for the
//! numbered provisions under debate and never speak for themselves: they have
//! no outgoing edges and a fixed neutral base score.  Speech arguments carry
//! the actual contributions and may attack or support any other argument.
//! Graphs are immutable once built; [`Qbaf::validate`] reports structural
//! violations instead of repairing them.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Base score every proposal argument carries.
pub const PROPOSAL_BASE_SCORE: f64 = 0.5;

/// Identifier of an argument, unique within one graph.
///
/// Proposal arguments use the form `p:<provision>` (provision index >= 1) so
/// that graphs extracted from the same debate can be aligned without fuzzy
/// matching.  Speech argument ids are free-form; extraction uses `s:<order>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn new(id: impl Into<String>) -> Self {
        ArgumentId(id.into())
    }

    /// Canonical id for the proposal of a given provision index.
    pub fn proposal(index: u32) -> Self {
        ArgumentId(format!("p:{index}"))
    }

    /// Canonical id for the speech argument of a transcript segment.
    pub fn segment(order: u64) -> Self {
        ArgumentId(format!("s:{order}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Provision index encoded in a proposal id (`p:15` -> 15).
    ///
    /// Returns `None` for ids that do not follow the proposal convention or
    /// that encode an index below 1.
    pub fn provision_index(&self) -> Option<u32> {
        self.0
            .strip_prefix("p:")
            .and_then(|rest| rest.parse::<u32>().ok())
            .filter(|ix| *ix >= 1)
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ArgumentId {
    fn from(s: &str) -> Self {
        ArgumentId(s.to_string())
    }
}

impl From<String> for ArgumentId {
    fn from(s: String) -> Self {
        ArgumentId(s)
    }
}

/// Whether an argument represents a provision or a speech contribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArgumentKind {
    Proposal,
    Speech,
}

/// One node of a QBAF.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Argument {
    pub id: ArgumentId,
    pub kind: ArgumentKind,
    pub text: String,
    /// Intrinsic strength in `[0, 1]`; proposals always use 0.5.
    pub base_score: f64,
    /// Position of the underlying segment in the original debate; absent for
    /// summary graphs and for proposals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

/// Whether an edge attacks or supports its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Attack,
    Support,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarity::Attack => f.write_str("attack"),
            Polarity::Support => f.write_str("support"),
        }
    }
}

/// A directed attack or support edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: ArgumentId,
    pub target: ArgumentId,
    pub polarity: Polarity,
}

impl Edge {
    pub fn new(source: impl Into<ArgumentId>, target: impl Into<ArgumentId>, polarity: Polarity) -> Self {
        Edge { source: source.into(), target: target.into(), polarity }
    }
}

/// Whether a graph represents the original debate or a summary of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Original,
    Summary,
}

/// Graph-level metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QbafMeta {
    pub debate_id: String,
    pub source: SourceKind,
}

/// Error raised by queries that reference an argument the graph lacks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown argument id `{0}`")]
    UnknownArgument(ArgumentId),
}

/// A directed path: at least one edge, no repeated node (the endpoints may
/// coincide, in which case the path is a cycle through its start).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    edges: Vec<Edge>,
}

impl Path {
    fn new(edges: Vec<Edge>) -> Self {
        debug_assert!(!edges.is_empty());
        Path { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of attack edges on the path; its parity decides pro/con.
    pub fn attack_count(&self) -> usize {
        self.edges.iter().filter(|e| e.polarity == Polarity::Attack).count()
    }

    pub fn source(&self) -> &ArgumentId {
        &self.edges[0].source
    }

    pub fn target(&self) -> &ArgumentId {
        &self.edges[self.edges.len() - 1].target
    }
}

/// Arguments reaching a target with even (pro) or odd (con) attack parity.
///
/// An argument can appear in both sets when distinct paths have distinct
/// parities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProCon {
    pub pro: BTreeSet<ArgumentId>,
    pub con: BTreeSet<ArgumentId>,
}

/// Machine-readable class of a structural violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationCode {
    EmptyId,
    DuplicateId,
    InvalidProvisionId,
    BaseScoreOutOfRange,
    ProposalBaseScore,
    DanglingEdge,
    EdgeFromProposal,
    AttackSupportOverlap,
    SelfEdge,
    MissingProposal,
    TemporalOrder,
}

/// A single structural violation found by [`Qbaf::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    /// Id (or id pair) the violation is about.
    pub subject: String,
    pub message: String,
}

/// Outcome of structural validation; an empty violation list means valid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone)]
struct Adjacency {
    /// Outgoing (target index, polarity) per argument, sorted for determinism.
    out: Vec<Vec<(usize, Polarity)>>,
    /// Incoming (source index, polarity) per argument, sorted for determinism.
    incoming: Vec<Vec<(usize, Polarity)>>,
}

/// A quantitative bipolar argumentation framework.
///
/// Construction collapses exact duplicate edges (same source, target, and
/// polarity) and records a warning for each; everything else is kept as given
/// so that [`Qbaf::validate`] can report it.
#[derive(Debug, Clone)]
pub struct Qbaf {
    meta: QbafMeta,
    arguments: Vec<Argument>,
    edges: Vec<Edge>,
    index: HashMap<ArgumentId, usize>,
    adjacency: Adjacency,
    acyclic: bool,
    warnings: Vec<String>,
}

impl Qbaf {
    pub fn new(meta: QbafMeta, arguments: Vec<Argument>, edges: Vec<Edge>) -> Self {
        let mut warnings = Vec::new();
        let mut kept: Vec<Edge> = Vec::with_capacity(edges.len());
        let mut seen: BTreeSet<(ArgumentId, ArgumentId, Polarity)> = BTreeSet::new();
        for edge in edges {
            let key = (edge.source.clone(), edge.target.clone(), edge.polarity);
            if seen.insert(key) {
                kept.push(edge);
            } else {
                warnings.push(format!(
                    "duplicate {} edge {} -> {} collapsed",
                    edge.polarity, edge.source, edge.target
                ));
            }
        }

        let mut index = HashMap::with_capacity(arguments.len());
        for (i, arg) in arguments.iter().enumerate() {
            index.entry(arg.id.clone()).or_insert(i);
        }

        let n = arguments.len();
        let mut out = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for edge in &kept {
            if let (Some(&s), Some(&t)) = (index.get(&edge.source), index.get(&edge.target)) {
                out[s].push((t, edge.polarity));
                incoming[t].push((s, edge.polarity));
            }
        }
        for list in out.iter_mut().chain(incoming.iter_mut()) {
            list.sort_by(|a, b| {
                arguments[a.0]
                    .id
                    .cmp(&arguments[b.0].id)
                    .then(a.1.cmp(&b.1))
            });
        }

        let adjacency = Adjacency { out, incoming };
        let acyclic = compute_acyclic(n, &adjacency);
        Qbaf { meta, arguments, edges: kept, index, adjacency, acyclic, warnings }
    }

    pub fn meta(&self) -> &QbafMeta {
        &self.meta
    }

    pub fn arguments(&self) -> &[Argument] {
        &self.arguments
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Warnings recorded while ingesting (currently: collapsed duplicates).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn argument(&self, id: &ArgumentId) -> Option<&Argument> {
        self.index.get(id).map(|&i| &self.arguments[i])
    }

    pub fn contains(&self, id: &ArgumentId) -> bool {
        self.index.contains_key(id)
    }

    pub fn proposals(&self) -> impl Iterator<Item = &Argument> {
        self.arguments.iter().filter(|a| a.kind == ArgumentKind::Proposal)
    }

    pub fn speech_arguments(&self) -> impl Iterator<Item = &Argument> {
        self.arguments.iter().filter(|a| a.kind == ArgumentKind::Speech)
    }

    /// True when the edge relation has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    fn index_of(&self, id: &ArgumentId) -> Result<usize, GraphError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownArgument(id.clone()))
    }

    pub(crate) fn argument_index(&self, id: &ArgumentId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub(crate) fn argument_at(&self, i: usize) -> &Argument {
        &self.arguments[i]
    }

    pub(crate) fn outgoing(&self, i: usize) -> &[(usize, Polarity)] {
        &self.adjacency.out[i]
    }

    pub(crate) fn incoming(&self, i: usize) -> &[(usize, Polarity)] {
        &self.adjacency.incoming[i]
    }

    /// Direct attackers and supporters of an argument.
    pub fn direct_relations(
        &self,
        id: &ArgumentId,
    ) -> Result<(BTreeSet<ArgumentId>, BTreeSet<ArgumentId>), GraphError> {
        let i = self.index_of(id)?;
        let mut attackers = BTreeSet::new();
        let mut supporters = BTreeSet::new();
        for &(src, pol) in &self.adjacency.incoming[i] {
            let id = self.arguments[src].id.clone();
            match pol {
                Polarity::Attack => attackers.insert(id),
                Polarity::Support => supporters.insert(id),
            };
        }
        Ok((attackers, supporters))
    }

    /// All simple directed paths from `from` to `to`.
    ///
    /// Paths have at least one edge and repeat no node; when `from == to` the
    /// result is the set of cycles through that argument (only the endpoints
    /// coincide).  Enumeration order is deterministic.  The number of simple
    /// paths can grow exponentially in dense cyclic graphs; the graphs this
    /// crate handles keep it small.
    pub fn enumerate_paths(&self, from: &ArgumentId, to: &ArgumentId) -> Result<Vec<Path>, GraphError> {
        let f = self.index_of(from)?;
        let t = self.index_of(to)?;
        let mut search = PathSearch {
            qbaf: self,
            target: t,
            on_path: vec![false; self.arguments.len()],
            trail: Vec::new(),
            found: Vec::new(),
        };
        search.on_path[f] = true;
        search.walk(f);
        Ok(search.found)
    }

    /// Arguments with a directed path to `id`, split by attack parity.
    ///
    /// Pro collects sources of paths with an even number of attack edges, con
    /// those with odd parity; an argument may sit in both.  The target itself
    /// appears only when it lies on a cycle reaching itself.
    pub fn pro_con(&self, id: &ArgumentId) -> Result<ProCon, GraphError> {
        let t = self.index_of(id)?;
        let n = self.arguments.len();
        let mut even = vec![false; n];
        let mut odd = vec![false; n];

        if self.acyclic {
            // Walks cannot repeat nodes in an acyclic graph, so parity
            // reachability over (argument, parity) states is exact.
            let mut queue = VecDeque::new();
            for &(src, pol) in &self.adjacency.incoming[t] {
                queue.push_back((src, parity_of(pol)));
            }
            let mut seen = vec![[false; 2]; n];
            while let Some((u, p)) = queue.pop_front() {
                if seen[u][p] {
                    continue;
                }
                seen[u][p] = true;
                if p == 0 {
                    even[u] = true;
                } else {
                    odd[u] = true;
                }
                for &(src, pol) in &self.adjacency.incoming[u] {
                    queue.push_back((src, p ^ parity_of(pol)));
                }
            }
        } else {
            // Cyclic graphs need the simple-path constraint enforced
            // explicitly, so enumerate reverse simple paths from the target,
            // stopping early once every reachable (argument, parity) state
            // has been seen.
            let reachable = self.backward_reachable(t);
            let slots = 2 * reachable.iter().filter(|&&r| r).count();
            let mut search = ParitySearch {
                qbaf: self,
                start: t,
                on_path: vec![false; n],
                even: &mut even,
                odd: &mut odd,
                found: 0,
                slots,
            };
            search.on_path[t] = true;
            search.walk(t, 0);
        }

        let mut result = ProCon::default();
        for i in 0..n {
            if even[i] {
                result.pro.insert(self.arguments[i].id.clone());
            }
            if odd[i] {
                result.con.insert(self.arguments[i].id.clone());
            }
        }
        Ok(result)
    }

    /// Nodes that can reach `t`, including `t` itself only via a cycle.
    fn backward_reachable(&self, t: usize) -> Vec<bool> {
        let n = self.arguments.len();
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> =
            self.adjacency.incoming[t].iter().map(|&(s, _)| s).collect();
        while let Some(u) = queue.pop_front() {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            for &(s, _) in &self.adjacency.incoming[u] {
                queue.push_back(s);
            }
        }
        seen
    }

    /// Copy of the graph with every speech argument's base score replaced.
    pub fn with_speech_base(&self, base: f64) -> Qbaf {
        let arguments = self
            .arguments
            .iter()
            .map(|a| {
                let mut a = a.clone();
                if a.kind == ArgumentKind::Speech {
                    a.base_score = base;
                }
                a
            })
            .collect();
        Qbaf::new(self.meta.clone(), arguments, self.edges.clone())
    }

    /// Structural validation; reports violations without repairing anything.
    ///
    /// With `enforce_temporal` set, original-debate graphs must point every
    /// speech-to-speech edge from a later segment to an earlier one (both
    /// orders present and strictly decreasing along the edge).  The check is
    /// idempotent and side-effect free.
    pub fn validate(&self, enforce_temporal: bool) -> ValidationReport {
        let mut violations = Vec::new();

        let mut id_counts: BTreeMap<&ArgumentId, usize> = BTreeMap::new();
        for arg in &self.arguments {
            *id_counts.entry(&arg.id).or_insert(0) += 1;
        }
        for (id, count) in &id_counts {
            if count > &1 {
                violations.push(Violation {
                    code: ViolationCode::DuplicateId,
                    subject: id.to_string(),
                    message: format!("argument id `{id}` declared {count} times"),
                });
            }
        }

        for arg in &self.arguments {
            if arg.id.as_str().is_empty() {
                violations.push(Violation {
                    code: ViolationCode::EmptyId,
                    subject: String::new(),
                    message: "argument with empty id".to_string(),
                });
            }
            if !(0.0..=1.0).contains(&arg.base_score) {
                violations.push(Violation {
                    code: ViolationCode::BaseScoreOutOfRange,
                    subject: arg.id.to_string(),
                    message: format!(
                        "base score {} of `{}` outside [0, 1]",
                        arg.base_score, arg.id
                    ),
                });
            }
            if arg.kind == ArgumentKind::Proposal {
                if arg.id.provision_index().is_none() {
                    violations.push(Violation {
                        code: ViolationCode::InvalidProvisionId,
                        subject: arg.id.to_string(),
                        message: format!(
                            "proposal id `{}` does not encode a provision index (expected `p:<n>`, n >= 1)",
                            arg.id
                        ),
                    });
                }
                if arg.base_score != PROPOSAL_BASE_SCORE {
                    violations.push(Violation {
                        code: ViolationCode::ProposalBaseScore,
                        subject: arg.id.to_string(),
                        message: format!(
                            "proposal `{}` has base score {}, expected {}",
                            arg.id, arg.base_score, PROPOSAL_BASE_SCORE
                        ),
                    });
                }
            }
        }

        let mut polarities: BTreeMap<(&ArgumentId, &ArgumentId), BTreeSet<Polarity>> =
            BTreeMap::new();
        for edge in &self.edges {
            let source = self.argument(&edge.source);
            let target = self.argument(&edge.target);
            if source.is_none() || target.is_none() {
                let missing = if source.is_none() { &edge.source } else { &edge.target };
                violations.push(Violation {
                    code: ViolationCode::DanglingEdge,
                    subject: format!("{} -> {}", edge.source, edge.target),
                    message: format!(
                        "edge {} -> {} references unknown argument `{missing}`",
                        edge.source, edge.target
                    ),
                });
                continue;
            }
            if edge.source == edge.target {
                violations.push(Violation {
                    code: ViolationCode::SelfEdge,
                    subject: edge.source.to_string(),
                    message: format!("argument `{}` relates to itself", edge.source),
                });
            }
            if source.map(|a| a.kind) == Some(ArgumentKind::Proposal) {
                violations.push(Violation {
                    code: ViolationCode::EdgeFromProposal,
                    subject: format!("{} -> {}", edge.source, edge.target),
                    message: format!(
                        "proposal `{}` has an outgoing edge; only speech arguments attack or support",
                        edge.source
                    ),
                });
            }
            polarities
                .entry((&edge.source, &edge.target))
                .or_default()
                .insert(edge.polarity);
            if enforce_temporal && self.meta.source == SourceKind::Original {
                if let (Some(s), Some(t)) = (source, target) {
                    if s.kind == ArgumentKind::Speech && t.kind == ArgumentKind::Speech {
                        if let (Some(so), Some(to)) = (s.order, t.order) {
                            if so <= to {
                                violations.push(Violation {
                                    code: ViolationCode::TemporalOrder,
                                    subject: format!("{} -> {}", edge.source, edge.target),
                                    message: format!(
                                        "edge {} -> {} points forward in time (order {} -> {}); original debates only relate later speech to earlier speech",
                                        edge.source, edge.target, so, to
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        for ((source, target), pols) in &polarities {
            if pols.len() > 1 {
                violations.push(Violation {
                    code: ViolationCode::AttackSupportOverlap,
                    subject: format!("{source} -> {target}"),
                    message: format!(
                        "pair {source} -> {target} is both an attack and a support; the relations must be disjoint"
                    ),
                });
            }
        }

        if self.proposals().next().is_none() {
            violations.push(Violation {
                code: ViolationCode::MissingProposal,
                subject: self.meta.debate_id.clone(),
                message: "graph declares no proposal argument".to_string(),
            });
        }

        ValidationReport { violations }
    }

    /// Graphviz rendering of the graph structure (attacks solid, supports
    /// dashed), handy for eyeballing small graphs.
    pub fn to_dot(&self) -> String {
        let mut dot = String::from("digraph qbaf {\n");
        for arg in &self.arguments {
            let shape = match arg.kind {
                ArgumentKind::Proposal => "box",
                ArgumentKind::Speech => "ellipse",
            };
            dot.push_str(&format!(
                "  \"{}\" [shape={shape} label=\"{}\\n{:.2}\"];\n",
                arg.id, arg.id, arg.base_score
            ));
        }
        for edge in &self.edges {
            let style = match edge.polarity {
                Polarity::Attack => "solid color=red",
                Polarity::Support => "dashed color=darkgreen",
            };
            dot.push_str(&format!(
                "  \"{}\" -> \"{}\" [style={style}];\n",
                edge.source, edge.target
            ));
        }
        dot.push_str("}\n");
        dot
    }
}

fn parity_of(polarity: Polarity) -> usize {
    match polarity {
        Polarity::Attack => 1,
        Polarity::Support => 0,
    }
}

fn compute_acyclic(n: usize, adjacency: &Adjacency) -> bool {
    let mut indegree = vec![0usize; n];
    for out in &adjacency.out {
        for &(t, _) in out {
            indegree[t] += 1;
        }
    }
    let mut queue: VecDeque<usize> =
        (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut seen = 0usize;
    while let Some(u) = queue.pop_front() {
        seen += 1;
        for &(t, _) in &adjacency.out[u] {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                queue.push_back(t);
            }
        }
    }
    seen == n
}

/// Depth-first enumeration of simple paths toward a fixed target.
struct PathSearch<'a> {
    qbaf: &'a Qbaf,
    target: usize,
    on_path: Vec<bool>,
    trail: Vec<Edge>,
    found: Vec<Path>,
}

impl PathSearch<'_> {
    fn walk(&mut self, u: usize) {
        for &(v, pol) in self.qbaf.outgoing(u) {
            let edge = Edge {
                source: self.qbaf.argument_at(u).id.clone(),
                target: self.qbaf.argument_at(v).id.clone(),
                polarity: pol,
            };
            if v == self.target {
                let mut edges = self.trail.clone();
                edges.push(edge);
                self.found.push(Path::new(edges));
            } else if !self.on_path[v] {
                self.trail.push(edge);
                self.on_path[v] = true;
                self.walk(v);
                self.on_path[v] = false;
                self.trail.pop();
            }
        }
    }
}

/// Reverse depth-first enumeration of simple paths into a fixed target,
/// recording the attack parity of every prefix.
struct ParitySearch<'a> {
    qbaf: &'a Qbaf,
    start: usize,
    on_path: Vec<bool>,
    even: &'a mut Vec<bool>,
    odd: &'a mut Vec<bool>,
    found: usize,
    slots: usize,
}

impl ParitySearch<'_> {
    fn record(&mut self, node: usize, parity: usize) {
        let slot = if parity == 0 { &mut self.even[node] } else { &mut self.odd[node] };
        if !*slot {
            *slot = true;
            self.found += 1;
        }
    }

    fn walk(&mut self, u: usize, parity: usize) {
        if self.found >= self.slots {
            return;
        }
        for &(w, pol) in self.qbaf.incoming(u) {
            let p = parity ^ parity_of(pol);
            if w == self.start {
                // A cycle back to the target: the target reaches itself.
                self.record(w, p);
            } else if !self.on_path[w] {
                self.record(w, p);
                self.on_path[w] = true;
                self.walk(w, p);
                self.on_path[w] = false;
            }
            if self.found >= self.slots {
                return;
            }
        }
    }
}

/// Convenience constructor for graphs in tests and extraction.
#[derive(Debug, Clone)]
pub struct QbafBuilder {
    meta: QbafMeta,
    arguments: Vec<Argument>,
    edges: Vec<Edge>,
}

impl QbafBuilder {
    pub fn new(debate_id: impl Into<String>, source: SourceKind) -> Self {
        QbafBuilder {
            meta: QbafMeta { debate_id: debate_id.into(), source },
            arguments: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Add the proposal for a provision index (base score fixed at 0.5).
    pub fn proposal(mut self, index: u32, text: &str) -> Self {
        self.arguments.push(Argument {
            id: ArgumentId::proposal(index),
            kind: ArgumentKind::Proposal,
            text: text.to_string(),
            base_score: PROPOSAL_BASE_SCORE,
            order: None,
        });
        self
    }

    /// Add a speech argument without text or order.
    pub fn speech(self, id: &str, base_score: f64) -> Self {
        self.speech_full(id, "", base_score, None)
    }

    /// Add a speech argument with a debate position.
    pub fn speech_ordered(self, id: &str, base_score: f64, order: u64) -> Self {
        self.speech_full(id, "", base_score, Some(order))
    }

    pub fn speech_full(mut self, id: &str, text: &str, base_score: f64, order: Option<u64>) -> Self {
        self.arguments.push(Argument {
            id: ArgumentId::new(id),
            kind: ArgumentKind::Speech,
            text: text.to_string(),
            base_score,
            order,
        });
        self
    }

    /// Add a prebuilt argument verbatim (handy for invalid fixtures).
    pub fn argument(mut self, argument: Argument) -> Self {
        self.arguments.push(argument);
        self
    }

    pub fn attack(self, source: &str, target: &str) -> Self {
        self.edge(source, target, Polarity::Attack)
    }

    pub fn support(self, source: &str, target: &str) -> Self {
        self.edge(source, target, Polarity::Support)
    }

    pub fn edge(mut self, source: &str, target: &str, polarity: Polarity) -> Self {
        self.edges.push(Edge::new(source, target, polarity));
        self
    }

    pub fn build(self) -> Qbaf {
        Qbaf::new(self.meta, self.arguments, self.edges)
    }
}
