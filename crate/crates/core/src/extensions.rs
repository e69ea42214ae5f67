//! Attack-only view of a debate graph and its acceptability semantics.
//!
//! Support edges do not survive into classical argumentation semantics
//! directly; instead the graph is compiled into a derived attack relation:
//!
//! * every attack edge attacks its target directly;
//! * a *supported attack* follows a chain of supports and ends with one
//!   attack (the chain's origin attacks the final target);
//! * an *indirect attack* starts with one attack and continues through a
//!   chain of supports (the origin attacks the chain's end).
//!
//! All chains are simple paths of at least two edges — no intermediate node
//! repeats, though origin and end may coincide, which yields a self-attack.
//! Chains containing two or more attack edges confer nothing.
//!
//! On the derived relation this module computes preferred extensions
//! (maximal admissible sets) and credulous acceptance.  Disconnected
//! components are solved independently and recombined; acyclic components
//! have a unique preferred extension (their grounded labelling) and cost
//! only a linear pass, so the exponential labelling search runs solely on
//! cyclic components, guarded by a wall-clock budget.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{ArgumentId, GraphError, Path, Polarity, Qbaf};

#[derive(Debug, Error)]
pub enum ExtensionError {
    #[error("unknown argument `{0}`")]
    UnknownArgument(ArgumentId),
    #[error("extension search exceeded its time budget")]
    BudgetExceeded,
    #[error("framework has {size} arguments, exhaustive enumeration is capped at {limit}")]
    TooLarge { size: usize, limit: usize },
}

/// A set of jointly acceptable arguments.
pub type Extension = BTreeSet<ArgumentId>;

/// Wall-clock limit for extension search; `None` means unlimited.
///
/// The budget is charged against the labelling search on cyclic components
/// only — acyclic frameworks never trip it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { time_limit: Some(Duration::from_secs(30)) }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget { time_limit: None }
    }

    pub fn seconds(secs: u64) -> Self {
        SearchBudget { time_limit: Some(Duration::from_secs(secs)) }
    }

    fn deadline(&self) -> Option<Instant> {
        self.time_limit.map(|limit| Instant::now() + limit)
    }
}

fn check_deadline(deadline: Option<Instant>) -> Result<(), ExtensionError> {
    match deadline {
        Some(at) if Instant::now() >= at => Err(ExtensionError::BudgetExceeded),
        _ => Ok(()),
    }
}

/// An abstract argumentation framework: arguments plus an attack relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedAf {
    nodes: Vec<ArgumentId>,
    index: HashMap<ArgumentId, usize>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
    pairs: BTreeSet<(usize, usize)>,
}

impl DerivedAf {
    /// Build a framework from an explicit node list and attack pairs.
    ///
    /// Nodes are deduplicated and stored sorted; attacks whose endpoints are
    /// not listed as nodes are rejected.
    pub fn from_relation(
        nodes: impl IntoIterator<Item = impl Into<ArgumentId>>,
        attacks: impl IntoIterator<Item = (impl Into<ArgumentId>, impl Into<ArgumentId>)>,
    ) -> Result<DerivedAf, ExtensionError> {
        let node_set: BTreeSet<ArgumentId> = nodes.into_iter().map(Into::into).collect();
        let nodes: Vec<ArgumentId> = node_set.into_iter().collect();
        let index: HashMap<ArgumentId, usize> =
            nodes.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        let mut pairs = BTreeSet::new();
        for (source, target) in attacks {
            let source = source.into();
            let target = target.into();
            let s = *index.get(&source).ok_or(ExtensionError::UnknownArgument(source))?;
            let t = *index.get(&target).ok_or(ExtensionError::UnknownArgument(target))?;
            pairs.insert((s, t));
        }
        let mut attackers = vec![Vec::new(); nodes.len()];
        let mut targets = vec![Vec::new(); nodes.len()];
        for &(s, t) in &pairs {
            targets[s].push(t);
            attackers[t].push(s);
        }
        Ok(DerivedAf { nodes, index, attackers, targets, pairs })
    }

    pub fn arguments(&self) -> &[ArgumentId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, id: &ArgumentId) -> bool {
        self.index.contains_key(id)
    }

    pub fn attack_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn has_attack(&self, source: &ArgumentId, target: &ArgumentId) -> bool {
        match (self.index.get(source), self.index.get(target)) {
            (Some(&s), Some(&t)) => self.pairs.contains(&(s, t)),
            _ => false,
        }
    }

    /// All attacks as id pairs, sorted.
    pub fn attack_pairs(&self) -> BTreeSet<(ArgumentId, ArgumentId)> {
        self.pairs
            .iter()
            .map(|&(s, t)| (self.nodes[s].clone(), self.nodes[t].clone()))
            .collect()
    }

    /// Render the framework in the `arg(..)./att(..,..).` facts format used
    /// by answer-set argumentation solvers.
    ///
    /// Identifiers that are not bare lowercase atoms are double-quoted so
    /// the output stays parseable as logic-program facts.
    pub fn to_aspartix(&self) -> String {
        fn atom(id: &ArgumentId) -> String {
            let text = id.as_str();
            let bare = text
                .chars()
                .next()
                .map(|c| c.is_ascii_lowercase())
                .unwrap_or(false)
                && text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if bare {
                text.to_string()
            } else {
                format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
            }
        }

        let mut out = String::new();
        for id in &self.nodes {
            out.push_str(&format!("arg({}).\n", atom(id)));
        }
        for &(s, t) in &self.pairs {
            out.push_str(&format!("att({},{}).\n", atom(&self.nodes[s]), atom(&self.nodes[t])));
        }
        out
    }

    fn index_of(&self, id: &ArgumentId) -> Result<usize, ExtensionError> {
        self.index.get(id).copied().ok_or_else(|| ExtensionError::UnknownArgument(id.clone()))
    }

    /// Connected components of the undirected attack graph, each sorted.
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut component = vec![usize::MAX; n];
        let mut order = Vec::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let label = order.len();
            let mut queue = vec![start];
            component[start] = label;
            let mut members = vec![start];
            while let Some(u) = queue.pop() {
                for &v in self.targets[u].iter().chain(self.attackers[u].iter()) {
                    if component[v] == usize::MAX {
                        component[v] = label;
                        queue.push(v);
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            order.push(members);
        }
        order
    }

    /// Whether the attack subgraph induced by `members` contains a directed
    /// cycle (a self-attack counts).
    fn component_is_cyclic(&self, members: &[usize]) -> bool {
        let inside: HashSet<usize> = members.iter().copied().collect();
        let mut indegree: HashMap<usize, usize> = members.iter().map(|&m| (m, 0)).collect();
        for &m in members {
            for &t in &self.targets[m] {
                if inside.contains(&t) {
                    *indegree.get_mut(&t).unwrap() += 1;
                }
            }
        }
        let mut queue: Vec<usize> =
            members.iter().copied().filter(|m| indegree[m] == 0).collect();
        let mut removed = 0;
        while let Some(u) = queue.pop() {
            removed += 1;
            for &t in &self.targets[u] {
                if let Some(d) = indegree.get_mut(&t) {
                    *d -= 1;
                    if *d == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        removed != members.len()
    }

    /// Grounded labelling of a component: the least fixed point of
    /// "accept when all attackers are defeated".  On an acyclic component
    /// every node ends up accepted or defeated and the accepted set is the
    /// component's unique preferred extension.
    fn grounded_members(&self, members: &[usize]) -> Vec<usize> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Open,
            In,
            Out,
        }
        let mut marks: HashMap<usize, Mark> = members.iter().map(|&m| (m, Mark::Open)).collect();
        loop {
            let mut changed = false;
            for &m in members {
                if marks[&m] != Mark::Open {
                    continue;
                }
                let all_out = self.attackers[m]
                    .iter()
                    .all(|z| matches!(marks.get(z), Some(Mark::Out) | None));
                if all_out {
                    marks.insert(m, Mark::In);
                    changed = true;
                    for &t in &self.targets[m] {
                        if marks.get(&t) == Some(&Mark::Open) {
                            marks.insert(t, Mark::Out);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        members.iter().copied().filter(|m| marks[m] == Mark::In).collect()
    }

    fn extension_from(&self, indices: &[usize]) -> Extension {
        indices.iter().map(|&i| self.nodes[i].clone()).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Label {
    /// Not yet decided.
    Blank,
    /// Member of the candidate set.
    In,
    /// Defeated: has an accepted attacker.
    Out,
    /// Attacks the candidate set and is not yet defeated — the branch is
    /// admissible only if some attacker of this node becomes accepted.
    MustOut,
    /// Decided out of the candidate set by branching, not (yet) defeated.
    Excluded,
}

/// Backtracking enumeration of admissible sets on one cyclic component.
struct Labelling<'a> {
    af: &'a DerivedAf,
    members: &'a [usize],
    labels: HashMap<usize, Label>,
    deadline: Option<Instant>,
    /// Admissible candidate sets found so far, as sorted index vectors.
    found: BTreeSet<Vec<usize>>,
    /// When set, stop at the first admissible set (used for credulous
    /// queries, where the node in question is forced in beforehand).
    stop_at_first: bool,
    hit: bool,
}

impl<'a> Labelling<'a> {
    fn new(af: &'a DerivedAf, members: &'a [usize], deadline: Option<Instant>) -> Self {
        Labelling {
            af,
            members,
            labels: members.iter().map(|&m| (m, Label::Blank)).collect(),
            deadline,
            found: BTreeSet::new(),
            stop_at_first: false,
            hit: false,
        }
    }

    /// Accept `x`: defeat its targets, demand defeat of its attackers.
    /// Returns false when acceptance is inconsistent (self-attacker, or a
    /// conflict with an already accepted node).
    fn set_in(&mut self, x: usize) -> bool {
        if self.af.targets[x].contains(&x) {
            return false;
        }
        if self.af.attackers[x].iter().any(|z| self.labels.get(z) == Some(&Label::In)) {
            return false;
        }
        if self.af.targets[x].iter().any(|t| self.labels.get(t) == Some(&Label::In)) {
            return false;
        }
        self.labels.insert(x, Label::In);
        for &t in &self.af.targets[x] {
            if matches!(
                self.labels.get(&t),
                Some(Label::Blank | Label::Excluded | Label::MustOut)
            ) {
                self.labels.insert(t, Label::Out);
            }
        }
        for &z in &self.af.attackers[x] {
            if matches!(self.labels.get(&z), Some(Label::Blank | Label::Excluded)) {
                self.labels.insert(z, Label::MustOut);
            }
        }
        true
    }

    /// A branch stays viable only while every undefeated attacker of the
    /// candidate set can still be defeated by some undecided node.
    fn viable(&self) -> bool {
        self.members.iter().all(|&m| {
            self.labels[&m] != Label::MustOut
                || self.af.attackers[m]
                    .iter()
                    .any(|z| self.labels.get(z) == Some(&Label::Blank))
        })
    }

    /// Pick the undecided node with the most incident attacks.
    fn branch_node(&self) -> Option<usize> {
        self.members
            .iter()
            .copied()
            .filter(|m| self.labels[m] == Label::Blank)
            .max_by_key(|&m| {
                (self.af.attackers[m].len() + self.af.targets[m].len(), std::cmp::Reverse(m))
            })
    }

    fn search(&mut self) -> Result<(), ExtensionError> {
        check_deadline(self.deadline)?;
        if self.hit {
            return Ok(());
        }
        let Some(x) = self.branch_node() else {
            let has_must_out =
                self.members.iter().any(|m| self.labels[m] == Label::MustOut);
            if !has_must_out {
                let set: Vec<usize> = self
                    .members
                    .iter()
                    .copied()
                    .filter(|m| self.labels[m] == Label::In)
                    .collect();
                self.found.insert(set);
                if self.stop_at_first {
                    self.hit = true;
                }
            }
            return Ok(());
        };

        let saved = self.labels.clone();
        if self.set_in(x) && self.viable() {
            self.search()?;
        }
        self.labels = saved;
        if self.hit {
            return Ok(());
        }

        let saved = self.labels.clone();
        self.labels.insert(x, Label::Excluded);
        if self.viable() {
            self.search()?;
        }
        self.labels = saved;
        Ok(())
    }
}

/// Keep only the sets not strictly contained in another.
fn maximal_sets(sets: BTreeSet<Vec<usize>>) -> Vec<Vec<usize>> {
    let all: Vec<Vec<usize>> = sets.into_iter().collect();
    let as_sets: Vec<BTreeSet<usize>> =
        all.iter().map(|s| s.iter().copied().collect()).collect();
    let mut keep = Vec::new();
    for (i, set) in as_sets.iter().enumerate() {
        let dominated = as_sets
            .iter()
            .enumerate()
            .any(|(j, other)| j != i && set.is_subset(other) && set != other);
        if !dominated {
            keep.push(all[i].clone());
        }
    }
    keep
}

/// All preferred extensions (maximal admissible sets), sorted.
///
/// Components of the attack graph are solved independently and their
/// extensions combined; the wall-clock budget applies to the labelling
/// search on cyclic components and surfaces as `BudgetExceeded`.
pub fn preferred_extensions(
    af: &DerivedAf,
    budget: &SearchBudget,
) -> Result<Vec<Extension>, ExtensionError> {
    let deadline = budget.deadline();
    let mut per_component: Vec<Vec<Vec<usize>>> = Vec::new();
    for members in af.components() {
        if af.component_is_cyclic(&members) {
            let mut search = Labelling::new(af, &members, deadline);
            search.search()?;
            per_component.push(maximal_sets(search.found));
        } else {
            per_component.push(vec![af.grounded_members(&members)]);
        }
    }

    let mut combined: Vec<Vec<usize>> = vec![Vec::new()];
    for options in per_component {
        let mut next = Vec::with_capacity(combined.len() * options.len());
        for existing in &combined {
            for option in &options {
                let mut merged = existing.clone();
                merged.extend_from_slice(option);
                next.push(merged);
            }
        }
        combined = next;
    }

    let mut extensions: Vec<Extension> =
        combined.iter().map(|s| af.extension_from(s)).collect();
    extensions.sort();
    Ok(extensions)
}

/// Whether `id` belongs to at least one preferred extension.
///
/// Equivalent to membership in some admissible set, so the search stops at
/// the first admissible set containing `id` instead of enumerating
/// everything.  On an acyclic component this reduces to membership in the
/// component's grounded labelling.
pub fn credulously_accepted(
    af: &DerivedAf,
    id: &ArgumentId,
    budget: &SearchBudget,
) -> Result<bool, ExtensionError> {
    let x = af.index_of(id)?;
    let deadline = budget.deadline();
    let members = af
        .components()
        .into_iter()
        .find(|m| m.contains(&x))
        .expect("every node belongs to a component");
    if !af.component_is_cyclic(&members) {
        return Ok(af.grounded_members(&members).contains(&x));
    }
    let mut search = Labelling::new(af, &members, deadline);
    search.stop_at_first = true;
    if !(search.set_in(x) && search.viable()) {
        return Ok(false);
    }
    search.search()?;
    Ok(search.hit)
}

const BRUTE_FORCE_LIMIT: usize = 20;

/// Preferred extensions by exhaustive subset enumeration.
///
/// Intended as an oracle for cross-checking the labelling search; capped at
/// 20 arguments.
pub fn brute_force_preferred(af: &DerivedAf) -> Result<Vec<Extension>, ExtensionError> {
    let n = af.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(ExtensionError::TooLarge { size: n, limit: BRUTE_FORCE_LIMIT });
    }
    let mut attacks_mask = vec![0u32; n];
    for &(s, t) in &af.pairs {
        attacks_mask[s] |= 1 << t;
    }
    let mut admissible: Vec<u32> = Vec::new();
    'mask: for mask in 0u32..(1u32 << n) {
        // Conflict-free: nothing in the set attacks anything in the set.
        for i in 0..n {
            if mask & (1 << i) != 0 && attacks_mask[i] & mask != 0 {
                continue 'mask;
            }
        }
        // Admissible: every attacker of the set is attacked by the set.
        for i in 0..n {
            if mask & (1 << i) == 0 {
                continue;
            }
            for &z in &af.attackers[i] {
                let defended = (0..n)
                    .any(|w| mask & (1 << w) != 0 && attacks_mask[w] & (1 << z) != 0);
                if !defended {
                    continue 'mask;
                }
            }
        }
        admissible.push(mask);
    }
    let mut preferred: Vec<Extension> = admissible
        .iter()
        .filter(|&&mask| {
            !admissible.iter().any(|&other| other != mask && other & mask == mask)
        })
        .map(|&mask| {
            (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| af.nodes[i].clone()).collect()
        })
        .collect();
    preferred.sort();
    Ok(preferred)
}

/// Reachability along support edges from `start`, never entering `avoid`.
///
/// `adjacency` selects the direction: the graph's outgoing support lists for
/// forward closure, incoming for backward.  The result includes `start`.
fn support_closure(start: usize, avoid: usize, adjacency: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = vec![false; adjacency.len()];
    if start == avoid {
        return seen;
    }
    seen[start] = true;
    let mut queue = vec![start];
    while let Some(u) = queue.pop() {
        for &v in &adjacency[u] {
            if v != avoid && !seen[v] {
                seen[v] = true;
                queue.push(v);
            }
        }
    }
    seen
}

/// Compile a debate graph into its derived attack framework.
///
/// Includes direct, supported, and indirect attacks (see the module
/// documentation).  Every argument of the graph becomes a node, attacked or
/// not.
pub fn compile_derived_af(qbaf: &Qbaf) -> DerivedAf {
    let n = qbaf.arguments().len();
    let mut support_out = vec![Vec::new(); n];
    let mut support_in = vec![Vec::new(); n];
    let mut attack_edges = Vec::new();
    for u in 0..n {
        for &(v, polarity) in qbaf.outgoing(u) {
            match polarity {
                Polarity::Support => {
                    support_out[u].push(v);
                    support_in[v].push(u);
                }
                Polarity::Attack => attack_edges.push((u, v)),
            }
        }
    }

    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    for &(z, b) in &attack_edges {
        pairs.insert((z, b));
        if z == b {
            // A direct self-attack admits no support chain around it: any
            // such chain would revisit the endpoint mid-path.
            continue;
        }

        // Supported attacks on b: origins that reach the attacker z through
        // supports avoiding b itself.
        let reach_z = support_closure(z, b, &support_in);
        for a in 0..n {
            if a != z && reach_z[a] {
                pairs.insert((a, b));
            }
        }
        // The chain may start at b and loop back: b -S-> v -S->..-> z -A-> b.
        if support_out[b].iter().any(|&v| reach_z[v]) {
            pairs.insert((b, b));
        }

        // Indirect attacks from z: supports carried forward from the direct
        // target b, avoiding z itself.
        let from_b = support_closure(b, z, &support_out);
        for t in 0..n {
            if t != b && from_b[t] {
                pairs.insert((z, t));
            }
        }
        // The chain may come back around: z -A-> b -S->..-> w -S-> z.
        if support_in[z].iter().any(|&w| from_b[w]) {
            pairs.insert((z, z));
        }
    }

    let nodes: Vec<ArgumentId> = qbaf.arguments().iter().map(|a| a.id.clone()).collect();
    let attacks: Vec<(ArgumentId, ArgumentId)> = pairs
        .into_iter()
        .map(|(s, t)| (qbaf.argument_at(s).id.clone(), qbaf.argument_at(t).id.clone()))
        .collect();
    DerivedAf::from_relation(nodes, attacks)
        .expect("attack endpoints come from the graph's own arguments")
}

fn path_is_supported_attack(path: &Path) -> bool {
    let edges = path.edges();
    edges.len() >= 2
        && edges[edges.len() - 1].polarity == Polarity::Attack
        && edges[..edges.len() - 1].iter().all(|e| e.polarity == Polarity::Support)
}

fn path_is_indirect_attack(path: &Path) -> bool {
    let edges = path.edges();
    edges.len() >= 2
        && edges[0].polarity == Polarity::Attack
        && edges[1..].iter().all(|e| e.polarity == Polarity::Support)
}

/// Whether a support chain ending in a single attack runs from `source` to
/// `target`.  Path-enumeration based; intended for cross-checking
/// [`compile_derived_af`] and for small graphs.
pub fn supported_attack_exists(
    qbaf: &Qbaf,
    source: &ArgumentId,
    target: &ArgumentId,
) -> Result<bool, GraphError> {
    Ok(qbaf.enumerate_paths(source, target)?.iter().any(path_is_supported_attack))
}

/// Whether a single attack followed by a support chain runs from `source`
/// to `target`.  Path-enumeration based, like [`supported_attack_exists`].
pub fn indirect_attack_exists(
    qbaf: &Qbaf,
    source: &ArgumentId,
    target: &ArgumentId,
) -> Result<bool, GraphError> {
    Ok(qbaf.enumerate_paths(source, target)?.iter().any(path_is_indirect_attack))
}

/// Whether a support chain of at least two edges runs from `source` to
/// `target`.
pub fn indirect_support_exists(
    qbaf: &Qbaf,
    source: &ArgumentId,
    target: &ArgumentId,
) -> Result<bool, GraphError> {
    Ok(qbaf.enumerate_paths(source, target)?.iter().any(|p| {
        p.len() >= 2 && p.edges().iter().all(|e| e.polarity == Polarity::Support)
    }))
}

/// The derived attacks of `qbaf` computed pair by pair from explicit path
/// enumeration — the slow oracle that [`compile_derived_af`] must agree
/// with.
pub fn derived_attacks_by_paths(qbaf: &Qbaf) -> BTreeSet<(ArgumentId, ArgumentId)> {
    let ids: Vec<ArgumentId> = qbaf.arguments().iter().map(|a| a.id.clone()).collect();
    let direct: HashSet<(ArgumentId, ArgumentId)> = qbaf
        .edges()
        .iter()
        .filter(|e| e.polarity == Polarity::Attack)
        .map(|e| (e.source.clone(), e.target.clone()))
        .collect();
    let mut pairs = BTreeSet::new();
    for a in &ids {
        for b in &ids {
            let attacks = direct.contains(&(a.clone(), b.clone()))
                || supported_attack_exists(qbaf, a, b).expect("ids come from the graph")
                || indirect_attack_exists(qbaf, a, b).expect("ids come from the graph");
            if attacks {
                pairs.insert((a.clone(), b.clone()));
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{QbafBuilder, SourceKind};

    fn af(nodes: &[&str], attacks: &[(&str, &str)]) -> DerivedAf {
        DerivedAf::from_relation(nodes.iter().copied(), attacks.iter().copied()).unwrap()
    }

    fn ids(ext: &Extension) -> Vec<&str> {
        ext.iter().map(|id| id.as_str()).collect()
    }

    fn pair_set(af: &DerivedAf) -> BTreeSet<(String, String)> {
        af.attack_pairs()
            .into_iter()
            .map(|(s, t)| (s.as_str().to_string(), t.as_str().to_string()))
            .collect()
    }

    fn expect_pairs(pairs: &[(&str, &str)]) -> BTreeSet<(String, String)> {
        pairs.iter().map(|&(s, t)| (s.to_string(), t.to_string())).collect()
    }

    #[test]
    fn from_relation_rejects_unknown_endpoints() {
        let err = DerivedAf::from_relation(["a"], [("a", "ghost")]).unwrap_err();
        assert!(matches!(err, ExtensionError::UnknownArgument(_)));
    }

    #[test]
    fn direct_attacks_survive_compilation() {
        let q = QbafBuilder::new("d", SourceKind::Summary)
            .speech("a", 0.2)
            .speech("b", 0.2)
            .proposal(1, "")
            .attack("a", "b")
            .build();
        assert_eq!(pair_set(&compile_derived_af(&q)), expect_pairs(&[("a", "b")]));
    }

    #[test]
    fn support_chain_into_attack_confers_the_attack() {
        // a -S-> b -S-> c -A-> d: both a and b inherit the attack on d.
        let q = QbafBuilder::new("d", SourceKind::Summary)
            .speech("a", 0.2)
            .speech("b", 0.2)
            .speech("c", 0.2)
            .speech("x", 0.2)
            .proposal(1, "")
            .support("a", "b")
            .support("b", "c")
            .attack("c", "x")
            .build();
        assert_eq!(
            pair_set(&compile_derived_af(&q)),
            expect_pairs(&[("c", "x"), ("b", "x"), ("a", "x")])
        );
    }

    #[test]
    fn attack_into_support_chain_extends_the_attack() {
        // a -A-> b -S-> c: a indirectly attacks c.
        let q = QbafBuilder::new("d", SourceKind::Summary)
            .speech("a", 0.2)
            .speech("b", 0.2)
            .speech("c", 0.2)
            .proposal(1, "")
            .attack("a", "b")
            .support("b", "c")
            .build();
        assert_eq!(
            pair_set(&compile_derived_af(&q)),
            expect_pairs(&[("a", "b"), ("a", "c")])
        );
    }

    #[test]
    fn chained_attacks_confer_nothing() {
        let q = QbafBuilder::new("d", SourceKind::Summary)
            .speech("a", 0.2)
            .speech("b", 0.2)
            .speech("c", 0.2)
            .proposal(1, "")
            .attack("a", "b")
            .attack("b", "c")
            .build();
        assert_eq!(
            pair_set(&compile_derived_af(&q)),
            expect_pairs(&[("a", "b"), ("b", "c")])
        );
    }

    #[test]
    fn chains_may_not_revisit_their_endpoint() {
        // a -S-> b -S-> z -A-> b: the chain from a passes through b, so a
        // gains nothing; but b itself loops around to a self-attack, and z
        // attacks itself via the support back-edge.
        let q = QbafBuilder::new("d", SourceKind::Summary)
            .speech("a", 0.2)
            .speech("b", 0.2)
            .speech("z", 0.2)
            .proposal(1, "")
            .support("a", "b")
            .support("b", "z")
            .attack("z", "b")
            .build();
        let compiled = compile_derived_af(&q);
        assert_eq!(
            pair_set(&compiled),
            expect_pairs(&[("z", "b"), ("b", "b"), ("z", "z")])
        );
        // The per-pair path oracle agrees.
        assert!(!supported_attack_exists(&q, &"a".into(), &"b".into()).unwrap());
        assert!(supported_attack_exists(&q, &"b".into(), &"b".into()).unwrap());
        assert!(indirect_attack_exists(&q, &"z".into(), &"z".into()).unwrap());
        assert_eq!(compiled.attack_pairs(), derived_attacks_by_paths(&q));
    }

    #[test]
    fn indirect_support_requires_two_support_edges() {
        let q = QbafBuilder::new("d", SourceKind::Summary)
            .speech("a", 0.2)
            .speech("b", 0.2)
            .speech("c", 0.2)
            .proposal(1, "")
            .support("a", "b")
            .support("b", "c")
            .build();
        assert!(indirect_support_exists(&q, &"a".into(), &"c".into()).unwrap());
        assert!(!indirect_support_exists(&q, &"a".into(), &"b".into()).unwrap());
        assert!(!indirect_support_exists(&q, &"b".into(), &"a".into()).unwrap());
    }

    #[test]
    fn compilation_matches_path_oracle_on_a_dense_graph() {
        let q = QbafBuilder::new("d", SourceKind::Summary)
            .proposal(1, "")
            .speech("a", 0.2)
            .speech("b", 0.2)
            .speech("c", 0.2)
            .speech("e", 0.2)
            .support("a", "b")
            .attack("b", "c")
            .support("c", "e")
            .attack("e", "a")
            .support("b", "e")
            .attack("c", "p:1")
            .support("e", "p:1")
            .build();
        assert_eq!(compile_derived_af(&q).attack_pairs(), derived_attacks_by_paths(&q));
    }

    #[test]
    fn preferred_of_a_two_step_chain() {
        let framework = af(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let exts = preferred_extensions(&framework, &SearchBudget::default()).unwrap();
        assert_eq!(exts.len(), 1);
        assert_eq!(ids(&exts[0]), ["a", "c"]);
    }

    #[test]
    fn preferred_of_a_mutual_attack() {
        let framework = af(&["a", "b"], &[("a", "b"), ("b", "a")]);
        let exts = preferred_extensions(&framework, &SearchBudget::default()).unwrap();
        assert_eq!(exts.len(), 2);
        assert_eq!(ids(&exts[0]), ["a"]);
        assert_eq!(ids(&exts[1]), ["b"]);
    }

    #[test]
    fn preferred_of_a_self_attacker_is_empty() {
        let framework = af(&["a"], &[("a", "a")]);
        let exts = preferred_extensions(&framework, &SearchBudget::default()).unwrap();
        assert_eq!(exts, vec![Extension::new()]);
    }

    #[test]
    fn preferred_of_an_odd_cycle_is_empty() {
        let framework = af(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        let exts = preferred_extensions(&framework, &SearchBudget::default()).unwrap();
        assert_eq!(exts, vec![Extension::new()]);
    }

    #[test]
    fn unattacked_arguments_join_every_extension() {
        let framework = af(
            &["a", "b", "d", "x", "y"],
            &[("a", "b"), ("b", "a"), ("x", "y")],
        );
        let exts = preferred_extensions(&framework, &SearchBudget::default()).unwrap();
        assert_eq!(exts.len(), 2);
        assert_eq!(ids(&exts[0]), ["a", "d", "x"]);
        assert_eq!(ids(&exts[1]), ["b", "d", "x"]);
    }

    #[test]
    fn labelling_search_agrees_with_brute_force() {
        let frameworks = [
            af(&["a", "b", "c"], &[("a", "b"), ("b", "c")]),
            af(&["a", "b"], &[("a", "b"), ("b", "a")]),
            af(&["a"], &[("a", "a")]),
            af(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]),
            af(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "c")],
            ),
            af(&["a", "b", "c"], &[]),
        ];
        for framework in &frameworks {
            assert_eq!(
                preferred_extensions(framework, &SearchBudget::default()).unwrap(),
                brute_force_preferred(framework).unwrap()
            );
        }
    }

    #[test]
    fn brute_force_refuses_large_frameworks() {
        let names: Vec<String> = (0..21).map(|i| format!("n{i}")).collect();
        let framework =
            DerivedAf::from_relation(names.iter().map(String::as_str), [("n0", "n1")]).unwrap();
        assert!(matches!(
            brute_force_preferred(&framework),
            Err(ExtensionError::TooLarge { size: 21, limit: 20 })
        ));
    }

    #[test]
    fn credulous_acceptance_on_chains_and_cycles() {
        let chain = af(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let budget = SearchBudget::default();
        assert!(credulously_accepted(&chain, &"a".into(), &budget).unwrap());
        assert!(!credulously_accepted(&chain, &"b".into(), &budget).unwrap());
        assert!(credulously_accepted(&chain, &"c".into(), &budget).unwrap());

        let mutual = af(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c")]);
        assert!(credulously_accepted(&mutual, &"a".into(), &budget).unwrap());
        assert!(credulously_accepted(&mutual, &"b".into(), &budget).unwrap());
        assert!(credulously_accepted(&mutual, &"c".into(), &budget).unwrap());

        let looped = af(&["a", "b"], &[("a", "a"), ("a", "b")]);
        assert!(!credulously_accepted(&looped, &"a".into(), &budget).unwrap());
        // b's only attacker is self-defeating but never defeated, so no
        // admissible set contains b.
        assert!(!credulously_accepted(&looped, &"b".into(), &budget).unwrap());

        let err = credulously_accepted(&chain, &"ghost".into(), &budget).unwrap_err();
        assert!(matches!(err, ExtensionError::UnknownArgument(_)));
    }

    #[test]
    fn credulous_acceptance_matches_brute_force_membership() {
        let framework = af(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "d")],
        );
        let budget = SearchBudget::default();
        let all = brute_force_preferred(&framework).unwrap();
        for id in framework.arguments().to_vec() {
            let expected = all.iter().any(|ext| ext.contains(&id));
            assert_eq!(
                credulously_accepted(&framework, &id, &budget).unwrap(),
                expected,
                "disagreement on {id}"
            );
        }
    }

    #[test]
    fn zero_budget_stops_cyclic_search() {
        let framework = af(&["a", "b"], &[("a", "b"), ("b", "a")]);
        let budget = SearchBudget { time_limit: Some(Duration::ZERO) };
        assert!(matches!(
            preferred_extensions(&framework, &budget),
            Err(ExtensionError::BudgetExceeded)
        ));
        assert!(matches!(
            credulously_accepted(&framework, &"a".into(), &budget),
            Err(ExtensionError::BudgetExceeded)
        ));
    }

    #[test]
    fn zero_budget_still_solves_acyclic_frameworks() {
        let framework = af(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let budget = SearchBudget { time_limit: Some(Duration::ZERO) };
        let exts = preferred_extensions(&framework, &budget).unwrap();
        assert_eq!(ids(&exts[0]), ["a", "c"]);
    }

    #[test]
    fn empty_framework_has_the_empty_extension() {
        let framework = af(&[], &[]);
        let exts = preferred_extensions(&framework, &SearchBudget::default()).unwrap();
        assert_eq!(exts, vec![Extension::new()]);
    }

    #[test]
    fn aspartix_rendering_quotes_non_atom_identifiers() {
        let framework = af(&["p:1", "s1"], &[("s1", "p:1")]);
        assert_eq!(
            framework.to_aspartix(),
            "arg(\"p:1\").\narg(s1).\natt(s1,\"p:1\").\n"
        );
    }

    #[test]
    fn attack_queries_answer_on_compiled_frameworks() {
        let framework = af(&["a", "b"], &[("a", "b")]);
        assert!(framework.has_attack(&"a".into(), &"b".into()));
        assert!(!framework.has_attack(&"b".into(), &"a".into()));
        assert!(!framework.has_attack(&"a".into(), &"ghost".into()));
        assert_eq!(framework.attack_count(), 1);
        assert_eq!(framework.len(), 2);
        assert!(framework.contains(&"a".into()));
    }
}
