//! DF-QuAD gradual semantics.
//!
//! Each argument gets a strength in `[0, 1]`: attacker strengths and
//! supporter strengths are folded with the probabilistic sum, and the two
//! aggregates pull the base score down or up symmetrically.  Acyclic graphs
//! are evaluated exactly in topological order; cyclic graphs fall back to a
//! damped fixed-point iteration whose convergence status is reported in the
//! result rather than thrown.
//!
//! Aggregation sorts its inputs before folding, so strengths do not depend on
//! the storage order of arguments or edges — permuting the input file leaves
//! every strength bit-identical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ArgumentId, Polarity, Qbaf};

#[derive(Debug, Error)]
pub enum SemanticsError {
    #[error("strength value {0} outside [0, 1]")]
    Domain(f64),
    #[error("invalid semantics config: {0}")]
    Config(String),
}

/// Knobs for strength evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemanticsConfig {
    /// Conventional base score given to speech arguments at graph building
    /// time (proposals are fixed at 0.5).
    pub speech_base_score: f64,
    /// Fixed-point stop criterion: max-norm change below this converges.
    pub tolerance: f64,
    /// Fixed-point iteration cap; hitting it reports `converged: false`.
    pub max_iterations: usize,
    /// Fraction of each raw update applied per iteration (`0 < damping <= 1`).
    pub damping: f64,
}

impl Default for SemanticsConfig {
    fn default() -> Self {
        SemanticsConfig {
            speech_base_score: 0.2,
            tolerance: 1e-9,
            max_iterations: 10_000,
            damping: 0.5,
        }
    }
}

impl SemanticsConfig {
    pub fn validate(&self) -> Result<(), SemanticsError> {
        if !(0.0..=1.0).contains(&self.speech_base_score) {
            return Err(SemanticsError::Config(format!(
                "speech base score {} outside [0, 1]",
                self.speech_base_score
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(SemanticsError::Config(format!(
                "tolerance {} must be positive",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(SemanticsError::Config("max_iterations must be at least 1".into()));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(SemanticsError::Config(format!(
                "damping {} must lie in (0, 1]",
                self.damping
            )));
        }
        Ok(())
    }
}

/// Strengths for every argument of a graph, plus how they were obtained.
///
/// `iterations` is 0 for the exact topological evaluation and the number of
/// fixed-point rounds otherwise.  `converged` is always true for the exact
/// path; when false, the strengths are the last iterate and downstream
/// consumers must treat them as unavailable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrengthMap {
    pub strengths: BTreeMap<ArgumentId, f64>,
    pub converged: bool,
    pub iterations: usize,
}

impl StrengthMap {
    pub fn get(&self, id: &ArgumentId) -> Option<f64> {
        self.strengths.get(id).copied()
    }

    /// Canonical JSON rendering (sorted keys, trailing newline).
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("strength map serialization cannot fail");
        text.push('\n');
        text
    }
}

fn check_unit(value: f64) -> Result<f64, SemanticsError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(SemanticsError::Domain(value))
    }
}

/// Probabilistic-sum fold of a set of strengths: `1 - prod(1 - v)`.
///
/// The empty set aggregates to 0.  Inputs are sorted before folding, so the
/// result is independent of input order, bit for bit.
pub fn aggregate(values: &[f64]) -> Result<f64, SemanticsError> {
    let mut sorted = Vec::with_capacity(values.len());
    for &v in values {
        sorted.push(check_unit(v)?);
    }
    sorted.sort_by(f64::total_cmp);
    let mut product = 1.0;
    for v in sorted {
        product *= 1.0 - v;
    }
    Ok(1.0 - product)
}

/// Move a base score toward 0 or 1 by the imbalance of aggregated attack and
/// support strength.
///
/// Equal aggregates return the base score unchanged.
pub fn combine(base: f64, attack: f64, support: f64) -> Result<f64, SemanticsError> {
    check_unit(base)?;
    check_unit(attack)?;
    check_unit(support)?;
    let value = if attack >= support {
        base * (1.0 - (attack - support))
    } else {
        base + (1.0 - base) * (support - attack)
    };
    Ok(value.clamp(0.0, 1.0))
}

/// Evaluate every argument's strength.
///
/// Acyclic graphs are computed exactly in topological order.  Cyclic graphs
/// iterate from the base scores with the configured damping; the map records
/// whether the iteration converged and after how many rounds.
pub fn evaluate(qbaf: &Qbaf, config: &SemanticsConfig) -> Result<StrengthMap, SemanticsError> {
    config.validate()?;
    let n = qbaf.arguments().len();
    let mut bases = Vec::with_capacity(n);
    for arg in qbaf.arguments() {
        bases.push(check_unit(arg.base_score)?);
    }

    if qbaf.is_acyclic() {
        evaluate_topological(qbaf, &bases)
    } else {
        Ok(evaluate_fixed_point(qbaf, &bases, config))
    }
}

/// One update of a single argument from the current strength vector.
fn updated_strength(qbaf: &Qbaf, current: &[f64], i: usize, base: f64) -> f64 {
    let mut attacks = Vec::new();
    let mut supports = Vec::new();
    for &(src, pol) in qbaf.incoming(i) {
        match pol {
            Polarity::Attack => attacks.push(current[src]),
            Polarity::Support => supports.push(current[src]),
        }
    }
    let va = aggregate(&attacks).expect("strengths stay in range");
    let vs = aggregate(&supports).expect("strengths stay in range");
    combine(base, va, vs).expect("strengths stay in range")
}

fn evaluate_topological(qbaf: &Qbaf, bases: &[f64]) -> Result<StrengthMap, SemanticsError> {
    let n = bases.len();
    // Kahn's algorithm over the edge direction: an argument is evaluated only
    // after all its attackers and supporters.
    let mut indegree = vec![0usize; n];
    for i in 0..n {
        indegree[i] = qbaf.incoming(i).len();
    }
    let mut order: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &(t, _) in qbaf.outgoing(u) {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                order.push(t);
            }
        }
    }
    debug_assert_eq!(order.len(), n, "acyclic graph must topologically sort");

    let mut strengths = vec![0.0; n];
    for &i in &order {
        strengths[i] = updated_strength(qbaf, &strengths, i, bases[i]);
    }
    Ok(finish(qbaf, strengths, true, 0))
}

fn evaluate_fixed_point(qbaf: &Qbaf, bases: &[f64], config: &SemanticsConfig) -> StrengthMap {
    let n = bases.len();
    let mut current = bases.to_vec();
    let mut converged = false;
    let mut iterations = config.max_iterations;
    for iter in 1..=config.max_iterations {
        // Jacobi-style simultaneous update: every new strength reads the
        // previous iterate, keeping the result independent of storage order.
        let mut next = vec![0.0; n];
        let mut delta = 0.0f64;
        for i in 0..n {
            let raw = updated_strength(qbaf, &current, i, bases[i]);
            let damped = current[i] + config.damping * (raw - current[i]);
            delta = delta.max((damped - current[i]).abs());
            next[i] = damped;
        }
        current = next;
        if delta < config.tolerance {
            converged = true;
            iterations = iter;
            break;
        }
    }
    finish(qbaf, current, converged, iterations)
}

fn finish(qbaf: &Qbaf, strengths: Vec<f64>, converged: bool, iterations: usize) -> StrengthMap {
    let mut map = BTreeMap::new();
    for (i, arg) in qbaf.arguments().iter().enumerate() {
        map.insert(arg.id.clone(), strengths[i]);
    }
    StrengthMap { strengths: map, converged, iterations }
}

/// Evaluate once per requested speech base score.
///
/// Each entry re-scores every speech argument with the given base (proposals
/// stay at 0.5) and evaluates the modified graph.  Results keep the input
/// order of `bases`.
pub fn evaluate_with_base_sweep(
    qbaf: &Qbaf,
    bases: &[f64],
    config: &SemanticsConfig,
) -> Result<Vec<(f64, StrengthMap)>, SemanticsError> {
    config.validate()?;
    let mut results = Vec::with_capacity(bases.len());
    for &base in bases {
        check_unit(base)?;
        let swept = qbaf.with_speech_base(base);
        results.push((base, evaluate(&swept, config)?));
    }
    Ok(results)
}
