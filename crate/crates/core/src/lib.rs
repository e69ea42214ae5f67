//! Quantitative bipolar argumentation frameworks (QBAFs) for evaluating how
//! faithfully a summary preserves the argumentative structure of a debate.
//!
//! A debate over a set of numbered provisions is modelled as a graph of
//! proposal and speech arguments connected by attack and support edges.  The
//! same machinery represents a summary of that debate, and the two graphs can
//! then be compared: gradual strengths say how contested each provision is,
//! extension-based acceptance says which provisions survive scrutiny, and a
//! family of graded properties scores the summary against the source.
//!
//! Module map:
//! - [`graph`]: the QBAF data model, structural validation, and the
//!   path/parity queries everything else builds on.
//! - [`io`]: the QBAF JSON file format (strict and lenient loading).
//! - [`semantics`]: DF-QuAD gradual strength evaluation, with a damped
//!   fixed-point fallback for cyclic graphs and base-score sweeps.
//! - [`extensions`]: the derived attack framework, d-preferred extensions,
//!   and credulous acceptance, with a budget-guarded search.
//! - [`properties`]: graded faithfulness properties over a source/summary
//!   pair, plus the supplementary boolean checks.
//! - [`report`]: report assembly and JSON/markdown/text rendering.
//! - [`alignment`]: proposal alignment by provision index and injective
//!   speech-argument matching (exact, normalized, or external similarity).
//! - [`extraction`]: transcript ingestion, candidate-pair generation,
//!   pluggable relation classification, graph building, and classifier
//!   agreement metrics.
//! - [`baselines`]: lexical-overlap baseline (ROUGE-N).
//! - [`remote`]: shared HTTP JSON plumbing (retry, backoff, bounded
//!   concurrency) for remote classifiers and scorers.

pub mod alignment;
pub mod baselines;
pub mod extensions;
pub mod extraction;
pub mod graph;
pub mod io;
pub mod properties;
pub mod remote;
pub mod report;
pub mod semantics;

pub use graph::{
    Argument, ArgumentId, ArgumentKind, Edge, Polarity, ProCon, Qbaf, QbafBuilder, QbafMeta,
    SourceKind, ValidationReport,
};
pub use semantics::{SemanticsConfig, StrengthMap};
