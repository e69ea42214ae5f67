//! The QBAF JSON file format.
//!
//! ```json
//! {
//!   "meta": {"debate_id": "d-103", "source": "original"},
//!   "arguments": [
//!     {"id": "p:1", "kind": "proposal", "text": "...", "base_score": 0.5},
//!     {"id": "s:1", "kind": "speech", "text": "...", "base_score": 0.2, "order": 1}
//!   ],
//!   "edges": [
//!     {"source": "s:1", "target": "p:1", "polarity": "support"}
//!   ]
//! }
//! ```
//!
//! Loading validates the shape only; structural rules live in
//! [`Qbaf::validate`].  Unknown fields are rejected in strict mode and
//! reported as warnings otherwise.  Serialization is deterministic: field
//! order is fixed, arguments and edges keep their stored order, and numbers
//! round-trip at full precision.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::graph::{Argument, Edge, Qbaf, QbafMeta};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("invalid JSON: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown field `{field}` in {context}")]
    UnknownField { field: String, context: String },
    #[error("failed to read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Serialize)]
struct FileQbaf<'a> {
    meta: &'a QbafMeta,
    arguments: &'a [Argument],
    edges: &'a [Edge],
}

#[derive(Deserialize)]
struct OwnedQbaf {
    meta: QbafMeta,
    arguments: Vec<Argument>,
    edges: Vec<Edge>,
}

/// Parse a QBAF from JSON text.
///
/// Returns the graph together with warnings: unknown fields (lenient mode
/// only) and duplicate edges collapsed at construction.
pub fn parse_qbaf(text: &str, strict: bool) -> Result<(Qbaf, Vec<String>), LoadError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
    let mut warnings = check_unknown_fields(&value, strict)?;
    let raw: OwnedQbaf =
        serde_json::from_value(value).map_err(|e| LoadError::Schema(e.to_string()))?;
    let qbaf = Qbaf::new(raw.meta, raw.arguments, raw.edges);
    warnings.extend(qbaf.warnings().iter().cloned());
    Ok((qbaf, warnings))
}

/// Serialize a QBAF to its canonical JSON text (pretty, trailing newline).
pub fn qbaf_to_json(qbaf: &Qbaf) -> String {
    let file = FileQbaf {
        meta: qbaf.meta(),
        arguments: qbaf.arguments(),
        edges: qbaf.edges(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("qbaf serialization cannot fail");
    text.push('\n');
    text
}

/// Read and parse a QBAF file.
pub fn load_qbaf_file(path: &Path, strict: bool) -> Result<(Qbaf, Vec<String>), LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_qbaf(&text, strict)
}

fn check_unknown_fields(value: &Value, strict: bool) -> Result<Vec<String>, LoadError> {
    let mut warnings = Vec::new();
    let mut report = |field: &str, context: String| -> Result<(), LoadError> {
        if strict {
            Err(LoadError::UnknownField { field: field.to_string(), context })
        } else {
            warnings.push(format!("ignoring unknown field `{field}` in {context}"));
            Ok(())
        }
    };

    let top = value
        .as_object()
        .ok_or_else(|| LoadError::Schema("top level must be an object".to_string()))?;
    for key in top.keys() {
        if !matches!(key.as_str(), "meta" | "arguments" | "edges") {
            report(key, "top-level object".to_string())?;
        }
    }
    if let Some(meta) = top.get("meta").and_then(Value::as_object) {
        for key in meta.keys() {
            if !matches!(key.as_str(), "debate_id" | "source") {
                report(key, "meta".to_string())?;
            }
        }
    }
    if let Some(args) = top.get("arguments").and_then(Value::as_array) {
        for (i, arg) in args.iter().enumerate() {
            if let Some(obj) = arg.as_object() {
                for key in obj.keys() {
                    if !matches!(key.as_str(), "id" | "kind" | "text" | "base_score" | "order") {
                        report(key, format!("argument {i}"))?;
                    }
                }
            }
        }
    }
    if let Some(edges) = top.get("edges").and_then(Value::as_array) {
        for (i, edge) in edges.iter().enumerate() {
            if let Some(obj) = edge.as_object() {
                for key in obj.keys() {
                    if !matches!(key.as_str(), "source" | "target" | "polarity") {
                        report(key, format!("edge {i}"))?;
                    }
                }
            }
        }
    }
    Ok(warnings)
}
