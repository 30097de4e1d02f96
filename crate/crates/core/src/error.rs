use thiserror::Error;

use crate::labeling::Violation;

/// Engine-wide error type. Every variant names the offending vertex or edge
/// so CLI consumers can surface actionable messages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{name}`")]
    UnknownVertex { name: String },

    #[error("self-loop at vertex `{vertex}` is not allowed in a simple graph")]
    SelfLoop { vertex: String },

    #[error("duplicate edge `{u}`-`{v}`")]
    DuplicateEdge { u: String, v: String },

    #[error("operation `{operation}` requires an undirected graph")]
    RequiresUndirected { operation: String },

    #[error("operation `{operation}` requires a directed graph")]
    RequiresDirected { operation: String },

    #[error("graph is not a tree: {detail}")]
    NotATree { detail: String },

    #[error("graph has no edges; at least one edge is required")]
    NoEdges,

    #[error("invalid placement ({a}, {b}): {reason}")]
    InvalidPlacement {
        a: String,
        b: String,
        reason: String,
    },

    #[error("invalid labeling: {summary}")]
    InvalidLabeling {
        summary: String,
        violations: Vec<Violation>,
    },

    #[error("invalid edge bijection: {reason}")]
    InvalidPhi { reason: String },

    #[error("invalid playbook: {reason}")]
    InvalidPlaybook { reason: String },
}

impl Error {
    pub fn invalid_labeling(violations: Vec<Violation>) -> Self {
        let summary = violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        Error::InvalidLabeling {
            summary,
            violations,
        }
    }
}
