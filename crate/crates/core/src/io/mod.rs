//! Text formats and the registry of named constructions.

mod certificate;
mod graph_file;
pub mod registry;

pub use certificate::{parse_certificate, write_certificate, CertificateFile};
pub use graph_file::{graph_hash, parse_graph, write_graph};
pub use registry::{lookup_named, REGISTRY};

/// A parse failure; `line` is 1-based, 0 when it concerns the whole file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct FormatError {
    pub line: usize,
    pub reason: String,
}

impl FormatError {
    pub fn new(line: usize, reason: impl Into<String>) -> Self {
        Self { line, reason: reason.into() }
    }
}
