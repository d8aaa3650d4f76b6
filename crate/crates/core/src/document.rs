//! Versioned JSON documents exchanged by the command-line tool.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blf::{validate, BLFDescriptor};
use crate::cerf::{validate_diagram, FoldDiagram, Move};
use crate::report::Report;

pub const SCHEMA_VERSION: &str = "blf-document/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    /// The request that produced the document, e.g. the command line.
    pub input: String,
}

impl Provenance {
    pub fn new(input: impl Into<String>) -> Self {
        Provenance {
            tool: "blf".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input: input.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Descriptor {
        descriptor: BLFDescriptor,
        reports: Vec<Report>,
    },
    FoldDiagram {
        diagram: FoldDiagram,
        #[serde(default)]
        script: Vec<Move>,
        reports: Vec<Report>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: String,
    pub provenance: Provenance,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document has no schema_version")]
    MissingVersion,
    #[error("unsupported schema_version {found:?} (expected {SCHEMA_VERSION:?})")]
    UnsupportedVersion { found: String },
}

impl Document {
    pub fn descriptor(descriptor: BLFDescriptor, input: impl Into<String>) -> Self {
        let reports = vec![validate(&descriptor)];
        Document {
            schema_version: SCHEMA_VERSION.to_string(),
            provenance: Provenance::new(input),
            body: Body::Descriptor { descriptor, reports },
        }
    }

    pub fn fold_diagram(diagram: FoldDiagram, script: Vec<Move>, input: impl Into<String>) -> Self {
        let reports = vec![validate_diagram(&diagram)];
        Document {
            schema_version: SCHEMA_VERSION.to_string(),
            provenance: Provenance::new(input),
            body: Body::FoldDiagram {
                diagram,
                script,
                reports,
            },
        }
    }

    pub fn reports(&self) -> &[Report] {
        match &self.body {
            Body::Descriptor { reports, .. } | Body::FoldDiagram { reports, .. } => reports,
        }
    }
}

pub fn emit(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

/// Parses a document, checking the schema version before the body.
pub fn load(text: &str) -> Result<Document, DocumentError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value.get("schema_version").and_then(|v| v.as_str()) {
        None => return Err(DocumentError::MissingVersion),
        Some(v) if v != SCHEMA_VERSION => {
            return Err(DocumentError::UnsupportedVersion { found: v.to_string() })
        }
        Some(_) => {}
    }
    Ok(serde_json::from_value(value)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blf::build;
    use crate::cerf::eliminate_definite_round0;
    use crate::params::TorusKnotParams;

    #[test]
    fn round_trips() {
        for k in 0..3 {
            let d = build(TorusKnotParams::twisted(2, 3, k).unwrap()).unwrap();
            let doc = Document::descriptor(d, "blf --p 2 --q 3");
            let text = emit(&doc);
            assert_eq!(load(&text).unwrap(), doc);
            assert_eq!(emit(&load(&text).unwrap()), text);
        }
        let e = eliminate_definite_round0(3).unwrap();
        let doc = Document::fold_diagram(e.output, e.script, "cerf eliminate --winding 3");
        assert_eq!(load(&emit(&doc)).unwrap(), doc);
    }

    #[test]
    fn version_is_checked() {
        let doc = Document::descriptor(build(TorusKnotParams::new(2, 3).unwrap()).unwrap(), "");
        let text = emit(&doc).replace(SCHEMA_VERSION, "blf-document/99");
        assert!(matches!(load(&text), Err(DocumentError::UnsupportedVersion { .. })));
        assert!(matches!(load("{}"), Err(DocumentError::MissingVersion)));
        assert!(matches!(load("not json"), Err(DocumentError::Json(_))));
    }
}
