//! JSON documents: `{"vertices": [[x, y], [x, y], [x, y], [x, y]], "label": "..."}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use quadual::{Error as GeometryError, MarkedQuadrangle, Point2};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        message: String,
        line: usize,
        column: usize,
    },
    #[error("validation error: {invariant}: {message}")]
    Validation {
        invariant: &'static str,
        message: String,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    vertices: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadrangleDocument {
    pub quadrangle: MarkedQuadrangle,
    pub label: Option<String>,
}

impl QuadrangleDocument {
    pub fn new(quadrangle: MarkedQuadrangle, label: Option<String>) -> Self {
        Self { quadrangle, label }
    }

    /// Compact single-line JSON. Floats use the shortest representation that
    /// parses back to the same value.
    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            // `+ 0.0` turns -0.0 into 0.0
            vertices: self.quadrangle.vertices().map(|p| [p.x + 0.0, p.y + 0.0]).to_vec(),
            label: self.label.clone(),
        };
        serde_json::to_string(&raw).expect("finite coordinates always serialize")
    }
}

pub fn parse_document(text: &str) -> Result<QuadrangleDocument, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Parse {
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })?;
    let vertices: [[f64; 2]; 4] = raw.vertices.as_slice().try_into().map_err(|_| DocumentError::Parse {
        message: format!("expected 4 vertices, found {}", raw.vertices.len()),
        line: 0,
        column: 0,
    })?;
    let quadrangle = MarkedQuadrangle::new(vertices.map(|[x, y]| Point2::new(x, y))).map_err(|e| {
        let invariant = match e {
            GeometryError::NonFinite { .. } => "finite",
            _ => "degenerate",
        };
        DocumentError::Validation {
            invariant,
            message: e.to_string(),
        }
    })?;
    Ok(QuadrangleDocument {
        quadrangle,
        label: raw.label,
    })
}
