//! Context, morphism and lattice files, and DOT export.
//!
//! Two context formats are supported: Burmeister `.cxt` and a small JSON
//! schema. Both serializers are canonical, so serializing a parsed canonical
//! file reproduces it byte for byte.

pub mod burmeister;
pub mod dot;
pub mod json;

use thiserror::Error;

use crate::polarity::Polarity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected header `B`")]
    MissingHeader { line: usize },

    #[error("line {line}: expected a count, found {found:?}")]
    BadCount { line: usize, found: String },

    #[error("line {line}: expected a blank line")]
    ExpectedBlank { line: usize },

    #[error("line {line}: illegal character {ch:?} in incidence row")]
    IllegalChar { line: usize, ch: char },

    #[error("line {line}: row has {found} entries, expected {expected}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: unexpected end of input, expected {what}")]
    UnexpectedEof { line: usize, what: &'static str },

    #[error("line {line}: unexpected trailing content")]
    Trailing { line: usize },

    #[error("json: {0}")]
    Json(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Invalid(#[from] crate::error::Error),
}

/// A polarity with an optional display name, as stored in a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextFile {
    pub name: Option<String>,
    pub polarity: Polarity,
}

impl ContextFile {
    pub fn new(polarity: Polarity) -> Self {
        ContextFile {
            name: None,
            polarity,
        }
    }
}

/// Which context format a file uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Burmeister,
    Json,
}

impl Format {
    /// JSON when the text starts with `{`, Burmeister otherwise.
    pub fn sniff(text: &str) -> Format {
        if text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Burmeister
        }
    }
}

/// Parses a context in either format.
pub fn parse_context(text: &str) -> Result<ContextFile, ParseError> {
    match Format::sniff(text) {
        Format::Json => json::parse_context(text),
        Format::Burmeister => burmeister::parse(text),
    }
}

pub fn serialize_context(file: &ContextFile, format: Format) -> String {
    match format {
        Format::Json => json::serialize_context(file),
        Format::Burmeister => burmeister::serialize(file),
    }
}
