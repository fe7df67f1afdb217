//! Burmeister `.cxt` files.
//!
//! Canonical layout, LF line endings:
//!
//! ```text
//! B
//! <name line: empty, or the name followed by a blank line>
//! <object count>
//! <attribute count>
//!
//! <object names, one per line>
//! <attribute names, one per line>
//! <one row of X and . per object>
//! ```
//!
//! The parser also accepts a name without the blank line after it, extra
//! trailing blank lines, lowercase `x`, and CRLF line endings.

use super::{ContextFile, ParseError};
use crate::polarity::{Polarity, Side};
use crate::relation::RawRelation;

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
        // a final newline leaves one empty piece behind
        if lines.last() == Some(&"") {
            lines.pop();
        }
        Lines { lines, pos: 0 }
    }

    /// 1-based number of the next line.
    fn line_no(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self, what: &'static str) -> Result<&'a str, ParseError> {
        let line = self.peek().ok_or(ParseError::UnexpectedEof {
            line: self.line_no(),
            what,
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn count(&mut self) -> Result<usize, ParseError> {
        let line_no = self.line_no();
        let line = self.next("a count")?;
        line.trim().parse().map_err(|_| ParseError::BadCount {
            line: line_no,
            found: line.to_string(),
        })
    }

    fn blank(&mut self) -> Result<(), ParseError> {
        let line_no = self.line_no();
        if self.next("a blank line")?.trim().is_empty() {
            Ok(())
        } else {
            Err(ParseError::ExpectedBlank { line: line_no })
        }
    }
}

pub fn parse(text: &str) -> Result<ContextFile, ParseError> {
    let mut lines = Lines::new(text);
    if lines.next("header")?.trim() != "B" {
        return Err(ParseError::MissingHeader { line: 1 });
    }
    let name = lines.next("a name line")?.trim().to_string();
    if lines.peek().is_some_and(|l| l.trim().is_empty()) {
        lines.pos += 1;
    }
    let objects = lines.count()?;
    let attributes = lines.count()?;
    lines.blank()?;
    let mut lower = Vec::with_capacity(objects);
    for _ in 0..objects {
        lower.push(lines.next("an object name")?.to_string());
    }
    let mut upper = Vec::with_capacity(attributes);
    for _ in 0..attributes {
        upper.push(lines.next("an attribute name")?.to_string());
    }
    let mut rows = Vec::with_capacity(objects);
    for _ in 0..objects {
        let line_no = lines.line_no();
        let row = lines.next("an incidence row")?.trim_end();
        let mut bits = Vec::with_capacity(attributes);
        for ch in row.chars() {
            match ch {
                'X' | 'x' => bits.push(true),
                '.' => bits.push(false),
                other => return Err(ParseError::IllegalChar { line: line_no, ch: other }),
            }
        }
        if bits.len() != attributes {
            return Err(ParseError::RowLength {
                line: line_no,
                expected: attributes,
                found: bits.len(),
            });
        }
        rows.push(bits);
    }
    while let Some(rest) = lines.peek() {
        if !rest.trim().is_empty() {
            return Err(ParseError::Trailing { line: lines.line_no() });
        }
        lines.pos += 1;
    }
    let rel = RawRelation::from_fn(objects, attributes, |a, b| rows[a][b]);
    let polarity = Polarity::with_labels(rel, Some(lower), Some(upper))?;
    Ok(ContextFile {
        name: (!name.is_empty()).then_some(name),
        polarity,
    })
}

/// Canonical text; missing labels are written as their defaults.
pub fn serialize(file: &ContextFile) -> String {
    let p = &file.polarity;
    let mut out = String::new();
    out.push_str("B\n");
    if let Some(name) = file.name.as_deref().filter(|n| !n.is_empty()) {
        out.push_str(name);
        out.push('\n');
    }
    out.push('\n');
    out.push_str(&format!("{}\n{}\n\n", p.lower_size(), p.upper_size()));
    for i in 0..p.lower_size() {
        out.push_str(&p.label(Side::Lower, i));
        out.push('\n');
    }
    for j in 0..p.upper_size() {
        out.push_str(&p.label(Side::Upper, j));
        out.push('\n');
    }
    out.push_str(&p.rel().to_string());
    out
}
