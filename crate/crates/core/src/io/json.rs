//! JSON contexts, morphisms and lattices.
//!
//! ```json
//! {
//!   "name": "optional",
//!   "lower": ["g0", "g1"],
//!   "upper": ["m0"],
//!   "incidence": [
//!     [1],
//!     [0]
//!   ]
//! }
//! ```
//!
//! A morphism file has `dom` and `cod`, each a context path (relative to the
//! morphism file) or an inline context, and a row-major `relation` in the same
//! 0/1 layout. A lattice file has `elements` (names) or `size`, and a `leq`
//! matrix where `leq[i][j] = 1` means `i ≤ j`.
//!
//! The writers are canonical: two-space indentation, one matrix row per line,
//! labels always present.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use super::{ContextFile, ParseError};
use crate::error::Error;
use crate::lattice::FiniteLattice;
use crate::morphism::Morphism;
use crate::polarity::{Polarity, Side};
use crate::relation::RawRelation;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContextJson {
    #[serde(default)]
    name: Option<String>,
    lower: Vec<String>,
    upper: Vec<String>,
    incidence: Vec<Vec<u8>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ContextRef {
    Path(String),
    Inline(ContextJson),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismJson {
    dom: ContextRef,
    cod: ContextRef,
    relation: Vec<Vec<u8>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeJson {
    #[serde(default)]
    elements: Option<Vec<String>>,
    #[serde(default)]
    size: Option<usize>,
    leq: Vec<Vec<u8>>,
}

fn json_err(e: impl std::fmt::Display) -> ParseError {
    ParseError::Json(e.to_string())
}

fn matrix(rows: &[Vec<u8>], n_rows: usize, n_cols: usize, what: &str) -> Result<RawRelation, ParseError> {
    if rows.len() != n_rows {
        return Err(ParseError::Json(format!("{what}: {} rows, expected {n_rows}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n_cols {
            return Err(ParseError::Json(format!(
                "{what}: row {i} has {} entries, expected {n_cols}",
                row.len()
            )));
        }
        if let Some(bad) = row.iter().find(|&&b| b > 1) {
            return Err(ParseError::Json(format!("{what}: row {i} has entry {bad}, expected 0 or 1")));
        }
    }
    Ok(RawRelation::from_fn(n_rows, n_cols, |i, j| rows[i][j] == 1))
}

fn context_from(c: ContextJson) -> Result<ContextFile, ParseError> {
    let rel = matrix(&c.incidence, c.lower.len(), c.upper.len(), "incidence")?;
    let polarity = Polarity::with_labels(rel, Some(c.lower), Some(c.upper))?;
    Ok(ContextFile {
        name: c.name,
        polarity,
    })
}

pub fn parse_context(text: &str) -> Result<ContextFile, ParseError> {
    context_from(serde_json::from_str(text).map_err(json_err)?)
}

fn quote(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

fn write_matrix(out: &mut String, indent: &str, key: &str, rel: &RawRelation) {
    if rel.rows() == 0 {
        out.push_str(&format!("{indent}\"{key}\": []"));
        return;
    }
    out.push_str(&format!("{indent}\"{key}\": [\n"));
    for r in 0..rel.rows() {
        let bits: Vec<&str> = (0..rel.cols()).map(|c| if rel.get(r, c) { "1" } else { "0" }).collect();
        out.push_str(&format!("{indent}  [{}]", bits.join(", ")));
        out.push_str(if r + 1 < rel.rows() { ",\n" } else { "\n" });
    }
    out.push_str(&format!("{indent}]"));
}

fn write_names(out: &mut String, indent: &str, key: &str, names: impl Iterator<Item = String>) {
    let quoted: Vec<String> = names.map(|n| quote(&n)).collect();
    out.push_str(&format!("{indent}\"{key}\": [{}],\n", quoted.join(", ")));
}

/// Writes the context object body at the given depth, without a newline after
/// the closing brace.
fn write_context(out: &mut String, depth: usize, file: &ContextFile) {
    let outer = "  ".repeat(depth);
    let inner = "  ".repeat(depth + 1);
    let p = &file.polarity;
    out.push_str("{\n");
    if let Some(name) = &file.name {
        out.push_str(&format!("{inner}\"name\": {},\n", quote(name)));
    }
    write_names(out, &inner, "lower", (0..p.lower_size()).map(|i| p.label(Side::Lower, i)));
    write_names(out, &inner, "upper", (0..p.upper_size()).map(|j| p.label(Side::Upper, j)));
    write_matrix(out, &inner, "incidence", p.rel());
    out.push_str(&format!("\n{outer}}}"));
}

pub fn serialize_context(file: &ContextFile) -> String {
    let mut out = String::new();
    write_context(&mut out, 0, file);
    out.push('\n');
    out
}

/// A morphism as read from disk, before compatibility is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismFile {
    pub dom: Polarity,
    pub cod: Polarity,
    pub relation: RawRelation,
}

impl MorphismFile {
    /// Checks compatibility.
    pub fn validate(self) -> Result<Morphism, Error> {
        Morphism::new(self.dom, self.cod, self.relation)
    }
}

fn resolve(r: ContextRef, base: Option<&Path>) -> Result<Polarity, ParseError> {
    match r {
        ContextRef::Inline(c) => Ok(context_from(c)?.polarity),
        ContextRef::Path(p) => {
            let path = match base {
                Some(dir) => dir.join(&p),
                None => p.clone().into(),
            };
            let text = std::fs::read_to_string(&path).map_err(|e| ParseError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            Ok(super::parse_context(&text)?.polarity)
        }
    }
}

/// Parses a morphism file; context paths are resolved against `base`.
pub fn parse_morphism(text: &str, base: Option<&Path>) -> Result<MorphismFile, ParseError> {
    let m: MorphismJson = serde_json::from_str(text).map_err(json_err)?;
    let dom = resolve(m.dom, base)?;
    let cod = resolve(m.cod, base)?;
    let relation = matrix(&m.relation, dom.lower_size(), cod.upper_size(), "relation")?;
    Ok(MorphismFile { dom, cod, relation })
}

/// Canonical morphism file with both contexts inline.
pub fn serialize_morphism(dom: &Polarity, cod: &Polarity, relation: &RawRelation) -> String {
    let mut out = String::from("{\n  \"dom\": ");
    write_context(&mut out, 1, &ContextFile::new(dom.clone()));
    out.push_str(",\n  \"cod\": ");
    write_context(&mut out, 1, &ContextFile::new(cod.clone()));
    out.push_str(",\n");
    write_matrix(&mut out, "  ", "relation", relation);
    out.push_str("\n}\n");
    out
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice, ParseError> {
    let l: LatticeJson = serde_json::from_str(text).map_err(json_err)?;
    let n = match (&l.elements, l.size) {
        (Some(e), Some(s)) if e.len() != s => {
            return Err(ParseError::Json(format!("{} elements but size {s}", e.len())))
        }
        (Some(e), _) => e.len(),
        (None, Some(s)) => s,
        (None, None) => return Err(ParseError::Json("lattice needs `elements` or `size`".into())),
    };
    let leq = matrix(&l.leq, n, n, "leq")?;
    let lattice = FiniteLattice::from_fn(n, |i, j| leq.get(i, j))?;
    Ok(match l.elements {
        Some(names) => lattice.with_labels(names)?,
        None => lattice,
    })
}

/// Canonical lattice file; element names are always written.
pub fn serialize_lattice(l: &FiniteLattice) -> String {
    let mut out = String::from("{\n");
    write_names(&mut out, "  ", "elements", (0..l.size()).map(|i| l.label(i)));
    let n = l.size();
    write_matrix(&mut out, "  ", "leq", &RawRelation::from_fn(n, n, |i, j| l.leq(i, j)));
    out.push_str("\n}\n");
    out
}
