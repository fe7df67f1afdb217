//! Graphviz export of Hasse diagrams.

use crate::lattice::FiniteLattice;

/// The Hasse diagram of `l`, bottom at the bottom.
pub fn hasse(l: &FiniteLattice, name: &str) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n  node [shape=box];\n", quote_id(name));
    for i in 0..l.size() {
        out.push_str(&format!("  n{i} [label={}];\n", quote_id(&l.label(i))));
    }
    for (lo, hi) in l.covers() {
        out.push_str(&format!("  n{lo} -> n{hi};\n"));
    }
    out.push_str("}\n");
    out
}

fn quote_id(s: &str) -> String {
    // JSON string escaping is valid DOT quoting for the characters we emit
    serde_json::Value::String(s.to_string()).to_string()
}
