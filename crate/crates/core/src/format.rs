//! Plain-text hypergraph files.
//!
//! One edge per line, vertices as whitespace-separated tokens. `#` starts a
//! comment that runs to the end of the line. Blank lines are skipped; the
//! empty edge is written as the lone keyword `empty`. Tokens are arbitrary
//! labels (integers included) and are numbered densely in order of first
//! appearance.
//!
//! ```text
//! # a triangle
//! 0 1
//! 1 2
//! 0 2
//! empty
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::FiniteHypergraph;
use crate::vertex_set::{Vertex, VertexSet};

pub const EMPTY_KEYWORD: &str = "empty";

pub fn parse(text: &str) -> Result<FiniteHypergraph> {
    let mut ids: HashMap<&str, Vertex> = HashMap::new();
    let mut labels: BTreeMap<Vertex, String> = BTreeMap::new();
    let mut edges = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens == [EMPTY_KEYWORD] {
            edges.push(VertexSet::new());
            continue;
        }
        let mut edge = VertexSet::new();
        for token in tokens {
            if token == EMPTY_KEYWORD {
                return Err(Error::Parse {
                    line,
                    message: format!("`{EMPTY_KEYWORD}` must stand alone on its line"),
                });
            }
            let next = ids.len() as Vertex;
            let id = *ids.entry(token).or_insert_with(|| {
                labels.insert(next, token.to_string());
                next
            });
            if !edge.insert(id) {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex `{token}` repeated within an edge"),
                });
            }
        }
        edges.push(edge);
    }
    Ok(FiniteHypergraph::new(edges).with_labels(labels))
}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label == EMPTY_KEYWORD || label.contains('#') || label.contains(char::is_whitespace) {
        return Err(Error::InvalidParameter(format!("vertex label {label:?} cannot be written to a file")));
    }
    Ok(())
}

/// Writes `h` with optional leading comment lines. Vertices within an edge
/// are written in ascending id order.
pub fn serialize(h: &FiniteHypergraph, comments: &[String]) -> Result<String> {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            writeln!(out, "# {line}").expect("write to string");
        }
    }
    for e in h.edges() {
        if e.is_empty() {
            out.push_str(EMPTY_KEYWORD);
        } else {
            let mut first = true;
            for v in e {
                let label = h.label(v);
                check_label(&label)?;
                if !first {
                    out.push(' ');
                }
                out.push_str(&label);
                first = false;
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// Edges as label lists, for comparing hypergraphs across a relabeling.
pub fn labeled_edges(h: &FiniteHypergraph) -> Vec<Vec<String>> {
    h.edges()
        .iter()
        .map(|e| {
            let mut labels: Vec<String> = e.iter().map(|v| h.label(v)).collect();
            labels.sort();
            labels
        })
        .collect()
}
