//! Plain-text hypergraph files.
//!
//! ```text
//! # comment
//! 6 2
//! 0 1
//! 0 2
//! 1 2
//! ```
//!
//! The first content line is `n r`; each further line is one edge.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use codegree_core::{Hypergraph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

fn parse_num(line: usize, token: &str, what: &str) -> Result<u32, FormatError> {
    token.parse().map_err(|_| err(line, format!("{what} `{token}` is not a non-negative integer")))
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, FormatError> {
    let mut header: Option<(u32, u32)> = None;
    let mut seen: BTreeMap<VertexSet, usize> = BTreeMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((n, r)) = header else {
            let [n, r] = tokens[..] else {
                return Err(err(line, "header must be `n r`"));
            };
            let (n, r) = (parse_num(line, n, "n")?, parse_num(line, r, "r")?);
            Hypergraph::empty(n, r).map_err(|e| err(line, e.to_string()))?;
            header = Some((n, r));
            continue;
        };
        if tokens.len() != r as usize {
            return Err(err(line, format!("expected {r} vertices, found {}", tokens.len())));
        }
        let mut edge = VertexSet::EMPTY;
        for tok in tokens {
            let v = parse_num(line, tok, "vertex")?;
            if v >= n {
                return Err(err(line, format!("vertex {v} is outside 0..{n}")));
            }
            if edge.contains(v) {
                return Err(err(line, format!("vertex {v} repeated within the edge")));
            }
            edge = edge.insert(v);
        }
        if let Some(first) = seen.insert(edge, line) {
            return Err(err(line, format!("duplicate edge {edge} (first given on line {first})")));
        }
    }

    let Some((n, r)) = header else {
        return Err(err(last_line.max(1), "missing `n r` header"));
    };
    Hypergraph::new(n, r, seen.into_keys()).map_err(|e| err(last_line, e.to_string()))
}

/// Canonical text: header, then edges in colex order with sorted labels.
pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.r());
    for e in h.edges() {
        let labels: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}
