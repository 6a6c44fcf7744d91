//! Plain-text edge lists.
//!
//! One edge per line as two decimal labels separated by a single space.
//! Lines starting with `#` are comments, except `# n=<count>` which fixes
//! the vertex count. Blank lines are ignored. Without a header the vertex
//! count is one more than the largest label.

use std::fmt::Write as _;

use kconn::{Edge, SimpleGraph};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed edge at line {0}")]
    Malformed(usize),
    #[error("self-loop at line {0}")]
    SelfLoop(usize),
    #[error("duplicate edge at line {0}")]
    Duplicate(usize),
    #[error("malformed vertex-count header at line {0}")]
    BadHeader(usize),
    #[error("second vertex-count header at line {0}")]
    RepeatedHeader(usize),
    #[error("label {label} at line {line} is not below the declared count n={n}")]
    LabelOutOfRange { line: usize, label: usize, n: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match *self {
            ParseError::Malformed(l)
            | ParseError::SelfLoop(l)
            | ParseError::Duplicate(l)
            | ParseError::BadHeader(l)
            | ParseError::RepeatedHeader(l)
            | ParseError::LabelOutOfRange { line: l, .. } => l,
        }
    }
}

fn label(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn parse(text: &str) -> Result<SimpleGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, (usize, usize))> = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(count) = rest.strip_prefix(" n=") {
                let n = label(count).ok_or(ParseError::BadHeader(line_no))?;
                if header.is_some() {
                    return Err(ParseError::RepeatedHeader(line_no));
                }
                header = Some((n, line_no));
            }
            continue;
        }
        let (a, b) = line.split_once(' ').ok_or(ParseError::Malformed(line_no))?;
        let (a, b) = (
            label(a).ok_or(ParseError::Malformed(line_no))?,
            label(b).ok_or(ParseError::Malformed(line_no))?,
        );
        if a == b {
            return Err(ParseError::SelfLoop(line_no));
        }
        edges.push((line_no, (a, b)));
    }

    let n = match header {
        Some((n, _)) => {
            if let Some(&(line, (a, b))) = edges.iter().find(|(_, (a, b))| *a.max(b) >= n) {
                return Err(ParseError::LabelOutOfRange {
                    line,
                    label: a.max(b),
                    n,
                });
            }
            n
        }
        None => edges
            .iter()
            .map(|(_, (a, b))| a.max(b) + 1)
            .max()
            .unwrap_or(0),
    };
    let mut g = SimpleGraph::empty(n);
    for (line, (a, b)) in edges {
        let e = Edge::new(a, b).map_err(|_| ParseError::SelfLoop(line))?;
        g = g.add_edge(e).map_err(|_| ParseError::Duplicate(line))?;
    }
    Ok(g)
}

/// Header, optional comment lines, then edges in lexicographic order.
pub fn render(g: &SimpleGraph, comments: &[String]) -> String {
    let mut out = format!("# n={}\n", g.n());
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.a(), e.b());
    }
    out
}
