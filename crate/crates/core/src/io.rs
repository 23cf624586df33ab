//! The `ssys v1` text format and its JSON equivalent.
//!
//! Text layout:
//!
//! ```text
//! # optional comment lines
//! ssys <|A|> <|B|> <|E|>
//! <set_id> <k> <e_1> ... <e_k>      (one line per set)
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setsystem::SetSystem;

/// Canonical text form.
pub fn to_ssys(sys: &SetSystem) -> String {
    let mut out = format!("ssys {} {} {}\n", sys.num_elements(), sys.num_sets(), sys.num_edges());
    for s in 0..sys.num_sets() {
        let members = sys.members(s);
        out.push_str(&s.to_string());
        out.push(' ');
        out.push_str(&members.len().to_string());
        for e in members {
            out.push(' ');
            out.push_str(&e.to_string());
        }
        out.push('\n');
    }
    out
}

/// Text form preceded by `comment` (each line should start with `#`).
pub fn to_ssys_with_comment(sys: &SetSystem, comment: &str) -> String {
    let mut out = String::from(comment.trim_end());
    out.push('\n');
    out.push_str(&to_ssys(sys));
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| parse_err(line, format!("expected a non-negative integer, found {tok:?}")))
}

/// Parses the text form. Sets without a line are empty; a set may appear at
/// most once, and the declared counts must match the content.
pub fn parse_ssys(text: &str) -> Result<SetSystem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `ssys` header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 4 || head[0] != "ssys" {
        return Err(parse_err(hline, "header must be `ssys <|A|> <|B|> <|E|>`"));
    }
    let n = parse_num(head[1], hline)?;
    let m = parse_num(head[2], hline)?;
    let declared_edges = parse_num(head[3], hline)?;

    let mut seen = vec![false; m];
    let mut edges = Vec::with_capacity(declared_edges);
    for (lno, line) in lines {
        let mut toks = line.split_whitespace();
        let s = parse_num(toks.next().unwrap_or_default(), lno)?;
        if s >= m {
            return Err(parse_err(lno, format!("set id {s} out of range 0..{m}")));
        }
        if std::mem::replace(&mut seen[s], true) {
            return Err(parse_err(lno, format!("set {s} listed twice")));
        }
        let k = parse_num(toks.next().ok_or_else(|| parse_err(lno, "missing member count"))?, lno)?;
        let members = toks.map(|t| parse_num(t, lno)).collect::<Result<Vec<_>>>()?;
        if members.len() != k {
            return Err(parse_err(lno, format!("set {s} declares {k} members but lists {}", members.len())));
        }
        if let Some(&e) = members.iter().find(|&&e| e >= n) {
            return Err(parse_err(lno, format!("element id {e} out of range 0..{n}")));
        }
        edges.extend(members.into_iter().map(|e| (s, e)));
    }
    let sys = SetSystem::from_edges(n, m, edges)?;
    if sys.num_edges() != declared_edges {
        return Err(parse_err(hline, format!("header declares {declared_edges} edges, found {}", sys.num_edges())));
    }
    Ok(sys)
}

/// Structured form with the same fields as the text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsysJson {
    pub elements: usize,
    pub sets: usize,
    pub edges: usize,
    pub members: Vec<Vec<usize>>,
}

pub fn to_json(sys: &SetSystem) -> String {
    let doc = SsysJson {
        elements: sys.num_elements(),
        sets: sys.num_sets(),
        edges: sys.num_edges(),
        members: (0..sys.num_sets()).map(|s| sys.members(s).to_vec()).collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn parse_json(text: &str) -> Result<SetSystem> {
    let doc: SsysJson = serde_json::from_str(text)?;
    if doc.members.len() != doc.sets {
        return Err(parse_err(1, format!("declares {} sets but lists {}", doc.sets, doc.members.len())));
    }
    let sys = SetSystem::from_sets(doc.elements, &doc.members)?;
    if sys.num_edges() != doc.edges {
        return Err(parse_err(1, format!("declares {} edges, found {}", doc.edges, sys.num_edges())));
    }
    Ok(sys)
}

/// Parses either format, telling them apart by the first non-space byte.
pub fn parse_any(text: &str) -> Result<SetSystem> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_ssys(text)
    }
}

pub fn read_system(path: impl AsRef<Path>) -> Result<SetSystem> {
    parse_any(&fs::read_to_string(path)?)
}
