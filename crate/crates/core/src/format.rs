//! Line-oriented text format for digraphs.
//!
//! ```text
//! # comment
//! n 3
//! e 0 1
//! e 1 2
//! name path
//! range V 0 2
//! ```
//!
//! The header `n <count>` comes first; `e <u> <v>` lines add arcs (repeats are
//! harmless); `name` and `range <label> <start> <end>` lines are optional
//! metadata. Ranges are half open.

use std::fmt::Write as _;
use std::ops::Range;

use crate::digraph::Digraph;
use crate::error::{HhError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphFile {
    pub digraph: Digraph,
    pub name: Option<String>,
    pub ranges: Vec<(String, Range<usize>)>,
}

impl DigraphFile {
    pub fn new(digraph: Digraph) -> Self {
        DigraphFile {
            digraph,
            name: None,
            ranges: Vec::new(),
        }
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(HhError::Parse {
        line,
        message: message.into(),
    })
}

fn number(line: usize, token: Option<&str>, what: &str) -> Result<usize> {
    match token {
        None => err(line, format!("missing {what}")),
        Some(t) => t
            .parse()
            .or_else(|_| err(line, format!("{what} `{t}` is not a number"))),
    }
}

/// Parses the text format; with `reflexive_closure`, a loop is added at
/// every vertex.
pub fn parse_digraph(text: &str, reflexive_closure: bool) -> Result<DigraphFile> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut name = None;
    let mut ranges = Vec::new();
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let keyword = tokens.next().unwrap();
        if n.is_none() && keyword != "n" {
            return err(line, "expected header `n <count>` first");
        }
        match keyword {
            "n" => {
                if n.is_some() {
                    return err(line, "duplicate header");
                }
                n = Some(number(line, tokens.next(), "vertex count")?);
            }
            "e" => {
                let count = n.unwrap();
                let u = number(line, tokens.next(), "source vertex")?;
                let v = number(line, tokens.next(), "target vertex")?;
                for w in [u, v] {
                    if w >= count {
                        return err(line, format!("vertex {w} out of range 0..{count}"));
                    }
                }
                edges.push((u, v));
            }
            "name" => {
                if name.is_some() {
                    return err(line, "duplicate name");
                }
                let rest = trimmed["name".len()..].trim();
                if rest.is_empty() {
                    return err(line, "empty name");
                }
                name = Some(rest.to_string());
                continue;
            }
            "range" => {
                let count = n.unwrap();
                let label = match tokens.next() {
                    Some(l) => l.to_string(),
                    None => return err(line, "missing range label"),
                };
                let a = number(line, tokens.next(), "range start")?;
                let b = number(line, tokens.next(), "range end")?;
                if a > b || b > count {
                    return err(line, format!("range {a}..{b} does not fit 0..{count}"));
                }
                ranges.push((label, a..b));
            }
            other => return err(line, format!("unknown keyword `{other}`")),
        }
        if let Some(extra) = tokens.next() {
            return err(line, format!("unexpected token `{extra}`"));
        }
    }
    let Some(n) = n else {
        return err(last_line.max(1), "missing header `n <count>`");
    };
    let mut digraph = Digraph::new(n, &edges)?;
    if reflexive_closure {
        digraph = digraph.reflexive_closure();
    }
    Ok(DigraphFile {
        digraph,
        name,
        ranges,
    })
}

/// Inverse of [`parse_digraph`]: arcs in lexicographic order, then name and
/// ranges.
pub fn serialize_digraph(file: &DigraphFile) -> String {
    let d = &file.digraph;
    let mut out = String::new();
    writeln!(out, "n {}", d.vertex_count()).unwrap();
    for (u, v) in d.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    if let Some(name) = &file.name {
        writeln!(out, "name {name}").unwrap();
    }
    for (label, r) in &file.ranges {
        writeln!(out, "range {label} {} {}", r.start, r.end).unwrap();
    }
    out
}
