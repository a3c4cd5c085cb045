//! Line-oriented text formats.
//!
//! Instance files:
//!
//! ```text
//! # comment
//! p glist <n> <m> <k>
//! e <u> <v>            (m lines, 1-based ids)
//! l <v> <c1> ... <ct>  (optional; a missing line means the full list [k],
//!                       `l <v>` alone means the empty list)
//! ```

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::Graph;
use crate::instance::{Color, ColorSet, Coloring, Instance, MAX_K};

pub(crate) fn parse_num<T: std::str::FromStr>(
    tok: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{tok}`")))
}

/// Non-comment, non-blank lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "missing `p glist` header"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") || toks.next() != Some("glist") {
        return Err(ParseError::new(hline, "expected `p glist <n> <m> <k>`"));
    }
    let n: usize = parse_num(toks.next(), hline, "vertex count")?;
    let m: usize = parse_num(toks.next(), hline, "edge count")?;
    let k: u8 = parse_num(toks.next(), hline, "color count")?;
    if toks.next().is_some() {
        return Err(ParseError::new(hline, "trailing tokens in header"));
    }
    if k == 0 || k > MAX_K {
        return Err(ParseError::new(hline, format!("k must lie in 1..={MAX_K}")));
    }

    let vertex = |tok: Option<&str>, line: usize| -> Result<usize, ParseError> {
        let v: usize = parse_num(tok, line, "vertex id")?;
        if v == 0 || v > n {
            return Err(ParseError::new(line, format!("vertex {v} outside 1..={n}")));
        }
        Ok(v - 1)
    };

    let mut edges = Vec::with_capacity(m);
    let mut lists: Vec<Option<ColorSet>> = vec![None; n];
    for (line, text) in lines {
        let mut toks = text.split_whitespace();
        match toks.next() {
            Some("e") => {
                let u = vertex(toks.next(), line)?;
                let v = vertex(toks.next(), line)?;
                if u == v {
                    return Err(ParseError::new(line, format!("loop at vertex {}", u + 1)));
                }
                if toks.next().is_some() {
                    return Err(ParseError::new(line, "trailing tokens after edge"));
                }
                edges.push((u, v));
            }
            Some("l") => {
                let v = vertex(toks.next(), line)?;
                if lists[v].is_some() {
                    return Err(ParseError::new(
                        line,
                        format!("second list for vertex {}", v + 1),
                    ));
                }
                let mut list = ColorSet::EMPTY;
                for tok in toks {
                    let c: Color = parse_num(Some(tok), line, "color")?;
                    if c == 0 || c > k {
                        return Err(ParseError::new(line, format!("color {c} outside 1..={k}")));
                    }
                    list = list.with(c);
                }
                lists[v] = Some(list);
            }
            Some(other) => {
                return Err(ParseError::new(
                    line,
                    format!("unknown line type `{other}`"),
                ));
            }
            None => unreachable!("blank lines are filtered"),
        }
    }
    if edges.len() != m {
        return Err(ParseError::new(
            hline,
            format!("header promises {m} edges, found {}", edges.len()),
        ));
    }
    let graph = Graph::new(n, &edges).map_err(|e| ParseError::new(hline, e.to_string()))?;
    let lists = lists
        .into_iter()
        .map(|l| l.unwrap_or_else(|| ColorSet::full(k)))
        .collect();
    Instance::new(graph, k, lists).map_err(|e| ParseError::new(hline, e.to_string()))
}

/// Canonical text: edges ascending, `l` lines only for non-full lists.
pub fn serialize_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = String::new();
    writeln!(out, "p glist {} {} {}", g.n(), g.edge_count(), inst.k()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    let full = ColorSet::full(inst.k());
    for (v, list) in inst.lists().iter().enumerate() {
        if *list != full {
            write!(out, "l {}", v + 1).unwrap();
            for c in list.iter() {
                write!(out, " {c}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

/// `v <vertex> <color>` lines, 1-based vertices.
pub fn coloring_lines(coloring: &Coloring) -> String {
    let mut out = String::new();
    for (v, c) in coloring.as_slice().iter().enumerate() {
        writeln!(out, "v {} {c}", v + 1).unwrap();
    }
    out
}
