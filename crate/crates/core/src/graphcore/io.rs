//! Plain-text formats.
//!
//! Graphs: a header line `n m`, then `m` edge lines `u v`. A line holding a
//! single token declares an isolated vertex. Words: whitespace-separated
//! tokens, one word per line. In both, `#` starts a comment.

use std::fmt::Write;

use super::graph::Graph;
use super::token::VertexToken;
use super::word::Word;
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_count(line: usize, field: &str, what: &str) -> Result<usize> {
    field.parse().map_err(|_| parse_err(line, format!("expected {what} as a non-negative integer, found {field:?}")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header line `n m`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(parse_err(header_line, format!("header must be `n m`, found {header:?}")));
    };
    let n = parse_count(header_line, n, "vertex count")?;
    let m = parse_count(header_line, m, "edge count")?;

    let mut g = Graph::new();
    let mut edge_lines = 0;
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        let tokens = line
            .split_whitespace()
            .map(|t| VertexToken::new(t).map_err(|e| parse_err(line_no, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        match <[VertexToken; 2]>::try_from(tokens) {
            Ok([a, b]) => {
                if a == b {
                    return Err(parse_err(line_no, format!("self-loop at {a}")));
                }
                if !g.add_edge(a.clone(), b.clone())? {
                    return Err(parse_err(line_no, format!("duplicate edge {a} {b}")));
                }
                edge_lines += 1;
            }
            Err(tokens) if tokens.len() == 1 => {
                g.add_vertex(tokens.into_iter().next().unwrap());
            }
            Err(tokens) => {
                return Err(parse_err(line_no, format!("expected `u v` or a single vertex, found {} tokens", tokens.len())))
            }
        }
    }
    if edge_lines != m {
        return Err(parse_err(last_line, format!("header declares {m} edges but {edge_lines} were listed")));
    }
    if g.vertex_count() != n {
        return Err(parse_err(
            last_line,
            format!("header declares {n} vertices but {} were named", g.vertex_count()),
        ));
    }
    Ok(g)
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (a, b) in g.edges() {
        writeln!(out, "{a} {b}").unwrap();
    }
    let degrees = g.degrees();
    for (v, d) in degrees {
        if d == 0 {
            writeln!(out, "{v}").unwrap();
        }
    }
    out
}

/// Every non-empty line is one word.
pub fn parse_words(text: &str) -> Result<Vec<Word>> {
    content_lines(text)
        .map(|(line_no, line)| line.parse::<Word>().map_err(|e| parse_err(line_no, e.to_string())))
        .collect()
}

/// Exactly one word.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut words = parse_words(text)?;
    match words.len() {
        1 => Ok(words.pop().unwrap()),
        0 => Err(parse_err(1, "no word found")),
        k => Err(parse_err(1, format!("expected one word, found {k}"))),
    }
}
