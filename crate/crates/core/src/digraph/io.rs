//! Plain-text instance format.
//!
//! ```text
//! # optional comments, anywhere after '#'
//! semicomplete 3 weighted
//! 010
//! 001
//! 100
//! 0 1 1
//! 1 2 2.5
//! 2 0 3/2
//! ```
//!
//! Row `u`, column `v` is `1` iff `(u,v)` is an arc. Weighted files follow the
//! matrix with exactly one `u v w` line per arc; `w` is a decimal or a
//! `num/den` fraction and is stored as `f64`. The writer emits rows in vertex
//! order and weight lines in lexicographic `(u,v)` order.

use std::fmt::Write as _;

use thiserror::Error;

use super::{DigraphError, SemiCompleteDigraph};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Meaningful lines as `(line number, column offset, content)`, with comments
/// and surrounding whitespace stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let col = body.len() - trimmed.len() + 1;
        let trimmed = trimmed.trim_end();
        (!trimmed.is_empty()).then_some((i + 1, col, trimmed))
    })
}

fn parse_weight(tok: &str) -> Option<f64> {
    match tok.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.parse().ok()?;
            let den: f64 = den.parse().ok()?;
            (den != 0.0).then(|| num / den)
        }
        None => tok.parse().ok(),
    }
}

/// Column (1-based) of the `idx`-th whitespace-separated token in `s`.
fn token_column(s: &str, base: usize, idx: usize) -> usize {
    let mut seen = 0;
    let mut in_tok = false;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            in_tok = false;
        } else if !in_tok {
            if seen == idx {
                return base + i;
            }
            seen += 1;
            in_tok = true;
        }
    }
    base + s.len()
}

pub fn read_digraph(text: &str) -> Result<SemiCompleteDigraph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, hc, header) = lines.next().ok_or_else(|| err(1, 1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"semicomplete") {
        return Err(err(hl, hc, "header must start with `semicomplete`"));
    }
    let n: usize = toks
        .get(1)
        .ok_or_else(|| err(hl, token_column(header, hc, 1), "missing vertex count"))?
        .parse()
        .map_err(|_| err(hl, token_column(header, hc, 1), "vertex count is not a non-negative integer"))?;
    let weighted = match toks.get(2) {
        None => false,
        Some(&"weighted") if toks.len() == 3 => true,
        Some(_) => return Err(err(hl, token_column(header, hc, 2), "expected `weighted` or end of header")),
    };

    let mut matrix = Vec::with_capacity(n);
    let mut last_line = hl;
    for u in 0..n {
        let (ln, col, row) = lines
            .next()
            .ok_or_else(|| err(last_line + 1, 1, format!("expected matrix row {u}")))?;
        last_line = ln;
        if row.chars().count() != n {
            return Err(err(ln, col, format!("row {u} has {} entries, expected {n}", row.chars().count())));
        }
        let mut r = Vec::with_capacity(n);
        for (v, c) in row.chars().enumerate() {
            match c {
                '0' => r.push(false),
                '1' => r.push(true),
                _ => return Err(err(ln, col + v, format!("unexpected character `{c}`"))),
            }
        }
        matrix.push(r);
    }
    let t = SemiCompleteDigraph::from_matrix(&matrix).map_err(|e| err(hl, hc, e.to_string()))?;

    if !weighted {
        if let Some((ln, col, _)) = lines.next() {
            return Err(err(ln, col, "trailing content after matrix"));
        }
        return Ok(t);
    }

    let mut weights = vec![vec![None; n]; n];
    for (ln, col, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(err(ln, col, "weight line must be `u v w`"));
        }
        let parse_vertex = |i: usize| -> Result<usize, ParseError> {
            toks[i]
                .parse::<usize>()
                .ok()
                .filter(|&x| x < n)
                .ok_or_else(|| err(ln, token_column(line, col, i), format!("invalid vertex `{}`", toks[i])))
        };
        let u = parse_vertex(0)?;
        let v = parse_vertex(1)?;
        let w = parse_weight(toks[2])
            .ok_or_else(|| err(ln, token_column(line, col, 2), format!("invalid weight `{}`", toks[2])))?;
        if weights[u][v].replace(w).is_some() {
            return Err(err(ln, col, format!("duplicate weight for arc ({u},{v})")));
        }
        if !t.has_arc(u, v) {
            return Err(err(ln, col, DigraphError::WeightOnMissingArc(u, v).to_string()));
        }
    }
    let eof = text.lines().count().max(1);
    t.with_weights(&weights).map_err(|e| err(eof, 1, e.to_string()))
}

pub fn write_digraph(t: &SemiCompleteDigraph) -> String {
    let n = t.n();
    let mut s = String::with_capacity(n * (n + 1) + 32);
    let _ = writeln!(s, "semicomplete {n}{}", if t.is_weighted() { " weighted" } else { "" });
    for u in 0..n {
        s.extend((0..n).map(|v| if t.has_arc(u, v) { '1' } else { '0' }));
        s.push('\n');
    }
    if t.is_weighted() {
        for (u, v) in t.arcs() {
            let _ = writeln!(s, "{u} {v} {}", t.weight(u, v));
        }
    }
    s
}
