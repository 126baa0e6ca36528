//! Text formats: the edge-list format and graph6.
//!
//! Edge list: the first non-comment line is `n m`, followed by exactly `m`
//! lines `u v` with 0-based vertex indices. `#` starts a comment. Parallel
//! edges are written by repetition; loops are rejected.
//!
//! graph6 is the standard ASCII encoding of simple graphs. Which format a
//! text uses is decided by its content.

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

const GRAPH6_HEADER: &str = ">>graph6<<";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty, comment-stripped lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_pair(line_no: usize, line: &str, what: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| parse_err(line_no, format!("{what}: expected two integers")))?
            .parse::<usize>()
            .map_err(|e| parse_err(line_no, format!("{what}: {e}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(parse_err(line_no, format!("{what}: trailing tokens")));
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header line \"n m\""))?;
    let (n, m) = parse_pair(header_line, header, "header")?;
    let mut pairs = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line_no, line) in lines {
        if pairs.len() == m {
            return Err(parse_err(line_no, format!("more than the declared {m} edges")));
        }
        let (u, v) = parse_pair(line_no, line, "edge")?;
        if u >= n || v >= n {
            return Err(parse_err(
                line_no,
                format!("vertex {} out of range for n = {n}", u.max(v)),
            ));
        }
        if u == v {
            return Err(parse_err(line_no, format!("loop at vertex {u}")));
        }
        pairs.push((u, v));
        last_line = line_no;
    }
    if pairs.len() != m {
        return Err(parse_err(
            last_line + 1,
            format!("expected {m} edges, found {}", pairs.len()),
        ));
    }
    Multigraph::new(n, pairs)
}

/// Edge-list text; edges in id order with endpoints as stored.
pub fn to_edge_list(g: &Multigraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u, e.v));
    }
    out
}

/// Decodes one graph6 line. Edges come out sorted by `(u, v)` with `u < v`.
pub fn parse_graph6_line(line: &str, line_no: usize) -> Result<Multigraph> {
    let line = line.trim();
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.first() == Some(&b':') || bytes.first() == Some(&b'&') {
        return Err(parse_err(line_no, "sparse6 and digraph6 are not supported"));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(line_no, format!("invalid graph6 byte {b:#04x}")));
    }
    let (n, body) = match bytes {
        [] => return Err(parse_err(line_no, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(parse_err(line_no, "truncated graph6 size"));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(line_no, "truncated graph6 size"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if body.len() != bytes_needed {
        return Err(parse_err(
            line_no,
            format!(
                "graph6 body has {} bytes, expected {bytes_needed} for n = {n}",
                body.len()
            ),
        ));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut pairs = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                pairs.push((u, v));
            }
            k += 1;
        }
    }
    pairs.sort_unstable();
    Multigraph::new(n, pairs)
}

/// graph6 encoding (no header). Fails on graphs with parallel edges.
pub fn to_graph6(g: &Multigraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::InvalidArgument(
            "graph6 cannot represent parallel edges".into(),
        ));
    }
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let adj = g.simple_adjacency();
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | adj[u].binary_search(&v).is_ok() as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

// graph6 bytes start at '?', so a leading digit can only be an edge-list
// header; malformed headers then get the edge-list error message.
fn looks_like_edge_list(line: &str) -> bool {
    line.starts_with(|c: char| c.is_ascii_digit())
}

/// Parses a single graph in either format.
pub fn parse(text: &str) -> Result<Multigraph> {
    let mut graphs = parse_all(text)?;
    match graphs.len() {
        1 => Ok(graphs.pop().unwrap()),
        0 => Err(parse_err(1, "no graph found")),
        k => Err(parse_err(1, format!("expected one graph, found {k}"))),
    }
}

/// Parses every graph in a text: one edge-list graph, or any number of
/// graph6 lines (blank lines and `#` comments skipped).
pub fn parse_all(text: &str) -> Result<Vec<Multigraph>> {
    parse_all_lenient(text)?.into_iter().collect()
}

/// Like [`parse_all`] but keeps per-graph failures so a corpus run can report
/// them individually. Fails outright only if an edge-list text is malformed.
pub fn parse_all_lenient(text: &str) -> Result<Vec<Result<Multigraph>>> {
    let first = content_lines(text).next();
    match first {
        None => Ok(Vec::new()),
        Some((_, line)) if looks_like_edge_list(line) => Ok(vec![parse_edge_list(text)]),
        Some(_) => Ok(content_lines(text)
            .map(|(no, line)| parse_graph6_line(line, no))
            .collect()),
    }
}
