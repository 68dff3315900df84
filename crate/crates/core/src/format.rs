//! Text formats: the coloured edge list and graph6.
//!
//! Edge list: UTF-8 lines, `p <n>` header first, then `e <u> <v>` or
//! `e <u> <v> <R|B>`. Lines starting with `#` and blank lines are ignored.
//! graph6 carries no colours and is accepted for plain graphs only.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredHost, Edge, Graph, PatternColouring};

struct EdgeLine {
    offset: usize,
    edge: Edge,
    colour: Option<Colour>,
}

struct EdgeList {
    n: usize,
    lines: Vec<EdgeLine>,
}

fn parse_index(tok: &str, offset: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(offset, format!("expected a vertex index, found {tok:?}")))
}

/// Offset of `tok` inside `text`; `tok` must be a subslice of it.
fn offset_of(text: &str, tok: &str) -> usize {
    tok.as_ptr() as usize - text.as_ptr() as usize
}

fn scan_edge_list(text: &str) -> Result<EdgeList> {
    let mut n: Option<usize> = None;
    let mut lines = Vec::new();
    let mut seen: std::collections::HashMap<Edge, (Option<Colour>, usize)> = std::collections::HashMap::new();
    let mut first_record = true;

    for line in text.split('\n') {
        let line_off = offset_of(text, line);
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = trimmed.split_ascii_whitespace();
        let kind = toks.next().expect("non-empty line");
        let kind_off = offset_of(text, kind);
        match kind {
            "p" => {
                if !first_record {
                    return Err(Error::parse(kind_off, "header must be the first line"));
                }
                let tok = toks
                    .next()
                    .ok_or_else(|| Error::parse(kind_off, "header needs a vertex count"))?;
                n = Some(parse_index(tok, offset_of(text, tok))?);
                if let Some(extra) = toks.next() {
                    return Err(Error::parse(offset_of(text, extra), "trailing token in header"));
                }
            }
            "e" => {
                let mut vertex = || -> Result<(usize, usize)> {
                    let tok = toks
                        .next()
                        .ok_or_else(|| Error::parse(line_off, "edge line needs two endpoints"))?;
                    let off = offset_of(text, tok);
                    Ok((parse_index(tok, off)?, off))
                };
                let (u, u_off) = vertex()?;
                let (v, v_off) = vertex()?;
                let colour = match toks.next() {
                    None => None,
                    Some("R") => Some(Colour::Red),
                    Some("B") => Some(Colour::Blue),
                    Some(tok) => {
                        return Err(Error::parse(
                            offset_of(text, tok),
                            format!("colour must be R or B, found {tok:?}"),
                        ))
                    }
                };
                if let Some(extra) = toks.next() {
                    return Err(Error::parse(offset_of(text, extra), "trailing token on edge line"));
                }
                if u == v {
                    return Err(Error::parse(line_off, format!("self-loop at vertex {u}")));
                }
                if let Some(n) = n {
                    for (x, off) in [(u, u_off), (v, v_off)] {
                        if x >= n {
                            return Err(Error::parse(off, format!("vertex {x} out of range for {n} vertices")));
                        }
                    }
                }
                let key = (u.min(v), u.max(v));
                if let Some(&(prev, prev_off)) = seen.get(&key) {
                    let message = match (prev, colour) {
                        (Some(a), Some(b)) if a != b => format!(
                            "edge {{{},{}}} coloured {a} at byte {prev_off} and {b} here",
                            key.0, key.1
                        ),
                        _ => format!("duplicate edge {{{},{}}}", key.0, key.1),
                    };
                    return Err(Error::parse(line_off, message));
                }
                seen.insert(key, (colour, line_off));
                lines.push(EdgeLine {
                    offset: line_off,
                    edge: key,
                    colour,
                });
            }
            other => {
                return Err(Error::parse(kind_off, format!("unknown record type {other:?}")));
            }
        }
        first_record = false;
    }

    let n = n.ok_or_else(|| Error::parse(0, "missing \"p <n>\" header"))?;
    Ok(EdgeList { n, lines })
}

fn build_graph(list: &EdgeList) -> Result<Graph> {
    Graph::from_edges(list.n, list.lines.iter().map(|l| l.edge)).map_err(|e| Error::parse(0, e.to_string()))
}

/// Parses a plain graph from edge-list text; colour tokens, if present, are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    build_graph(&scan_edge_list(text)?)
}

/// Parses a graph from edge-list text or graph6 (detected by content).
pub fn parse_graph(text: &str) -> Result<Graph> {
    if looks_like_edge_list(text) {
        parse_edge_list(text)
    } else {
        parse_graph6(text)
    }
}

fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_none_or(|l| l.starts_with("p ") || l.starts_with("e ") || l == "p" || l == "e")
}

/// Parses a coloured edge list; every edge line must carry `R` or `B`.
pub fn parse_coloured(text: &str) -> Result<PatternColouring> {
    let list = scan_edge_list(text)?;
    if let Some(l) = list.lines.iter().find(|l| l.colour.is_none()) {
        return Err(Error::parse(
            l.offset,
            format!("edge {{{},{}}} has no colour token", l.edge.0, l.edge.1),
        ));
    }
    let graph = build_graph(&list)?;
    let colours: std::collections::HashMap<Edge, Colour> = list
        .lines
        .iter()
        .map(|l| (l.edge, l.colour.expect("checked above")))
        .collect();
    Ok(PatternColouring::from_fn(graph, |u, v| colours[&(u, v)]))
}

/// Parses a coloured edge list describing a complete graph.
pub fn parse_host(text: &str) -> Result<ColouredHost> {
    let p = parse_coloured(text)?;
    ColouredHost::from_pattern(&p).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {}\n", g.order());
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

pub fn write_coloured(p: &PatternColouring) -> String {
    let mut out = format!("p {}\n", p.order());
    for (u, v, c) in p.coloured_edges() {
        writeln!(out, "e {u} {v} {c}").unwrap();
    }
    out
}

pub fn write_host(h: &ColouredHost) -> String {
    let n = h.order();
    let mut out = format!("p {n}\n");
    for u in 0..n {
        for v in u + 1..n {
            writeln!(out, "e {u} {v} {}", h.colour(u, v)).unwrap();
        }
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes a single graph6 string (an optional `>>graph6<<` header is allowed).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (GRAPH6_HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    if let Some(i) = body.iter().position(|&c| !(63..=126).contains(&c)) {
        return Err(Error::parse(base + i, format!("byte {:#04x} is not graph6", body[i])));
    }
    if body.is_empty() {
        return Err(Error::parse(base, "empty graph6 string"));
    }
    let (n, mut pos) = if body[0] != 126 {
        (usize::from(body[0] - 63), 1)
    } else if body.len() >= 2 && body[1] != 126 {
        if body.len() < 4 {
            return Err(Error::parse(base + body.len(), "truncated graph6 vertex count"));
        }
        (sixes(&body[1..4]), 4)
    } else {
        if body.len() < 8 {
            return Err(Error::parse(base + body.len(), "truncated graph6 vertex count"));
        }
        (sixes(&body[2..8]), 8)
    };

    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() - pos != need {
        return Err(Error::parse(
            base + pos,
            format!(
                "graph6 body has {} bytes, expected {need} for {n} vertices",
                body.len() - pos
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = body[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
            if k == pairs {
                break 'outer;
            }
        }
    }
    pos += need;
    let pad = pairs % 6;
    if pad != 0 && (body[pos - 1] - 63) & ((1 << (6 - pad)) - 1) != 0 {
        return Err(Error::parse(base + pos - 1, "non-zero graph6 padding bits"));
    }
    Graph::from_edges(n, edges).map_err(|e| Error::parse(base, e.to_string()))
}

fn sixes(bytes: &[u8]) -> usize {
    bytes.iter().fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63))
}

/// Encodes a graph as graph6 (no header, no newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(g.has_edge(u, v));
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Tone;

    #[test]
    fn graph6_k4() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!((g.order(), g.edge_count()), (4, 6));
        assert_eq!(write_graph6(&g), "C~");
        assert_eq!(parse_graph(">>graph6<<C~\n").unwrap(), g);
    }

    #[test]
    fn graph6_rejects_bad_lengths() {
        assert!(matches!(parse_graph6("C~~"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("C"), Err(Error::Parse { .. })));
        // padding bit set: n = 2 needs one pair, so only the top bit may be used
        assert!(matches!(parse_graph6("A@"), Err(Error::Parse { offset: 1, .. })));
        assert!(parse_graph6("A_").is_ok());
        assert!(parse_graph6("A?").is_ok());
        assert!(matches!(parse_graph6("AA"), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn edge_list_path() {
        let g = parse_graph("p 4\ne 0 1\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g, Graph::path(4));
    }

    #[test]
    fn self_loop_rejected() {
        let err = parse_edge_list("e 0 0").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 0, ref message } if message.contains("self-loop")));
    }

    #[test]
    fn out_of_range_reports_offset() {
        let err = parse_edge_list("p 3\ne 0 1\ne 1 3\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                offset: 14,
                message: "vertex 3 out of range for 3 vertices".into()
            }
        );
    }

    #[test]
    fn duplicate_edge_rejected() {
        let err = parse_edge_list("p 3\ne 0 1\ne 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 10, ref message } if message.contains("duplicate")));
    }

    #[test]
    fn missing_header() {
        assert!(matches!(
            parse_edge_list("e 0 1\n"),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(parse_edge_list("p 3\np 3\n").is_err());
    }

    #[test]
    fn coloured_rbr_path() {
        let p = parse_coloured("p 4\ne 0 1 R\ne 1 2 B\ne 2 3 R").unwrap();
        assert_eq!(p.tone(), Tone::new(2, 1));
        assert_eq!(p.colour_of(1, 2), Some(Colour::Blue));
    }

    #[test]
    fn coloured_red_triangle() {
        let p = parse_coloured("# triangle\np 3\ne 0 1 R\ne 0 2 R\ne 1 2 R\n").unwrap();
        assert_eq!(p.tone(), Tone::new(3, 0));
    }

    #[test]
    fn coloured_conflict() {
        let err = parse_coloured("e 0 1 R\ne 0 1 B").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 8, ref message } if message.contains("coloured R")));
    }

    #[test]
    fn coloured_missing_token() {
        let err = parse_coloured("p 3\ne 0 1 R\ne 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 12, .. }));
        assert!(parse_coloured("p 2\ne 0 1 G\n").is_err());
    }

    #[test]
    fn host_requires_complete_graph() {
        assert!(parse_host("p 3\ne 0 1 R\ne 1 2 B\n").is_err());
        let h = parse_host("p 3\ne 0 1 R\ne 1 2 B\ne 0 2 B\n").unwrap();
        assert_eq!((h.red_count(), h.blue_count()), (1, 2));
        assert_eq!(parse_host(&write_host(&h)).unwrap(), h);
    }
}
