//! Text formats: whitespace edge lists, graph6, and Graphviz DOT output.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Orientation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: self-loop on vertex '{label}'")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: expected 'u v', found {tokens} tokens")]
    TokenCount { line: usize, tokens: usize },
    #[error("graph6 offset {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses a whitespace-separated edge list.
///
/// Each non-blank line is `u v`. Text after `#` is a comment. Vertex tokens are
/// arbitrary strings mapped to dense ids in first-seen order. A line holding a
/// single token declares an isolated vertex.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let mut id_of = |tok: &str| -> usize {
            *ids.entry(tok.to_string()).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() - 1
            })
        };
        match toks[..] {
            [] => {}
            [v] => {
                id_of(v);
            }
            [u, v] => {
                if u == v {
                    return Err(ParseError::SelfLoop {
                        line,
                        label: u.to_string(),
                    });
                }
                let a = id_of(u);
                let b = id_of(v);
                edges.push((a, b));
            }
            _ => {
                return Err(ParseError::TokenCount {
                    line,
                    tokens: toks.len(),
                })
            }
        }
    }
    Ok(Graph::with_labels(labels, &edges)?)
}

/// Serializes as an edge list using vertex labels; isolated vertices get
/// their own single-token line.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            let _ = writeln!(out, "{}", g.label(v));
        }
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes one graph6 line. Vertex labels are the ids `0..n`.
pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let body = line.trim_end_matches(['\n', '\r']);
    let (skip, body) = match body.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (GRAPH6_HEADER.len(), rest),
        None => (0, body),
    };
    let bytes = body.as_bytes();
    let err = |offset: usize, reason: &str| ParseError::Graph6 {
        offset: offset + skip,
        reason: reason.to_string(),
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, "byte outside the printable range 63..=126"));
        }
    }
    let (n, mut pos) = match bytes {
        [] => return Err(err(0, "empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(err(2, "truncated 36-bit vertex count"));
            }
            (decode_sextets(&rest[..6]), 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err(1, "truncated 18-bit vertex count"));
            }
            (decode_sextets(&rest[..3]), 4)
        }
        [b, ..] => ((*b - 63) as usize, 1),
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if bytes.len() != pos + bytes_needed {
        return Err(err(
            bytes.len().min(pos + bytes_needed),
            &format!(
                "expected {} adjacency bytes for {} vertices, found {}",
                bytes_needed,
                n,
                bytes.len().saturating_sub(pos)
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            if bit >= bits_needed {
                break 'outer;
            }
            let byte = bytes[pos + bit / 6] - 63;
            if byte & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    pos += bytes_needed;
    if bits_needed % 6 != 0 {
        let last = bytes[pos - 1] - 63;
        let pad = 6 - bits_needed % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(pos - 1, "nonzero padding bits"));
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

fn decode_sextets(bytes: &[u8]) -> usize {
    bytes
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
}

/// Encodes in graph6 (no header). Labels are not preserved.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders `g` as DOT. With an orientation the output is a `digraph` with one
/// arc per edge; otherwise a `graph`. Highlighted vertices are filled.
/// Vertices and edges appear in id order.
pub fn emit_dot(
    g: &Graph,
    orientation: Option<&Orientation>,
    highlight: Option<&[usize]>,
) -> String {
    let mut marked = vec![false; g.n()];
    if let Some(h) = highlight {
        for &v in h {
            if v < g.n() {
                marked[v] = true;
            }
        }
    }
    let (kind, op) = if orientation.is_some() {
        ("digraph", "->")
    } else {
        ("graph", "--")
    };
    let mut out = format!("{kind} G {{\n");
    for v in 0..g.n() {
        if marked[v] {
            let _ = writeln!(
                out,
                "  {} [style=filled, fillcolor=lightblue];",
                dot_id(g.label(v))
            );
        } else {
            let _ = writeln!(out, "  {};", dot_id(g.label(v)));
        }
    }
    for e in 0..g.m() {
        let (x, y) = match orientation {
            Some(o) => o.arc(g, e),
            None => g.edges()[e],
        };
        let _ = writeln!(out, "  {} {op} {};", dot_id(g.label(x)), dot_id(g.label(y)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_path() {
        let g = parse_edge_list("a b\nb c").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.labels(), &["a", "b", "c"]);
    }

    #[test]
    fn edge_list_duplicates_and_comments() {
        let g = parse_edge_list("# header\n1 2  # trailing\n2 1\n\n").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        assert_eq!(
            parse_edge_list("a b\nc c\n"),
            Err(ParseError::SelfLoop {
                line: 2,
                label: "c".into()
            })
        );
        assert_eq!(
            parse_edge_list("a b\n\nx y z\n"),
            Err(ParseError::TokenCount { line: 3, tokens: 3 })
        );
    }

    #[test]
    fn figure_two_graph_is_prism() {
        let g = parse_edge_list("1 3\n3 5\n5 1\n2 4\n4 6\n6 2\n1 4\n3 6\n5 2\n").unwrap();
        assert_eq!((g.n(), g.m()), (6, 9));
        // complement of the prism is a 6-cycle
        let c = g.complement();
        assert_eq!(c.m(), 6);
        assert!((0..6).all(|v| c.degree(v) == 2));
        assert!(c.is_connected());
    }

    #[test]
    fn graph6_known_strings() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), &[(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(to_graph6(&g), "D?{");
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!((k4.n(), k4.m()), (4, 6));
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        let dqc = parse_graph6("DQc").unwrap();
        assert_eq!(dqc.edges(), &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(parse_graph6(">>graph6<<D?{").unwrap(), g);
    }

    #[test]
    fn graph6_c5_matches_edge_list() {
        let c5 = parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 0").unwrap();
        let line = to_graph6(&c5);
        let back = parse_graph6(&line).unwrap();
        assert_eq!((back.n(), back.m()), (5, 5));
        assert_eq!(back.edges(), c5.edges());
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(matches!(parse_graph6("D?"), Err(ParseError::Graph6 { .. })));
        assert!(matches!(
            parse_graph6("D?{a"),
            Err(ParseError::Graph6 { .. })
        ));
        assert!(matches!(
            parse_graph6("D? {"),
            Err(ParseError::Graph6 { offset: 2, .. })
        ));
        // 'D' + 10 bits; last two padding bits set
        assert!(matches!(
            parse_graph6("D?~"),
            Err(ParseError::Graph6 { .. })
        ));
        assert!(matches!(parse_graph6(""), Err(ParseError::Graph6 { .. })));
    }

    #[test]
    fn graph6_large_n_header() {
        let g = Graph::path(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn dot_undirected_p3() {
        let g = parse_edge_list("a b\nb c").unwrap();
        let dot = emit_dot(&g, None, None);
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert!(dot.contains("\"a\" -- \"b\";"));
    }

    #[test]
    fn dot_oriented_p3_with_highlight() {
        let g = parse_edge_list("a b\nb c").unwrap();
        let o = Orientation::from_arcs(&g, &[(0, 1), (2, 1)]).unwrap();
        let dot = emit_dot(&g, Some(&o), Some(&[1]));
        assert!(dot.starts_with("digraph G {"));
        assert!(dot.contains("\"a\" -> \"b\";"));
        assert!(dot.contains("\"c\" -> \"b\";"));
        assert!(dot.contains("\"b\" [style=filled"));
        assert_eq!(dot, emit_dot(&g, Some(&o), Some(&[1])));
    }
}
