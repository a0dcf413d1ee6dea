//! Graph file formats: graph6 and plain edge-list text.
//!
//! graph6 follows the published format: N(n) followed by the upper
//! triangle of the adjacency matrix in column-major order, packed into
//! 6-bit groups offset by 63. The optional `>>graph6<<` header is
//! accepted on read and never written.

use crate::graph::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("malformed edge list: {0}")]
    MalformedEdgeList(String),
    #[error("invalid graph data: {0}")]
    InvalidGraph(#[from] GraphError),
}

const G6_HEADER: &str = ">>graph6<<";

/// Encodes a graph in graph6 (body only, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).unwrap()
}

/// Decodes one graph6 string (header and surrounding whitespace allowed).
pub fn from_graph6(s: &str) -> Result<Graph, FormatError> {
    let s = s.trim();
    let s = s.strip_prefix(G6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::MalformedGraph6("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::MalformedGraph6(format!("byte {b} out of range")));
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            if bytes.len() < 8 {
                return Err(FormatError::MalformedGraph6("truncated size field".into()));
            }
            let mut n = 0usize;
            for &b in &bytes[2..8] {
                n = (n << 6) | (b - 63) as usize;
            }
            (n, &bytes[8..])
        } else {
            if bytes.len() < 4 {
                return Err(FormatError::MalformedGraph6("truncated size field".into()));
            }
            let mut n = 0usize;
            for &b in &bytes[1..4] {
                n = (n << 6) | (b - 63) as usize;
            }
            (n, &bytes[4..])
        }
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    let nbits = n * (n.saturating_sub(1)) / 2;
    let expect = nbits.div_ceil(6);
    if body.len() != expect {
        return Err(FormatError::MalformedGraph6(format!(
            "body length {} for n = {n}, expected {expect}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = (body[bit / 6] - 63) as usize;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    // trailing pad bits must be zero
    for extra in nbits..expect * 6 {
        let byte = (body[extra / 6] - 63) as usize;
        if byte >> (5 - extra % 6) & 1 == 1 {
            return Err(FormatError::MalformedGraph6("nonzero padding".into()));
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// Writes the plain edge-list format: "n m" then one "a b" line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Reads the edge-list format; blank lines and '#' comments are skipped.
pub fn from_edge_list(s: &str) -> Result<Graph, FormatError> {
    let mut lines = s
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| FormatError::MalformedEdgeList("missing header line".into()))?;
    let mut it = header.split_whitespace();
    let parse = |tok: Option<&str>| -> Result<usize, FormatError> {
        tok.ok_or_else(|| FormatError::MalformedEdgeList("short header".into()))?
            .parse()
            .map_err(|e| FormatError::MalformedEdgeList(format!("bad number: {e}")))
    };
    let n = parse(it.next())?;
    let m = parse(it.next())?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let a = parse(it.next())?;
        let b = parse(it.next())?;
        edges.push((a, b));
    }
    if edges.len() != m {
        return Err(FormatError::MalformedEdgeList(format!(
            "header says {m} edges, found {}",
            edges.len()
        )));
    }
    Ok(Graph::new(n, &edges)?)
}

/// Guesses the format from content: a leading digit means edge list.
pub fn from_auto(s: &str) -> Result<Graph, FormatError> {
    let t = s.trim_start();
    if t.starts_with(|c: char| c.is_ascii_digit()) && !t.starts_with(G6_HEADER) {
        from_edge_list(s)
    } else {
        from_graph6(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn triangle_encodes_to_bw() {
        // upper triangle 111 -> 111000 -> 56+63 = 'w', N(3) = 'B'
        assert_eq!(to_graph6(&triangle()), "Bw");
    }

    #[test]
    fn k4_round_trip() {
        assert_eq!(from_graph6(&to_graph6(&k4())).unwrap(), k4());
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(from_graph6(""), Err(FormatError::MalformedGraph6(_))));
    }

    #[test]
    fn header_accepted_on_read() {
        assert_eq!(from_graph6(">>graph6<<Bw").unwrap(), triangle());
    }

    #[test]
    fn truncated_body_rejected() {
        assert!(matches!(from_graph6("E"), Err(FormatError::MalformedGraph6(_))));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = k4();
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_comments_and_blanks() {
        let g = from_edge_list("# a triangle\n3 3\n0 1\n\n1 2 # last two\n0 2\n").unwrap();
        assert_eq!(g, triangle());
    }

    #[test]
    fn auto_detects_both() {
        assert_eq!(from_auto("Bw").unwrap(), triangle());
        assert_eq!(from_auto(&to_edge_list(&k4())).unwrap(), k4());
    }
}
