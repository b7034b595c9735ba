//! graph6 and plain edge-list text formats.
//!
//! graph6 follows the byte layout used by nauty: `N(n)` then the upper
//! triangle of the adjacency matrix column by column, six bits per byte,
//! each byte offset by 63.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn parse_err(line: usize, offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        offset,
        message: message.into(),
    }
}

/// Encodes a graph as a graph6 string (no header, no newline).
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
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Decodes one graph6 string. `line` is only used in error reports.
pub fn from_graph6_line(s: &str, line: usize) -> Result<Graph> {
    let s = s.strip_suffix('\n').unwrap_or(s);
    let s = s.strip_suffix('\r').unwrap_or(s);
    let (start, bytes) = match s.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, s.as_bytes()),
    };
    if bytes.is_empty() {
        return Err(parse_err(line, start, "empty graph6 string"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(line, start + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(parse_err(line, start + bytes.len(), "truncated 8-byte size field"));
        }
        let n = bytes[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(parse_err(line, start + bytes.len(), "truncated 4-byte size field"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    let body_start = start + (bytes.len() - body.len());
    if body.len() != need {
        return Err(parse_err(
            line,
            body_start + body.len().min(need),
            format!("expected {need} adjacency bytes for n={n}, found {}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    if pairs % 6 != 0 {
        let last = body[need - 1] - 63;
        let pad = 6 - pairs % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(line, body_start + need - 1, "non-zero padding bits"));
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    from_graph6_line(s, 1)
}

/// Reads a stream of graph6 lines. Blank lines are skipped; every other line
/// yields either a graph or the parse error for that line.
pub fn read_graph6_lines(text: &str) -> Vec<Result<(String, Graph)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let l = l.trim();
            from_graph6_line(l, i + 1).map(|g| (l.strip_prefix(HEADER).unwrap_or(l).to_string(), g))
        })
        .collect()
}

/// Edge-list text: a header `n m`, then `m` lines `u v`. Lines starting
/// with `#` are comments.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 0, "missing `n m` header"))?;
    let nums = |line: usize, l: &str| -> Result<(usize, usize)> {
        let mut it = l.split_whitespace();
        let mut next = |what: &str| -> Result<usize> {
            it.next()
                .ok_or_else(|| parse_err(line, l.len(), format!("missing {what}")))?
                .parse()
                .map_err(|_| parse_err(line, 0, format!("invalid {what}")))
        };
        let a = next("first number")?;
        let b = next("second number")?;
        Ok((a, b))
    };
    let (n, m) = nums(hl, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = nums(line, l)?;
        if u >= n || v >= n {
            return Err(parse_err(line, 0, format!("vertex out of range for n={n}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            hl,
            0,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_path, Graph};

    #[test]
    fn known_encodings() {
        // Reference strings produced by nauty's showg/geng conventions.
        assert_eq!(to_graph6(&make_complete(2).unwrap()), "A_");
        assert_eq!(to_graph6(&make_complete(4).unwrap()), "C~");
        assert_eq!(to_graph6(&make_cycle(5).unwrap()), "Dhc");
        assert_eq!(to_graph6(&make_path(3).unwrap()), "Bg");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
    }

    #[test]
    fn decode_known() {
        assert_eq!(from_graph6("Dhc").unwrap(), make_cycle(5).unwrap());
        assert_eq!(from_graph6(">>graph6<<C~").unwrap(), make_complete(4).unwrap());
    }

    #[test]
    fn large_size_field() {
        let g = crate::graph::cycle_power(70, 3).unwrap();
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_reports_offset() {
        match from_graph6_line("D h", 7) {
            Err(Error::Parse { line, offset, .. }) => assert_eq!((line, offset), (7, 1)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(from_graph6("Dh"), Err(Error::Parse { .. })));
        assert!(matches!(from_graph6("Dhcc"), Err(Error::Parse { .. })));
        assert!(matches!(from_graph6(""), Err(Error::Parse { .. })));
        // padding bits must be zero: C5 needs 10 bits, 2 of padding
        assert!(matches!(from_graph6("Dhd"), Err(Error::Parse { .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = make_cycle(6).unwrap();
        let text = to_edge_list(&g);
        assert!(text.starts_with("6 6\n"));
        assert_eq!(from_edge_list(&text).unwrap(), g);
        assert_eq!(
            from_edge_list("# comment\n3 1\n0 2\n").unwrap().edge_count(),
            1
        );
        assert!(from_edge_list("3 2\n0 1\n").is_err());
        assert!(from_edge_list("3 1\n0 5\n").is_err());
    }
}
