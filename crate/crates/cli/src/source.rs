//! Named graph constructors and graph input.
//!
//! Grammar, tried in this order:
//!
//! ```text
//! Kn:<n> | K<n>                complete graph
//! Cn:<n> | C<n>                cycle
//! Pn:<n> | P<n>                path
//! CnPow:<n>,<k> | C<n>^<k>     k-th power of the n-cycle
//! StrongProd:<spec>,<spec>     strong product
//! <atom>x<atom>                strong product of two named graphs, e.g. C5xK2
//! Petersen | Q3
//! <catalog key>                e.g. H2, G0, K5minus
//! <graph6>
//! ```

use fracbrooks::graph::{cycle_power, make_complete, make_cube, make_cycle, make_path, make_petersen, strong_product};
use fracbrooks::io::{from_edge_list, from_graph6};
use fracbrooks::patterns::pattern;
use fracbrooks::{Error, Graph, Result};

fn number(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn pair(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.split_once(',')?;
    Some((number(a)?, number(b)?))
}

/// Simple constructors that never clash with graph6.
fn atom(s: &str) -> Option<Result<Graph>> {
    let s = s.trim();
    if let Some(r) = s.strip_prefix("Kn:") {
        return number(r).map(make_complete);
    }
    if let Some(r) = s.strip_prefix("Cn:") {
        return number(r).map(make_cycle);
    }
    if let Some(r) = s.strip_prefix("Pn:") {
        return number(r).map(make_path);
    }
    if let Some(r) = s.strip_prefix("CnPow:") {
        return pair(r).map(|(n, k)| cycle_power(n, k));
    }
    if let Some((base, k)) = s.split_once('^') {
        if let (Some(n), Some(k)) = (base.strip_prefix('C').and_then(number), number(k)) {
            return Some(cycle_power(n, k));
        }
        return None;
    }
    match s {
        "Petersen" => return Some(Ok(make_petersen())),
        "Q3" => return Some(Ok(make_cube())),
        _ => {}
    }
    let (head, rest) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
    let n = number(rest)?;
    match head {
        "K" => Some(make_complete(n)),
        "C" => Some(make_cycle(n)),
        "P" => Some(make_path(n)),
        _ => None,
    }
}

/// Parses a graph specification; see the module docs for the grammar.
pub fn parse_spec(spec: &str) -> Result<Graph> {
    let s = spec.trim();
    if s.is_empty() {
        return Err(Error::Parse {
            line: 1,
            offset: 0,
            message: "empty graph specification".into(),
        });
    }
    if s.contains('\n') {
        return parse_text(s);
    }
    if let Some(r) = s.strip_prefix("StrongProd:") {
        // graph6 never contains a comma, but constructor arguments may
        for (i, _) in r.match_indices(',') {
            if let (Ok(a), Ok(b)) = (parse_spec(&r[..i]), parse_spec(&r[i + 1..])) {
                return Ok(strong_product(&a, &b));
            }
        }
        return Err(Error::Parse {
            line: 1,
            offset: "StrongProd:".len(),
            message: "expected StrongProd:<spec>,<spec>".into(),
        });
    }
    if let Some(g) = atom(s) {
        return g;
    }
    if let Some((a, b)) = s.split_once('x') {
        if let (Some(a), Some(b)) = (atom(a), atom(b)) {
            return Ok(strong_product(&a?, &b?));
        }
    }
    if let Ok(p) = pattern(s) {
        return Ok(p.graph);
    }
    from_graph6(s)
}

fn is_edge_list_header(line: &str) -> bool {
    let parts: Vec<&str> = line.split_whitespace().collect();
    parts.len() == 2 && parts.iter().all(|p| number(p).is_some())
}

/// Reads one graph from text: edge-list format when the first content line
/// is an `n m` header, otherwise a single graph6 line.
pub fn parse_text(text: &str) -> Result<Graph> {
    let mut content = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((line, first)) = content.next() else {
        return Err(Error::Parse {
            line: 1,
            offset: 0,
            message: "no graph in input".into(),
        });
    };
    if is_edge_list_header(first) {
        return from_edge_list(text);
    }
    if let Some((extra, _)) = content.next() {
        return Err(Error::Parse {
            line: extra,
            offset: 0,
            message: "expected a single graph6 line".into(),
        });
    }
    fracbrooks::io::from_graph6_line(first, line)
}
