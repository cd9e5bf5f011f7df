//! Plain-text graph files.
//!
//! ```text
//! # optional comments
//! n m
//! u v        (m lines, 0 ≤ u < v < n)
//! ```
//!
//! The canonical form has no comments and lists edges in ascending
//! lexicographic order, so equal graphs give byte-identical files.

use sha2::{Digest, Sha256};

use super::FormatError;
use crate::graph::Graph;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize), FormatError> {
    let mut it = s.split_whitespace();
    let mut next = |what: &str| -> Result<usize, FormatError> {
        let tok = it.next().ok_or_else(|| FormatError::new(line, format!("missing {what}")))?;
        tok.parse().map_err(|_| FormatError::new(line, format!("'{tok}' is not a nonnegative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(FormatError::new(line, format!("unexpected trailing field '{extra}'")));
    }
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| FormatError::new(0, "empty graph file"))?;
    let (n, m) = parse_pair(hline, header)?;
    let mut adj = vec![Vec::new(); n];
    let mut count = 0;
    for (line, l) in lines {
        let (u, v) = parse_pair(line, l)?;
        if u == v {
            return Err(FormatError::new(line, format!("self-loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(FormatError::new(line, format!("vertex {} out of range for n = {n}", u.max(v))));
        }
        adj[u].push((v, line));
        adj[v].push((u, line));
        count += 1;
    }
    if count != m {
        return Err(FormatError::new(hline, format!("header declares {m} edges, found {count}")));
    }
    let mut sorted = Vec::with_capacity(n);
    for (u, mut list) in adj.into_iter().enumerate() {
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(FormatError::new(w[1].1.max(w[0].1), format!("duplicate edge {{{}, {}}}", u.min(w[0].0), u.max(w[0].0))));
        }
        sorted.push(list.into_iter().map(|(v, _)| v).collect());
    }
    Ok(Graph::from_sorted_adjacency(sorted))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(12 * (g.edge_count() + 1));
    out.push_str(&format!("{} {}\n", g.vertex_count(), g.edge_count()));
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// SHA-256 of the canonical graph file, hex encoded.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(write_graph(g).as_bytes()))
}
