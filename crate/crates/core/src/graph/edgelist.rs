//! Plain edge-list text: a header line `n m`, then `m` lines `u v`.
//! Blank lines and `#` comments are ignored.

use std::fmt::Write;

use super::{Graph, GraphError};

fn line_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::EdgeList {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let parse_pair = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
        let mut it = l.split_whitespace();
        let a = it
            .next()
            .ok_or_else(|| line_err(line, "missing first value"))?;
        let b = it
            .next()
            .ok_or_else(|| line_err(line, "missing second value"))?;
        if it.next().is_some() {
            return Err(line_err(line, "expected exactly two values"));
        }
        let a = a
            .parse()
            .map_err(|_| line_err(line, format!("not a vertex id: {a:?}")))?;
        let b = b
            .parse()
            .map_err(|_| line_err(line, format!("not a vertex id: {b:?}")))?;
        Ok((a, b))
    };

    let (hline, header) = rows.next().ok_or_else(|| line_err(1, "missing header"))?;
    let (n, m) = parse_pair(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (line, l) in rows {
        let (u, v) = parse_pair(line, l)?;
        if u >= n || v >= n {
            return Err(line_err(
                line,
                format!("edge ({u}, {v}) out of range for n = {n}"),
            ));
        }
        if u == v {
            return Err(line_err(line, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
        last = line;
    }
    if edges.len() != m {
        return Err(line_err(
            last,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

pub fn format_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
