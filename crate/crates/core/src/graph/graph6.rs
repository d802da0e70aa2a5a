//! graph6 codec (McKay's format): a size header `N(n)` followed by the upper
//! triangle of the adjacency matrix, column by column, packed six bits per
//! printable byte (value + 63) and zero-padded on the right.

use super::{Graph, GraphError, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        message: message.into(),
    }
}

fn sextet(bytes: &[u8], at: usize) -> Result<u32, GraphError> {
    match bytes.get(at) {
        Some(&b) if (63..=126).contains(&b) => Ok(u32::from(b - 63)),
        Some(&b) => Err(err(
            at,
            format!("byte 0x{b:02x} is outside the printable range"),
        )),
        None => Err(err(at, "unexpected end of input")),
    }
}

/// Decodes one graph6 word. An optional `>>graph6<<` prefix and trailing
/// line terminator are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if bytes.starts_with(HEADER.as_bytes()) {
        bytes = &bytes[HEADER.len()..];
        base = HEADER.len();
    }
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    let pos = |i: usize| base + i;
    let first = *bytes.first().ok_or_else(|| err(pos(0), "empty input"))?;
    if !(63..=126).contains(&first) {
        return Err(err(pos(0), format!("invalid size byte 0x{first:02x}")));
    }

    let (n, mut at) = if first < 126 {
        (usize::from(first - 63), 1)
    } else if bytes.get(1) != Some(&126) {
        let mut n = 0usize;
        for i in 1..4 {
            n = (n << 6) | sextet(bytes, i).map_err(|e| relocate(e, base))? as usize;
        }
        if n < 63 {
            return Err(err(pos(0), format!("long size form used for n = {n}")));
        }
        (n, 4)
    } else {
        let mut n = 0usize;
        for i in 2..8 {
            n = (n << 6) | sextet(bytes, i).map_err(|e| relocate(e, base))? as usize;
        }
        if n <= 258_047 {
            return Err(err(
                pos(0),
                format!("extra-long size form used for n = {n}"),
            ));
        }
        (n, 8)
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }

    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    if bytes.len() != at + expected {
        return Err(err(
            pos(bytes.len().min(at + expected)),
            format!(
                "expected {expected} data bytes for n = {n}, found {}",
                bytes.len().saturating_sub(at)
            ),
        ));
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0;
    let mut word = 0u32;
    let mut left = 0;
    for v in 1..n {
        for u in 0..v {
            if left == 0 {
                word = sextet(bytes, at).map_err(|e| relocate(e, base))?;
                at += 1;
                left = 6;
            }
            left -= 1;
            if (word >> left) & 1 == 1 {
                g.adj[u] |= super::bit(v);
                g.adj[v] |= super::bit(u);
            }
            k += 1;
        }
    }
    debug_assert_eq!(k, pairs);
    if left > 0 && word & ((1 << left) - 1) != 0 {
        return Err(err(pos(at - 1), "nonzero padding bits"));
    }
    Ok(g)
}

fn relocate(e: GraphError, base: usize) -> GraphError {
    match e {
        GraphError::Graph6 { offset, message } => GraphError::Graph6 {
            offset: offset + base,
            message,
        },
        other => other,
    }
}

/// Encodes a graph as a graph6 word (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + n * n / 12 + 1);
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut word = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            word = (word << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(word + 63);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}
