//! graph6 codec.
//!
//! A record is the vertex count `N(n)` followed by the upper triangle of the
//! adjacency matrix, read column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! packed big-endian into 6-bit groups, each stored as `group + 63`. The last
//! group is zero padded. Counts up to 62 use one byte; 63 and 64 use the
//! four-byte `~` form.

use crate::graph::{Graph, GraphError, MAX_VERTICES};

/// Optional file header written by nauty tools.
pub const HEADER: &str = ">>graph6<<";

const OFFSET: u8 = 63;
const LONG_MARKER: u8 = 126;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte {byte:#04x} at position {pos} is outside the graph6 range [63, 126]")]
    BadByte { byte: u8, pos: usize },
    #[error("record for {n} vertices needs {expected} data bytes, found {found}")]
    BadLength { n: usize, expected: usize, found: usize },
    #[error("nonzero padding bits in final byte")]
    NonzeroPadding,
    #[error("graphs on {0} vertices are not supported (limit {MAX_VERTICES})")]
    Unsupported(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 record. A leading `>>graph6<<` header and trailing
/// line terminators are ignored.
pub fn decode(record: &[u8]) -> Result<Graph, Graph6Error> {
    let mut rec = record.strip_prefix(HEADER.as_bytes()).unwrap_or(record);
    while let [rest @ .., b'\n' | b'\r'] = rec {
        rec = rest;
    }
    if rec.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(pos) = rec.iter().position(|b| !(OFFSET..=LONG_MARKER).contains(b)) {
        return Err(Graph6Error::BadByte { byte: rec[pos], pos });
    }

    let (n, body) = if rec[0] == LONG_MARKER {
        if rec.len() < 4 {
            return Err(Graph6Error::BadLength { n: 0, expected: 3, found: rec.len() - 1 });
        }
        if rec[1] == LONG_MARKER {
            // 8-byte form, n >= 258048
            return Err(Graph6Error::Unsupported(usize::MAX));
        }
        let n = rec[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | usize::from(b - OFFSET));
        (n, &rec[4..])
    } else {
        (usize::from(rec[0] - OFFSET), &rec[1..])
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::Unsupported(n));
    }
    let expected = data_len(n);
    if body.len() != expected {
        return Err(Graph6Error::BadLength { n, expected, found: body.len() });
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    let used = k % 6;
    if used != 0 {
        let last = body[body.len() - 1] - OFFSET;
        if last & ((1u8 << (6 - used)) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(g)
}

/// Convenience wrapper over [`decode`] for string input.
pub fn decode_str(record: &str) -> Result<Graph, Graph6Error> {
    decode(record.as_bytes())
}

/// Encodes a graph as a graph6 record (no header, no newline).
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + data_len(n));
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(LONG_MARKER);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + OFFSET));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
