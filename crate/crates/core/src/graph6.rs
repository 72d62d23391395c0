//! graph6 encoding (McKay). Only the single-graph, undirected form is
//! supported; sparse6 and digraph6 are not.

use crate::error::{Graph6Error, Graph6ErrorKind, GraphError};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &[u8] = b">>graph6<<";

fn err(offset: usize, kind: Graph6ErrorKind) -> Graph6Error {
    Graph6Error { offset, kind }
}

/// Decode one graph6 string. An optional `>>graph6<<` header and a trailing
/// newline are accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let mut start = 0;
    if text.starts_with(HEADER) {
        start = HEADER.len();
    }
    let mut end = text.len();
    while end > start && matches!(text[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let body = &text[..end];
    if start >= end {
        return Err(err(start, Graph6ErrorKind::Empty));
    }
    for (i, &b) in body.iter().enumerate().skip(start) {
        if !(63..=126).contains(&b) {
            return Err(err(i, Graph6ErrorKind::InvalidByte(b)));
        }
    }

    let (n, mut pos) = if body[start] < 126 {
        ((body[start] - 63) as usize, start + 1)
    } else {
        if body.len() < start + 4 {
            return Err(err(body.len(), Graph6ErrorKind::Truncated));
        }
        if body[start + 1] == 126 {
            // 6-byte size form: always larger than we support
            return Err(err(start + 1, Graph6ErrorKind::TooLarge(usize::MAX)));
        }
        let n = body[start + 1..start + 4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, start + 4)
    };
    if n > MAX_VERTICES {
        return Err(err(start, Graph6ErrorKind::TooLarge(n)));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if body.len() < pos + nbytes {
        return Err(err(body.len(), Graph6ErrorKind::Truncated));
    }
    if body.len() > pos + nbytes {
        return Err(err(pos + nbytes, Graph6ErrorKind::TrailingGarbage));
    }

    let mut g = Graph::new(n);
    let mut k = 0;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = body[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            k += 1;
            if k == nbits {
                break 'outer;
            }
        }
    }
    if nbits % 6 != 0 {
        let last = body[pos + nbytes - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(pos + nbytes - 1, Graph6ErrorKind::NonzeroPadding));
        }
    }
    pos += nbytes;
    debug_assert_eq!(pos, body.len());
    Ok(g)
}

pub fn parse_graph6_str(text: &str) -> Result<Graph, Graph6Error> {
    parse_graph6(text.trim().as_bytes())
}

/// Encode `g` as graph6 (no header, no newline). Only the single-byte size
/// form is produced, so `n` must be at most 62.
pub fn emit_graph6(g: &Graph) -> Result<Vec<u8>, GraphError> {
    let n = g.n();
    if n > 62 {
        return Err(GraphError::TooManyVertices { n, max: 62 });
    }
    let mut out = Vec::with_capacity(1 + (n * n) / 12 + 1);
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
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
    Ok(out)
}

/// graph6 as a `String`; panics only for `n > 62`.
pub fn to_graph6(g: &Graph) -> String {
    String::from_utf8(emit_graph6(g).expect("graph too large for graph6")).unwrap()
}
