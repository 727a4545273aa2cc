//! graph6 short form (orders up to 62).
//!
//! A graph6 line is one header byte `n + 63` followed by the upper triangle
//! of the adjacency matrix in column order `(0,1), (0,2), (1,2), (0,3), ...`,
//! packed six bits per byte (most significant first) and offset by 63.

use alloc::vec::Vec;
use core::fmt;

use super::{Graph, GraphError};

/// Largest order expressible with a one-byte graph6 header.
pub const GRAPH6_MAX_ORDER: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    Empty,
    /// Byte outside the printable range 63..=126.
    OutOfRange(u8),
    /// Header byte does not encode an order in 1..=62 (includes the long
    /// form marker `~`).
    BadHeader(u8),
    /// Leading `:` of a sparse6 line.
    Sparse6,
    /// Fewer data bytes than the header requires.
    Truncated { expected: usize, found: usize },
    /// More data bytes than the header allows.
    TrailingData,
    /// Padding bits in the last byte are not zero.
    NonZeroPadding,
}

/// A graph6 decoding failure at byte `offset` of the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Graph6Error {
    pub offset: usize,
    pub kind: Graph6ErrorKind,
}

impl fmt::Display for Graph6Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph6 error at byte {}: ", self.offset)?;
        match self.kind {
            Graph6ErrorKind::Empty => f.write_str("empty input"),
            Graph6ErrorKind::OutOfRange(b) => write!(f, "byte 0x{b:02x} outside 63..=126"),
            Graph6ErrorKind::BadHeader(b) => {
                write!(f, "header byte 0x{b:02x} is not a short-form order (1..=62)")
            }
            Graph6ErrorKind::Sparse6 => f.write_str("sparse6 input is not supported"),
            Graph6ErrorKind::Truncated { expected, found } => {
                write!(f, "truncated bit stream: expected {expected} data bytes, found {found}")
            }
            Graph6ErrorKind::TrailingData => f.write_str("unexpected trailing data"),
            Graph6ErrorKind::NonZeroPadding => f.write_str("nonzero padding bits"),
        }
    }
}

impl core::error::Error for Graph6Error {}

fn data_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Decodes one graph6 line. A trailing `\n` or `\r\n` is ignored.
pub fn parse_graph6(line: &[u8]) -> Result<Graph, Graph6Error> {
    let line = line.strip_suffix(b"\n").unwrap_or(line);
    let line = line.strip_suffix(b"\r").unwrap_or(line);
    let err = |offset, kind| Graph6Error { offset, kind };

    let (&header, body) = line.split_first().ok_or(err(0, Graph6ErrorKind::Empty))?;
    if header == b':' {
        return Err(err(0, Graph6ErrorKind::Sparse6));
    }
    if !(63..=126).contains(&header) {
        return Err(err(0, Graph6ErrorKind::OutOfRange(header)));
    }
    let n = usize::from(header - 63);
    if n == 0 || n > GRAPH6_MAX_ORDER {
        return Err(err(0, Graph6ErrorKind::BadHeader(header)));
    }
    let expected = data_len(n);
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(pos + 1, Graph6ErrorKind::OutOfRange(body[pos])));
    }
    if body.len() < expected {
        return Err(err(line.len(), Graph6ErrorKind::Truncated { expected, found: body.len() }));
    }
    if body.len() > expected {
        return Err(err(expected + 1, Graph6ErrorKind::TrailingData));
    }

    let mut g = Graph::empty(n).expect("order checked above");
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let last = body[expected - 1] - 63;
        let pad = 6 - bit % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(expected, Graph6ErrorKind::NonZeroPadding));
        }
    }
    Ok(g)
}

/// Encodes a graph in graph6 short form (no line terminator).
pub fn encode_graph6(g: &Graph) -> Result<Vec<u8>, GraphError> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(GraphError::UnsupportedOrder { order: n, max: GRAPH6_MAX_ORDER });
    }
    let mut out = Vec::with_capacity(1 + data_len(n.max(1)));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
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
    Ok(out)
}
