//! Line-oriented graph6 reading with line numbers.

use std::fmt;
use std::io::{self, BufRead};

use specgraph_core::graph::{parse_graph6, Graph6Error};
use specgraph_core::Graph;

/// Optional header written by some graph6 producers.
const HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    /// 1-based line number.
    pub line: u64,
    pub error: Graph6Error,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

impl std::error::Error for LineError {}

/// One parsed (or unparseable) non-blank line.
pub type Parsed = (u64, Result<Graph, Graph6Error>);

/// Parses a single line, tolerating a leading `>>graph6<<` header and
/// surrounding whitespace.
pub fn parse_line(raw: &[u8]) -> Option<Result<Graph, Graph6Error>> {
    let mut s = raw.strip_prefix(HEADER).unwrap_or(raw);
    while let [first, rest @ ..] = s {
        if first.is_ascii_whitespace() {
            s = rest;
        } else {
            break;
        }
    }
    while let [rest @ .., last] = s {
        if last.is_ascii_whitespace() {
            s = rest;
        } else {
            break;
        }
    }
    if s.is_empty() {
        return None;
    }
    Some(parse_graph6(s))
}

/// Reads up to `max` non-blank lines, advancing `line_no`.
pub fn read_batch<R: BufRead>(reader: &mut R, line_no: &mut u64, max: usize) -> io::Result<Vec<Parsed>> {
    let mut out = Vec::with_capacity(max.min(1 << 16));
    let mut buf = Vec::new();
    while out.len() < max {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        *line_no += 1;
        if let Some(parsed) = parse_line(&buf) {
            out.push((*line_no, parsed));
        }
    }
    Ok(out)
}

/// Reads a whole stream.
pub fn read_all<R: BufRead>(mut reader: R) -> io::Result<Vec<Parsed>> {
    let mut line = 0;
    read_batch(&mut reader, &mut line, usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use specgraph_core::graph::Graph6ErrorKind;

    #[test]
    fn reads_with_line_numbers() {
        let text = b">>graph6<<Bw\n\nBg\r\n  A_  \nB!\n";
        let parsed = read_all(&text[..]).unwrap();
        let lines: Vec<u64> = parsed.iter().map(|(l, _)| *l).collect();
        assert_eq!(lines, [1, 3, 4, 5]);
        assert_eq!(parsed[0].1.as_ref().unwrap().edge_count(), 3);
        assert_eq!(parsed[2].1.as_ref().unwrap().order(), 2);
        let err = parsed[3].1.clone().unwrap_err();
        assert_eq!(err.kind, Graph6ErrorKind::OutOfRange(b'!'));
    }

    #[test]
    fn batches_continue_numbering() {
        let text = b"A_\nBw\nBg\n";
        let mut r = &text[..];
        let mut line = 0;
        let a = read_batch(&mut r, &mut line, 2).unwrap();
        let b = read_batch(&mut r, &mut line, 2).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(b[0].0, 3);
        assert!(read_batch(&mut r, &mut line, 2).unwrap().is_empty());
    }
}
