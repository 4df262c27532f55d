//! graph6 reader and writer.
//!
//! Format: an order header `N(n)` followed by the upper triangle of the
//! adjacency matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed
//! six bits per byte, big-endian, each byte offset by 63. Orders of 63 or more
//! use the `126`-prefixed long headers.

use thiserror::Error;

use crate::graph::Graph;

pub const HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph6 parse error at byte {offset}: {message}")]
pub struct Graph6Error {
    pub offset: usize,
    pub message: String,
}

fn err(offset: usize, message: impl Into<String>) -> Graph6Error {
    Graph6Error { offset, message: message.into() }
}

fn sextet(data: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    match data.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
        Some(&b) => Err(err(offset, format!("byte {b:#04x} outside the printable range 63..=126"))),
        None => Err(err(offset, "unexpected end of record")),
    }
}

/// Decodes `N(n)`; returns the order and the number of header bytes used.
fn decode_order(data: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = *data.first().ok_or_else(|| err(0, "empty record"))?;
    if first != 126 {
        return Ok((sextet(data, 0)? as usize, 1));
    }
    if data.get(1) == Some(&126) {
        let mut n = 0u64;
        for i in 0..6 {
            n = (n << 6) | sextet(data, 2 + i)?;
        }
        return Ok((usize::try_from(n).map_err(|_| err(2, "order too large"))?, 8));
    }
    let mut n = 0u64;
    for i in 0..3 {
        n = (n << 6) | sextet(data, 1 + i)?;
    }
    Ok((n as usize, 4))
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Parses one graph6 record (no trailing newline). A leading `>>graph6<<`
/// header is accepted. Padding bits in the final byte are ignored.
pub fn parse_graph6(record: &[u8]) -> Result<Graph, Graph6Error> {
    let (data, base) = match record.strip_prefix(HEADER) {
        Some(rest) => (rest, HEADER.len()),
        None => (record, 0),
    };
    let shift = |e: Graph6Error| err(e.offset + base, e.message);
    match data.first() {
        Some(b':') => return Err(err(base, "sparse6 records are not supported")),
        Some(b'&') => return Err(err(base, "digraph6 records are not supported")),
        _ => {}
    }
    let (n, used) = decode_order(data).map_err(shift)?;
    let bits = (n as u128) * (n as u128).saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    let body = &data[used..];
    if (body.len() as u128) < needed {
        return Err(err(base + data.len(), format!("record truncated: order {n} needs {needed} data bytes")));
    }
    if (body.len() as u128) > needed {
        return Err(err(base + used + needed as usize, "trailing bytes after adjacency data"));
    }
    let mut g = Graph::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = sextet(body, k / 6).map_err(|e| err(e.offset + base + used, e.message))?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j).expect("indices are in range and distinct");
            }
            k += 1;
        }
    }
    // Validate any bytes the loop did not visit (n <= 1 has none; padding-only tails).
    for idx in k.div_ceil(6)..body.len() {
        sextet(body, idx).map_err(|e| err(e.offset + base + used, e.message))?;
    }
    Ok(g)
}

/// Encodes the live vertices of `g` in ascending id order (tombstones are
/// dropped, so ids are compacted).
pub fn to_graph6(g: &Graph) -> String {
    let (g, _) = g.compact();
    let n = g.vertex_count();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses a newline-separated graph6 stream. Blank lines are skipped; error
/// offsets are relative to the start of `data`.
pub fn parse_graph6_stream(data: &[u8]) -> Result<Vec<Graph>, Graph6Error> {
    Graph6Lines::new(data).collect()
}

/// Lazy iterator over the records of a graph6 stream.
pub struct Graph6Lines<B> {
    data: B,
    pos: usize,
    failed: bool,
}

impl<B: AsRef<[u8]>> Graph6Lines<B> {
    pub fn new(data: B) -> Self {
        let pos = if data.as_ref().starts_with(HEADER) { HEADER.len() } else { 0 };
        Graph6Lines { data, pos, failed: false }
    }
}

impl<B: AsRef<[u8]>> Iterator for Graph6Lines<B> {
    type Item = Result<Graph, Graph6Error>;

    fn next(&mut self) -> Option<Self::Item> {
        let data = self.data.as_ref();
        while !self.failed && self.pos < data.len() {
            let start = self.pos;
            let end = data[start..].iter().position(|&b| b == b'\n').map_or(data.len(), |i| start + i);
            self.pos = end + 1;
            let mut line = &data[start..end];
            if let Some(stripped) = line.strip_suffix(b"\r") {
                line = stripped;
            }
            if line.is_empty() {
                continue;
            }
            let parsed = parse_graph6(line).map_err(|e| err(e.offset + start, e.message));
            self.failed = parsed.is_err();
            return Some(parsed);
        }
        None
    }
}
