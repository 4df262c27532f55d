//! plantri's binary `planar_code` format.
//!
//! Each record is the vertex count followed, for every vertex, by its
//! clockwise neighbour list (1-based) terminated by 0. Counts and entries are
//! single bytes; a record starting with a 0 byte uses 2-byte entries
//! throughout (little-endian unless the header says `be`). An optional
//! `>>planar_code<<` header (or `>>planar_code le<<` / `>>planar_code be<<`)
//! precedes the first record.

use thiserror::Error;

use super::{EmbeddedGraph, RotationSystem};
use crate::graph::Graph;

pub const HEADER: &[u8] = b">>planar_code<<";
const HEADER_LE: &[u8] = b">>planar_code le<<";
const HEADER_BE: &[u8] = b">>planar_code be<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("planar_code parse error at byte {offset}: {message}")]
pub struct PlanarCodeError {
    pub offset: usize,
    pub message: String,
}

fn err(offset: usize, message: impl Into<String>) -> PlanarCodeError {
    PlanarCodeError { offset, message: message.into() }
}

/// Lazily decodes the records of a planar_code stream. Iteration stops after
/// the first error.
pub struct PlanarCodeReader<B> {
    data: B,
    pos: usize,
    big_endian: bool,
    failed: bool,
}

impl<B: AsRef<[u8]>> PlanarCodeReader<B> {
    pub fn new(data: B) -> Self {
        let bytes = data.as_ref();
        let (pos, big_endian) = if bytes.starts_with(HEADER_BE) {
            (HEADER_BE.len(), true)
        } else if bytes.starts_with(HEADER_LE) {
            (HEADER_LE.len(), false)
        } else if bytes.starts_with(HEADER) {
            (HEADER.len(), false)
        } else {
            (0, false)
        };
        PlanarCodeReader { data, pos, big_endian, failed: false }
    }

    /// Byte offset of the next unread record.
    pub fn offset(&self) -> usize {
        self.pos
    }

    fn read_entry(&mut self, wide: bool) -> Result<usize, PlanarCodeError> {
        let width = if wide { 2 } else { 1 };
        let data = self.data.as_ref();
        let bytes = data.get(self.pos..self.pos + width).ok_or_else(|| err(data.len(), "truncated record"))?;
        let value = match (wide, self.big_endian) {
            (false, _) => bytes[0] as usize,
            (true, false) => u16::from_le_bytes([bytes[0], bytes[1]]) as usize,
            (true, true) => u16::from_be_bytes([bytes[0], bytes[1]]) as usize,
        };
        self.pos += width;
        Ok(value)
    }

    fn read_record(&mut self) -> Result<EmbeddedGraph, PlanarCodeError> {
        let start = self.pos;
        let mut wide = false;
        let mut n = self.read_entry(false)?;
        if n == 0 {
            wide = true;
            n = self.read_entry(true)?;
            if n == 0 {
                return Err(err(start, "record with zero vertices"));
            }
        }
        let mut rot = vec![Vec::new(); n];
        for list in rot.iter_mut() {
            loop {
                let at = self.pos;
                let x = self.read_entry(wide)?;
                if x == 0 {
                    break;
                }
                if x > n {
                    return Err(err(at, format!("neighbour {x} out of range 1..={n}")));
                }
                list.push(x - 1);
                if list.len() > n {
                    return Err(err(at, "neighbour list longer than the vertex count"));
                }
            }
        }
        let mut g = Graph::new(n);
        for (v, list) in rot.iter().enumerate() {
            for &w in list {
                if w == v {
                    return Err(err(start, format!("self-loop at vertex {}", v + 1)));
                }
                g.add_edge(v, w).expect("ids in range");
            }
        }
        EmbeddedGraph::new(g, RotationSystem::from_lists(rot)).map_err(|e| err(start, e.to_string()))
    }
}

impl<B: AsRef<[u8]>> Iterator for PlanarCodeReader<B> {
    type Item = Result<EmbeddedGraph, PlanarCodeError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.pos >= self.data.as_ref().len() {
            return None;
        }
        let item = self.read_record();
        self.failed = item.is_err();
        Some(item)
    }
}

/// Decodes a whole stream.
pub fn parse_planar_code(data: &[u8]) -> Result<Vec<EmbeddedGraph>, PlanarCodeError> {
    PlanarCodeReader::new(data).collect()
}

/// Appends one record. Vertices are written in id order after compacting
/// tombstones; graphs with more than 255 vertices use 2-byte little-endian
/// entries.
pub fn write_record(eg: &EmbeddedGraph, out: &mut Vec<u8>) {
    let ids: Vec<usize> = eg.graph.vertices().collect();
    let mut local = vec![0usize; eg.graph.id_bound()];
    for (i, &v) in ids.iter().enumerate() {
        local[v] = i + 1;
    }
    let n = ids.len();
    let wide = n > 255;
    let put = |x: usize, out: &mut Vec<u8>| {
        if wide {
            out.extend_from_slice(&(x as u16).to_le_bytes());
        } else {
            out.push(x as u8);
        }
    };
    if wide {
        out.push(0);
    }
    put(n, out);
    for &v in &ids {
        for &w in eg.rotation.order(v) {
            put(local[w], out);
        }
        put(0, out);
    }
}

/// Encodes a stream with the `>>planar_code<<` header.
pub fn to_planar_code(graphs: &[EmbeddedGraph]) -> Vec<u8> {
    let mut out = HEADER.to_vec();
    for eg in graphs {
        write_record(eg, &mut out);
    }
    out
}
