//! Lazy ingestion of graph6 and planar_code files.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::embed::planar_code::{PlanarCodeError, PlanarCodeReader};
use crate::embed::{EmbedError, EmbeddedGraph};
use crate::graph::Graph;
use crate::graph6::{Graph6Error, Graph6Lines};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    PlanarCode,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "graph6" => Ok(Format::Graph6),
            "planar_code" => Ok(Format::PlanarCode),
            other => Err(format!("unknown format {other:?} (expected graph6 or planar_code)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::PlanarCode => "planar_code",
        })
    }
}

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    PlanarCode(#[from] PlanarCodeError),
}

/// One record of a stream. `embedding` is `Err(NotPlanar)` for non-planar
/// graph6 records; planar_code records always carry their own embedding.
#[derive(Clone, Debug)]
pub struct StreamItem {
    pub index: usize,
    pub graph: Graph,
    pub embedding: Result<EmbeddedGraph, EmbedError>,
}

impl StreamItem {
    pub fn is_planar(&self) -> bool {
        self.embedding.is_ok()
    }
}

enum Source {
    Graph6(Graph6Lines<Vec<u8>>),
    PlanarCode(PlanarCodeReader<Vec<u8>>),
}

/// Iterator over the records of an in-memory stream.
pub struct GraphStream {
    source: Source,
    index: usize,
}

impl GraphStream {
    pub fn from_bytes(data: Vec<u8>, format: Format) -> GraphStream {
        let source = match format {
            Format::Graph6 => Source::Graph6(Graph6Lines::new(data)),
            Format::PlanarCode => Source::PlanarCode(PlanarCodeReader::new(data)),
        };
        GraphStream { source, index: 0 }
    }
}

impl Iterator for GraphStream {
    type Item = Result<StreamItem, StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        let item = match &mut self.source {
            Source::Graph6(lines) => lines.next()?.map_err(StreamError::from).map(|graph| {
                let embedding = EmbeddedGraph::from_graph(graph.clone());
                (graph, embedding)
            }),
            Source::PlanarCode(reader) => reader.next()?.map_err(StreamError::from).map(|eg| (eg.graph.clone(), Ok(eg))),
        };
        let index = self.index;
        self.index += 1;
        Some(item.map(|(graph, embedding)| StreamItem { index, graph, embedding }))
    }
}

/// Opens `path` and yields its graphs lazily. A parse error ends the stream
/// with the byte offset of the failure.
pub fn ingest_stream(path: impl AsRef<Path>, format: Format) -> Result<GraphStream, StreamError> {
    let path = path.as_ref();
    let data = std::fs::read(path).map_err(|source| StreamError::Io { path: path.display().to_string(), source })?;
    Ok(GraphStream::from_bytes(data, format))
}
