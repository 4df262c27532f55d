//! Reading graph streams and writing outputs.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use anyhow::{Context, Result};

use degen4::generators::stream::{GraphStream, StreamItem};

use crate::config::sha256_hex;
use crate::InputArgs;

pub struct Corpus {
    pub items: Vec<StreamItem>,
    /// Indices of graphs over the size limit.
    pub skipped: Vec<usize>,
    pub digest: String,
}

fn read_all(path: &Path) -> Result<Vec<u8>> {
    let mut data = Vec::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_end(&mut data).context("cannot read stdin")?;
    } else {
        data = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    }
    Ok(data)
}

/// Reads and parses the whole input. Parse errors are input errors.
pub fn load(args: &InputArgs) -> Result<Corpus> {
    let data = read_all(&args.input)?;
    let digest = sha256_hex(&data);
    let mut items = Vec::new();
    let mut skipped = Vec::new();
    for item in GraphStream::from_bytes(data, args.format.into()) {
        let item = item.with_context(|| format!("cannot parse {}", args.input.display()))?;
        if args.max_n.is_some_and(|m| item.graph.vertex_count() > m) {
            skipped.push(item.index);
        } else {
            items.push(item);
        }
    }
    Ok(Corpus { items, skipped, digest })
}

pub fn read_text(path: &Path) -> Result<String> {
    String::from_utf8(read_all(path)?).with_context(|| format!("{} is not UTF-8", path.display()))
}

pub fn writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        None => Box::new(BufWriter::new(io::stdout().lock())),
        Some(p) if p.as_os_str() == "-" => Box::new(BufWriter::new(io::stdout().lock())),
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
    })
}

/// A CSV writer whose output starts with the run header.
pub fn csv_writer(path: Option<&Path>, header: &str) -> Result<csv::Writer<Box<dyn Write>>> {
    let mut out = writer(path)?;
    out.write_all(header.as_bytes())?;
    Ok(csv::Writer::from_writer(out))
}
