use std::io::Write;

use anyhow::{bail, Result};
use log::info;

use degen4::embed::planar_code::to_planar_code;
use degen4::embed::EmbeddedGraph;
use degen4::generators::enumerate::{connected_planar_graphs, triangulations};
use degen4::generators::named;
use degen4::generators::random::{random_tree, random_triangulation};
use degen4::graph6::to_graph6;

use crate::config::{json_header, sha256_hex, RunConfig};
use crate::input::writer;
use crate::{FormatArg, GenArgs, Status};

fn embedded(graphs: Vec<degen4::graph::Graph>) -> Result<Vec<EmbeddedGraph>> {
    Ok(graphs.into_iter().map(EmbeddedGraph::from_graph).collect::<Result<_, _>>()?)
}

fn generate(args: &GenArgs) -> Result<Vec<EmbeddedGraph>> {
    let k = &args.kind;
    Ok(if let Some(name) = &k.named {
        vec![named(name)?]
    } else if let Some(n) = k.random {
        (0..args.count as u64).map(|i| random_triangulation(n, args.seed.wrapping_add(i), args.min_degree)).collect::<Result<_, _>>()?
    } else if let Some(n) = k.triangulations {
        triangulations(n)
    } else if let Some(n) = k.planar {
        embedded(connected_planar_graphs(n))?
    } else if let Some(n) = k.tree {
        embedded((0..args.count as u64).map(|i| random_tree(n, args.seed.wrapping_add(i))).collect())?
    } else {
        bail!("choose one of --named, --random, --triangulations, --planar, --tree")
    })
}

pub fn run(args: &GenArgs, config: &RunConfig) -> Result<Status> {
    let graphs = generate(args)?;
    info!("generated {} graphs", graphs.len());
    let mut data = Vec::new();
    match args.format {
        FormatArg::Graph6 => {
            for eg in &graphs {
                data.extend_from_slice(to_graph6(&eg.graph).as_bytes());
                data.push(b'\n');
            }
        }
        FormatArg::PlanarCode => data = to_planar_code(&graphs),
    }
    let mut out = writer(args.output.as_deref())?;
    out.write_all(&data)?;
    out.flush()?;
    if let Some(path) = args.output.as_deref().filter(|p| p.as_os_str() != "-") {
        let mut meta = path.as_os_str().to_owned();
        meta.push(".meta.json");
        let header = json_header(config, &sha256_hex(&data));
        std::fs::write(meta, serde_json::to_string_pretty(&header)?)?;
    }
    Ok(Status::Pass)
}
