use std::collections::BTreeSet;
use std::path::PathBuf;

use anyhow::{anyhow, Result};
use clap::Subcommand;

use theta_width::extraction::{init_necklace, search_necklace, ExtractionError};
use theta_width::graph::{generators, Graph, Vertex};
use theta_width::structures::{
    build_wheel, is_supported_by, necklace_to_wheel, validate_grid_embedding, validate_necklace,
    wheel_to_grid_or_biclique, GridOrBiclique, Necklace, WheelSpec,
};

use crate::files::{bad_input, guard_linkage, read_graph, read_json, read_set, render_graph, to_json, Outputs};
use crate::{Cli, Coded};

#[derive(Subcommand, Debug)]
pub enum Extract {
    /// A hub necklace or a path necklace from a θ-connected set.
    InitNecklace {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        key: Option<String>,
        #[arg(long)]
        theta: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounded search for a `(θ; n)`-necklace supported by a set.
    SearchNecklace {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        key: Option<String>,
        #[arg(long)]
        theta: usize,
        #[arg(long)]
        n: usize,
        /// Maximum number of candidate necklaces examined.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A wheel minor from a refined balanced necklace.
    NecklaceToWheel {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        necklace: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        spec_out: Option<PathBuf>,
        #[arg(long)]
        model_out: Option<PathBuf>,
        /// Graph of the wheel the model targets.
        #[arg(long)]
        wheel_out: Option<PathBuf>,
    },
    /// An `n × n` grid subgraph or a `K_{n², n²}` minor of a wheel.
    GridOrBiclique {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Graph of the wheel itself.
        #[arg(long)]
        wheel_out: Option<PathBuf>,
    },
}

/// Hypothesis failures are bad input; everything else keeps its own code.
fn classify(e: ExtractionError) -> anyhow::Error {
    match e {
        ExtractionError::Hypothesis(_) | ExtractionError::Parameter(_) | ExtractionError::Structure(_) => {
            bad_input(e.to_string())
        }
        other => anyhow!(other),
    }
}

fn recheck(g: &Graph, nk: &Necklace, u: &BTreeSet<Vertex>) -> Result<()> {
    let report = validate_necklace(g, nk);
    if !report.is_valid() || !is_supported_by(nk, u) {
        return Err(Coded(1, format!("output necklace fails re-verification: {:?}", report.failed())).into());
    }
    Ok(())
}

pub fn run(cli: &Cli, cmd: &Extract) -> Result<u8> {
    let mut outputs = Outputs::default();
    match cmd {
        Extract::InitNecklace { graph, set, key, theta, n, p, out } => {
            let g = read_graph(graph)?;
            let u = read_set(set, key.as_deref())?;
            guard_linkage(&u, *theta, cli.force)?;
            let nk = init_necklace(&g, &u, *theta, *n, *p).map_err(classify)?;
            recheck(&g, &nk, &u)?;
            println!("necklace {}", nk.params);
            outputs.add(out.as_deref(), nk.to_json() + "\n");
        }
        Extract::SearchNecklace { graph, set, key, theta, n, budget, out } => {
            let g = read_graph(graph)?;
            let u = read_set(set, key.as_deref())?;
            match search_necklace(&g, &u, *theta, *n, *budget).map_err(classify)? {
                Some(nk) => {
                    recheck(&g, &nk, &u)?;
                    println!("necklace {}", nk.params);
                    outputs.add(out.as_deref(), nk.to_json() + "\n");
                }
                None => {
                    println!("no ({theta}; {n})-necklace supported by the set");
                    return Ok(1);
                }
            }
        }
        Extract::NecklaceToWheel { graph, necklace, n, spec_out, model_out, wheel_out } => {
            let g = read_graph(graph)?;
            let nk: Necklace = read_json(necklace)?;
            let (spec, model) = necklace_to_wheel(&g, &nk, *n).map_err(|e| bad_input(e.to_string()))?;
            let wheel = build_wheel(&spec)?;
            model.validate(&g, &wheel.graph).map_err(|e| Coded(1, format!("model fails re-verification: {e}")))?;
            println!("wheel t={} l={} n={}", spec.t(), spec.l(), spec.n);
            outputs.add_file(spec_out.as_ref(), || to_json(&spec))?;
            outputs.add_file(model_out.as_ref(), || to_json(&model))?;
            outputs.add_file(wheel_out.as_ref(), || render_graph(&wheel.graph, cli.format))?;
        }
        Extract::GridOrBiclique { spec, n, out, wheel_out } => {
            let ws: WheelSpec = read_json(spec)?;
            let (wheel, outcome) = wheel_to_grid_or_biclique(&ws, *n).map_err(|e| bad_input(e.to_string()))?;
            let ok = match &outcome {
                GridOrBiclique::Grid { n, embedding } => validate_grid_embedding(&wheel.graph, *n, embedding),
                GridOrBiclique::Biclique { n, model } => {
                    model.validate(&wheel.graph, &generators::complete_bipartite(n * n, n * n)?).is_ok()
                }
            };
            if !ok {
                return Err(Coded(1, "outcome fails re-verification".into()).into());
            }
            let kind = match outcome {
                GridOrBiclique::Grid { .. } => "grid",
                GridOrBiclique::Biclique { .. } => "biclique",
            };
            println!("{kind} for n = {n}");
            outputs.add(out.as_deref(), to_json(&outcome)?);
            outputs.add_file(wheel_out.as_ref(), || render_graph(&wheel.graph, cli.format))?;
        }
    }
    outputs.flush()?;
    Ok(0)
}
