use std::path::PathBuf;

use anyhow::Result;
use clap::Subcommand;
use serde_json::json;

use theta_width::connectivity::max_theta_connected_set;
use theta_width::decomposition::{
    improve_with_trace, theta_tree_width_exact, theta_tree_width_value, ExactOptions, TreeDecomposition,
};
use theta_width::structures::{find_jumps, is_long_jump, Necklace};

use crate::files::{guard, read_graph, read_json, to_json, vertex_limit, Outputs};
use crate::Cli;

#[derive(Subcommand, Debug)]
pub enum Compute {
    /// Exact θ-tree-width with a witness decomposition.
    ThetaTreeWidth {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        theta: usize,
        /// Decomposition JSON, with bags for reading.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// A largest θ-connected set.
    MaxThetaSet {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        theta: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Rework a decomposition of adhesion below θ until every bag is θ-connected.
    ImproveDecomposition {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
        #[arg(long)]
        theta: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Jumps of a necklace.
    Jumps {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        necklace: PathBuf,
    },
}

pub fn run(cli: &Cli, cmd: &Compute) -> Result<u8> {
    let mut outputs = Outputs::default();
    match cmd {
        Compute::ThetaTreeWidth { graph, theta, witness } => {
            let g = read_graph(graph)?;
            let isolated = g.isolated_vertices();
            if !isolated.is_empty() {
                log::warn!("dropping isolated vertices {isolated:?}; decompositions only see edges");
            }
            let core = g.without_vertices(&isolated.iter().copied().collect());
            guard(&core, cli.force)?;
            let options = ExactOptions { max_vertices: vertex_limit(cli.force) };
            if core.edge_count() == 0 {
                println!("{}", theta_tree_width_value(&g, *theta, options)?);
                if witness.is_some() {
                    log::warn!("no edges, so no witness decomposition is written");
                }
            } else {
                let (value, td) = theta_tree_width_exact(&core, *theta, options)?;
                println!("{value}");
                outputs.add_file(witness.as_ref(), || to_json(&td.to_json(true)))?;
            }
        }
        Compute::MaxThetaSet { graph, theta, witness } => {
            let g = read_graph(graph)?;
            guard(&g, cli.force)?;
            let set = max_theta_connected_set(&g, *theta)?;
            println!("{}", set.len());
            println!("{set:?}");
            outputs.add_file(witness.as_ref(), || to_json(&set))?;
        }
        Compute::ImproveDecomposition { graph, decomposition, theta, witness } => {
            let g = read_graph(graph)?;
            guard(&g, cli.force)?;
            let td: TreeDecomposition = read_json(decomposition)?;
            let (out, trace) = improve_with_trace(&g, &td, *theta)?;
            for (round, sig) in trace.signatures.iter().enumerate() {
                println!("round {round}: signature {sig:?}");
            }
            println!("width {} after {} rounds", out.width()?, trace.rounds());
            outputs.add_file(witness.as_ref(), || to_json(&out.to_json(true)))?;
        }
        Compute::Jumps { graph, necklace } => {
            let g = read_graph(graph)?;
            let nk: Necklace = read_json(necklace)?;
            let jumps = find_jumps(&g, &nk);
            for j in &jumps {
                let kind = if is_long_jump(j.i, j.j, nk.len()) { "long" } else { "short" };
                println!("{} {} {kind} {:?}", j.i, j.j, j.path);
            }
            let long = jumps.iter().filter(|j| is_long_jump(j.i, j.j, nk.len())).count();
            println!("{}", json!({ "jumps": jumps.len(), "long": long }));
        }
    }
    outputs.flush()?;
    Ok(0)
}
