use std::collections::BTreeSet;
use std::path::PathBuf;

use anyhow::Result;
use clap::Subcommand;
use serde_json::json;

use theta_width::connectivity::{is_theta_connected_paths, unlinked_pair};
use theta_width::decomposition::TreeDecomposition;
use theta_width::graph::{Graph, MinorModel, Vertex};
use theta_width::structures::{build_wheel, validate_necklace, verify_rim_transversal, Necklace, WheelSpec};

use crate::files::{bad_input, guard_linkage, read_graph, read_json, read_set, to_json, Outputs};
use crate::Cli;

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Conditions N1-N7 of a necklace in a graph.
    Necklace {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        necklace: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// θ-connectivity of a vertex set.
    ThetaSet {
        #[arg(long)]
        graph: PathBuf,
        /// JSON array, or object with `--key`.
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        key: Option<String>,
        #[arg(long)]
        theta: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// An edge-leaf tree-decomposition, optionally with adhesion below θ.
    Decomposition {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
        #[arg(long)]
        theta: Option<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// A set meeting every rim copy of a wheel exactly once.
    WheelTransversal {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        key: Option<String>,
    },
    /// A minor model of `pattern` in `host`.
    MinorModel {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        model: PathBuf,
    },
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn finish(outputs: Outputs, ok: bool) -> Result<u8> {
    outputs.flush()?;
    println!("{}", if ok { "verified" } else { "verification failed" });
    Ok(if ok { 0 } else { 1 })
}

fn check_set(g: &Graph, set: &BTreeSet<Vertex>) -> Result<()> {
    if let Some(v) = set.iter().find(|&&v| !g.has_vertex(v)) {
        return Err(bad_input(format!("vertex {v} is not in the graph")));
    }
    Ok(())
}

pub fn run(cli: &Cli, cmd: &Verify) -> Result<u8> {
    let mut outputs = Outputs::default();
    match cmd {
        Verify::Necklace { graph, necklace, report } => {
            let g = read_graph(graph)?;
            let nk: Necklace = read_json(necklace)?;
            let rep = validate_necklace(&g, &nk);
            println!("necklace {} with {} beads", nk.params, nk.len());
            for r in &rep.results {
                let beads = if r.beads.is_empty() { String::new() } else { format!(" beads {:?}", r.beads) };
                let detail = if r.detail.is_empty() { String::new() } else { format!(" {}", r.detail) };
                println!("{:?} {}{beads}{detail}", r.condition, verdict(r.passed));
            }
            outputs.add_file(report.as_ref(), || {
                to_json(&json!({ "valid": rep.is_valid(), "params": nk.params, "conditions": rep.results }))
            })?;
            finish(outputs, rep.is_valid())
        }
        Verify::ThetaSet { graph, set, key, theta, report } => {
            let g = read_graph(graph)?;
            let z = read_set(set, key.as_deref())?;
            check_set(&g, &z)?;
            guard_linkage(&z, *theta, cli.force)?;
            let witness = unlinked_pair(&g, &z, *theta);
            let ok = witness.is_none();
            debug_assert_eq!(ok, is_theta_connected_paths(&g, &z, *theta));
            println!("{}-connected set of {} vertices: {}", theta, z.len(), verdict(ok));
            if let Some((x, y, found)) = &witness {
                println!("unlinked: X = {x:?}, Y = {y:?}, only {found} disjoint paths");
            }
            outputs.add_file(report.as_ref(), || {
                let w = witness.as_ref().map(|(x, y, found)| json!({ "x": x, "y": y, "paths": found }));
                to_json(&json!({ "valid": ok, "theta": theta, "size": z.len(), "witness": w }))
            })?;
            finish(outputs, ok)
        }
        Verify::Decomposition { graph, decomposition, theta, report } => {
            let g = read_graph(graph)?;
            let td: TreeDecomposition = read_json(decomposition)?;
            let structural = td.validate_for(&g);
            let ok_structure = structural.is_ok();
            println!("decomposition of the graph: {}", verdict(ok_structure));
            if let Err(e) = &structural {
                println!("  {e}");
            }
            let adhesion = td.adhesion();
            let width = td.width().ok();
            let ok_adhesion = theta.is_none_or(|th| adhesion < th);
            println!("width {width:?}, adhesion {adhesion}");
            if let Some(th) = theta {
                println!("adhesion below {th}: {}", verdict(ok_adhesion));
            }
            let ok = ok_structure && ok_adhesion;
            outputs.add_file(report.as_ref(), || {
                to_json(&json!({
                    "valid": ok,
                    "structure": structural.as_ref().err().map(|e| e.to_string()),
                    "width": width,
                    "adhesion": adhesion,
                    "theta": theta,
                }))
            })?;
            finish(outputs, ok)
        }
        Verify::WheelTransversal { spec, set, key } => {
            let ws: WheelSpec = read_json(spec)?;
            let wheel = build_wheel(&ws).map_err(|e| bad_input(e.to_string()))?;
            let u = read_set(set, key.as_deref())?;
            let ok = verify_rim_transversal(&wheel, &u);
            println!("rim transversal of {} vertices: {}", u.len(), verdict(ok));
            finish(outputs, ok)
        }
        Verify::MinorModel { host, pattern, model } => {
            let h = read_graph(host)?;
            let p = read_graph(pattern)?;
            let m: MinorModel = read_json(model)?;
            let result = m.validate(&h, &p);
            println!("minor model: {}", verdict(result.is_ok()));
            if let Err(e) = &result {
                println!("  {e}");
            }
            finish(outputs, result.is_ok())
        }
    }
}
