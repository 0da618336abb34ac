use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;

use theta_width::graph::{generators, Graph};
use theta_width::structures::{tight_example, wheel_necklace, zigzag_necklace, WheelSpec};

use crate::files::{bad_input, render_graph, to_json, Outputs};
use crate::Cli;

#[derive(Args, Debug)]
pub struct GraphOut {
    /// Graph file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum RimShape {
    Path,
    Star,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    /// A generalized wheel over a rim tree on `t` vertices.
    Wheel {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RimShape::Path)]
        rim: RimShape,
        /// Wheel specification JSON.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// The balanced necklace of rim copies, as JSON.
        #[arg(long)]
        necklace: Option<PathBuf>,
        #[command(flatten)]
        out: GraphOut,
    },
    /// A zigzag `(t,s,ℓ,n)`-necklace and its graph.
    Necklace {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[arg(long)]
        n: usize,
        /// Necklace JSON.
        #[arg(long)]
        necklace: Option<PathBuf>,
        #[command(flatten)]
        out: GraphOut,
    },
    /// The graph with a large θ-connected set of small θ-tree-width.
    TightExample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        theta: usize,
        /// JSON object with the sets `a` and `b`.
        #[arg(long)]
        sets: Option<PathBuf>,
        #[command(flatten)]
        out: GraphOut,
    },
    /// The `n × n` grid.
    Grid {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: GraphOut,
    },
    /// `K_{a,b}`.
    Biclique {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[command(flatten)]
        out: GraphOut,
    },
    /// `G(n, p)`, optionally forced connected.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long)]
        connected: bool,
        #[command(flatten)]
        out: GraphOut,
    },
}

/// Goes to standard error when the graph itself is on standard output.
fn summary(g: &Graph, what: &str, to_file: bool) {
    let line = format!("{what}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    if to_file {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

pub fn run(cli: &Cli, cmd: &Gen) -> Result<u8> {
    let mut outputs = Outputs::default();
    let (g, what, out) = match cmd {
        Gen::Wheel { t, l, n, rim, spec, necklace, out } => {
            if *t == 0 {
                return Err(bad_input("the rim tree needs t >= 1 vertices"));
            }
            let tree = match rim {
                RimShape::Path => generators::path(*t)?,
                RimShape::Star => generators::star(t - 1)?,
                RimShape::Random => generators::random_tree(*t, cli.seed)?,
            };
            let ws = WheelSpec::simple(tree, *l, *n);
            let (built, nk) = wheel_necklace(&ws).map_err(|e| bad_input(e.to_string()))?;
            outputs.add_file(spec.as_ref(), || to_json(&ws))?;
            outputs.add_file(necklace.as_ref(), || Ok(nk.to_json() + "\n"))?;
            (built.graph, format!("wheel t={t} l={l} n={n}"), out)
        }
        Gen::Necklace { t, s, l, n, necklace, out } => {
            if s > t || *n < 2 || *t == 0 {
                return Err(bad_input(format!("need 1 <= t, s <= t and n >= 2; got t={t}, s={s}, n={n}")));
            }
            let (g, nk) = zigzag_necklace(*t, *s, *l, *n);
            outputs.add_file(necklace.as_ref(), || Ok(nk.to_json() + "\n"))?;
            (g, format!("necklace {}", nk.params), out)
        }
        Gen::TightExample { n, theta, sets, out } => {
            let ex = tight_example(*n, *theta).map_err(|e| bad_input(e.to_string()))?;
            outputs.add_file(sets.as_ref(), || to_json(&json!({ "a": ex.a, "b": ex.b })))?;
            let what = format!("tight example n={n} theta={theta}, |A| = {}, |B| = {}", ex.a.len(), ex.b.len());
            (ex.graph, what, out)
        }
        Gen::Grid { n, out } => {
            (generators::grid(*n).map_err(|e| bad_input(e.to_string()))?, format!("grid {n}x{n}"), out)
        }
        Gen::Biclique { a, b, out } => (
            generators::complete_bipartite(*a, *b).map_err(|e| bad_input(e.to_string()))?,
            format!("K_{{{a},{b}}}"),
            out,
        ),
        Gen::Random { n, p, connected, out } => {
            let g = if *connected {
                generators::random_connected_graph(*n, *p, cli.seed)
            } else {
                generators::random_graph(*n, *p, cli.seed)
            };
            (g.map_err(|e| bad_input(e.to_string()))?, format!("random n={n} p={p} seed={}", cli.seed), out)
        }
    };
    outputs.add(out.out.as_deref(), render_graph(&g, cli.format)?);
    summary(&g, &what, out.out.is_some());
    outputs.flush()?;
    Ok(0)
}
