//! Reading inputs and writing artifacts.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;

use theta_width::decomposition::DEFAULT_EXACT_LIMIT;
use theta_width::graph::io::{parse_text, to_dot, write_text};
use theta_width::graph::{Graph, Vertex};

use crate::{Coded, Format};

/// Reads a graph in the text format, or as JSON when the file starts with `{`.
pub fn read_graph(path: &Path) -> Result<Graph> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if raw.trim_start().starts_with('{') {
        serde_json::from_str(&raw).with_context(|| format!("parsing graph JSON {}", path.display()))
    } else {
        parse_text(&raw).with_context(|| format!("parsing graph {}", path.display()))
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))
}

/// A vertex set stored as a JSON array, or under `key` in a JSON object.
pub fn read_set(path: &Path, key: Option<&str>) -> Result<BTreeSet<Vertex>> {
    let value: serde_json::Value = read_json(path)?;
    let picked = match (key, &value) {
        (Some(k), serde_json::Value::Object(map)) => {
            map.get(k).cloned().with_context(|| format!("{} has no key `{k}`", path.display()))?
        }
        (Some(k), _) => bail!("{} is not an object, cannot select `{k}`", path.display()),
        (None, _) => value,
    };
    serde_json::from_value(picked).with_context(|| format!("{} does not hold a vertex set", path.display()))
}

pub fn render_graph(g: &Graph, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => write_text(g)?,
        Format::Dot => to_dot(g, "G"),
        Format::Json => serde_json::to_string_pretty(g)?,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Artifacts are collected during a command and written together at the end,
/// each through a temporary file and a rename.
#[derive(Default)]
pub struct Outputs {
    pending: Vec<(Option<PathBuf>, String)>,
}

impl Outputs {
    /// `None` sends the content to standard output.
    pub fn add(&mut self, path: Option<&Path>, content: String) {
        self.pending.push((path.map(Path::to_path_buf), content));
    }

    pub fn add_file(&mut self, path: Option<&PathBuf>, content: impl FnOnce() -> Result<String>) -> Result<()> {
        if let Some(p) = path {
            self.pending.push((Some(p.clone()), content()?));
        }
        Ok(())
    }

    pub fn flush(self) -> Result<()> {
        for (path, content) in self.pending {
            match path {
                None => print!("{content}"),
                Some(p) => {
                    let tmp =
                        p.with_file_name(format!(".{}.tmp", p.file_name().and_then(|s| s.to_str()).unwrap_or("out")));
                    fs::write(&tmp, &content).with_context(|| format!("writing {}", tmp.display()))?;
                    fs::rename(&tmp, &p).with_context(|| format!("moving output to {}", p.display()))?;
                }
            }
        }
        Ok(())
    }
}

/// Vertex limit for exponential computations: `--force` lifts it, otherwise
/// `THETA_WIDTH_MAX_VERTICES` or the solver default.
pub fn vertex_limit(force: bool) -> usize {
    if force {
        return usize::MAX;
    }
    std::env::var("THETA_WIDTH_MAX_VERTICES").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_EXACT_LIMIT)
}

pub fn guard(g: &Graph, force: bool) -> Result<()> {
    let limit = vertex_limit(force);
    if g.vertex_count() > limit {
        return Err(Coded(
            3,
            format!(
                "{} vertices exceed the limit of {limit}; pass --force or set THETA_WIDTH_MAX_VERTICES",
                g.vertex_count()
            ),
        )
        .into());
    }
    Ok(())
}

pub fn bad_input(message: impl Into<String>) -> anyhow::Error {
    Coded(2, message.into()).into()
}

/// The linkage check tries every pair of subsets of size at most θ.
pub fn guard_linkage(z: &BTreeSet<Vertex>, theta: usize, force: bool) -> Result<()> {
    const MAX_PAIRS: f64 = 5e6;
    let mut binom = 1.0f64;
    let mut pairs = 0.0;
    for i in 1..=theta.min(z.len()) {
        binom = binom * (z.len() + 1 - i) as f64 / i as f64;
        pairs += binom * binom / 2.0;
    }
    if pairs > MAX_PAIRS && !force {
        return Err(Coded(3, format!("about {pairs:.0} subset pairs to check; pass --force")).into());
    }
    Ok(())
}
