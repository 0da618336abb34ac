//! Standard graph families with canonical numbering starting at 1.
//!
//! * `grid(n)`: row-major, vertex `(r, c)` (0-based) is `r*n + c + 1`.
//! * `complete_bipartite(a, b)`: left side `1..=a`, right side `a+1..=a+b`.
//! * `cycle`, `path`, `complete`: sequential ids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError, Vertex};

fn check(cond: bool, msg: impl Into<String>) -> Result<(), GraphError> {
    if cond {
        Ok(())
    } else {
        Err(GraphError::Parameter(msg.into()))
    }
}

pub fn grid(n: usize) -> Result<Graph, GraphError> {
    check(n >= 1, "grid needs n >= 1")?;
    let id = |r: usize, c: usize| (r * n + c + 1) as Vertex;
    let mut g = Graph::new();
    for r in 0..n {
        for c in 0..n {
            g.add_vertex(id(r, c));
            if c + 1 < n {
                g.add_edge(id(r, c), id(r, c + 1));
            }
            if r + 1 < n {
                g.add_edge(id(r, c), id(r + 1, c));
            }
        }
    }
    Ok(g)
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    check(a >= 1 && b >= 1, "complete_bipartite needs a, b >= 1")?;
    let mut g = Graph::new();
    for i in 1..=a {
        for j in a + 1..=a + b {
            g.add_edge(i as Vertex, j as Vertex);
        }
    }
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    check(n >= 1, "complete needs n >= 1")?;
    let mut g = Graph::new();
    for i in 1..=n as Vertex {
        g.add_vertex(i);
        for j in i + 1..=n as Vertex {
            g.add_edge(i, j);
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    check(n >= 3, "cycle needs n >= 3")?;
    let mut g = path(n)?;
    g.add_edge(n as Vertex, 1);
    Ok(g)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    check(n >= 1, "path needs n >= 1")?;
    let mut g = Graph::new();
    g.add_vertex(1);
    for i in 1..n as Vertex {
        g.add_edge(i, i + 1);
    }
    Ok(g)
}

/// Star with center 1 and leaves `2..=leaves+1`.
pub fn star(leaves: usize) -> Result<Graph, GraphError> {
    complete_bipartite(1, leaves)
}

/// Erdős–Rényi graph on `1..=n`; deterministic for a given seed.
pub fn random_graph(n: usize, edge_prob: f64, seed: u64) -> Result<Graph, GraphError> {
    check(n >= 1, "random_graph needs n >= 1")?;
    check((0.0..=1.0).contains(&edge_prob), "edge probability must lie in [0, 1]")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new();
    for i in 1..=n as Vertex {
        g.add_vertex(i);
        for j in 1..i {
            if rng.gen_bool(edge_prob) {
                g.add_edge(j, i);
            }
        }
    }
    Ok(g)
}

/// Uniform random labelled tree on `1..=n` via a Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    check(n >= 1, "random_tree needs n >= 1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    tree_from_rng(n, &mut rng)
}

pub(crate) fn tree_from_rng(n: usize, rng: &mut impl Rng) -> Result<Graph, GraphError> {
    let mut g = Graph::new();
    g.add_vertex(1);
    if n == 1 {
        return Ok(g);
    }
    if n == 2 {
        g.add_edge(1, 2);
        return Ok(g);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    Ok(tree_from_pruefer(n, &seq))
}

/// Decodes a Prüfer sequence over `1..=n` (length `n-2`).
pub fn tree_from_pruefer(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; n + 1];
    for &x in seq {
        degree[x] += 1;
    }
    let mut g = Graph::new();
    for v in 1..=n {
        g.add_vertex(v as Vertex);
    }
    for &x in seq {
        let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf exists");
        g.add_edge(leaf as Vertex, x as Vertex);
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    if rest.len() == 2 {
        g.add_edge(rest[0] as Vertex, rest[1] as Vertex);
    }
    g
}

/// Random connected graph: a random spanning tree plus independent extra edges.
pub fn random_connected_graph(n: usize, extra_prob: f64, seed: u64) -> Result<Graph, GraphError> {
    check((0.0..=1.0).contains(&extra_prob), "edge probability must lie in [0, 1]")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = tree_from_rng(n, &mut rng)?;
    for i in 1..=n as Vertex {
        for j in 1..i {
            if rng.gen_bool(extra_prob) {
                g.add_edge(j, i);
            }
        }
    }
    Ok(g)
}
