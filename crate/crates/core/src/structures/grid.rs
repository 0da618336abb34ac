use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{generators, Graph, MinorModel, Vertex};

use super::wheel::{build_wheel, BuiltWheel, WheelSpec};
use super::StructureError;

/// Outcome of the grid-or-biclique step on a wheel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridOrBiclique {
    /// `n × n` grid vertex (id `r·n + c + 1`) to wheel vertex; a subgraph embedding.
    Grid { n: usize, embedding: BTreeMap<Vertex, Vertex> },
    /// Model of `K_{n², n²}` (left side `1..=n²`) in the wheel.
    Biclique { n: usize, model: MinorModel },
}

/// A path on exactly `k` vertices in `tree`, least start vertex first.
pub fn find_tree_path(tree: &Graph, k: usize) -> Option<Vec<Vertex>> {
    fn extend(tree: &Graph, path: &mut Vec<Vertex>, k: usize) -> bool {
        if path.len() == k {
            return true;
        }
        let last = *path.last().expect("nonempty path");
        let prev = path.len().checked_sub(2).map(|i| path[i]);
        for w in tree.neighbors(last).collect::<Vec<_>>() {
            if Some(w) != prev {
                path.push(w);
                if extend(tree, path, k) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    if k == 0 {
        return Some(Vec::new());
    }
    tree.vertices().find_map(|v| {
        let mut path = vec![v];
        extend(tree, &mut path, k).then_some(path)
    })
}

/// Injective map sending every edge of `grid(n)` onto an edge of `host`.
pub fn validate_grid_embedding(host: &Graph, n: usize, embedding: &BTreeMap<Vertex, Vertex>) -> bool {
    let Ok(grid) = generators::grid(n) else {
        return false;
    };
    let image: BTreeSet<Vertex> = embedding.values().copied().collect();
    image.len() == embedding.len()
        && grid.vertices().all(|v| embedding.get(&v).is_some_and(|x| host.has_vertex(*x)))
        && grid.edges().all(|e| host.has_edge(embedding[&e.u()], embedding[&e.v()]))
}

/// `grid(n)` as a subgraph of `complete_bipartite(n², n²)`: cells with even
/// `r + c` go to the left side, the others to the right side, in id order.
pub fn grid_in_biclique(n: usize) -> BTreeMap<Vertex, Vertex> {
    let side = (n * n) as Vertex;
    let (mut left, mut right) = (1, side + 1);
    let mut out = BTreeMap::new();
    for r in 0..n {
        for c in 0..n {
            let id = (r * n + c + 1) as Vertex;
            let slot = if (r + c) % 2 == 0 { &mut left } else { &mut right };
            out.insert(id, *slot);
            *slot += 1;
        }
    }
    out
}

/// `K_{k,k}` in a wheel with at least `k` copies, from a rim vertex `center`
/// of degree at least `k`: each of `k` neighbours `u` contracts `u_1 … u_k`.
pub fn biclique_minor(
    wheel: &BuiltWheel,
    spec: &WheelSpec,
    k: usize,
    center: Vertex,
) -> Result<MinorModel, StructureError> {
    let nbrs: Vec<Vertex> = spec.rim_tree.neighbors(center).take(k).collect();
    if nbrs.len() < k || spec.n < k {
        return Err(StructureError::Precondition(format!(
            "K_{{{k},{k}}} needs a rim vertex of degree {k} and {k} copies"
        )));
    }
    let mut branch_sets = BTreeMap::new();
    for (p, &u) in nbrs.iter().enumerate() {
        let set = (1..=k).map(|i| wheel.copies[&(u, i)]).collect();
        branch_sets.insert(p as Vertex + 1, set);
    }
    for q in 1..=k {
        branch_sets.insert((k + q) as Vertex, BTreeSet::from([wheel.copies[&(center, q)]]));
    }
    let pattern = generators::complete_bipartite(k, k)?;
    let model = MinorModel { branch_sets, edge_witnesses: BTreeMap::new() }.with_witnesses(&wheel.graph, &pattern);
    model
        .validate(&wheel.graph, &pattern)
        .map_err(|e| StructureError::Precondition(format!("biclique model invalid: {e}")))?;
    Ok(model)
}

/// An `n × n` grid from an `n`-vertex rim path in `n` consecutive copies, or
/// failing that a `K_{n², n²}` minor from a rim vertex of degree `n²`.
pub fn wheel_to_grid_or_biclique(spec: &WheelSpec, n: usize) -> Result<(BuiltWheel, GridOrBiclique), StructureError> {
    if n < 1 {
        return Err(StructureError::Parameter("n must be positive".into()));
    }
    let wheel = build_wheel(spec)?;
    if let Some(path) = find_tree_path(&spec.rim_tree, n) {
        if spec.n < n {
            return Err(StructureError::Precondition(format!("grid needs {n} copies, wheel has {}", spec.n)));
        }
        let mut embedding = BTreeMap::new();
        for r in 0..n {
            for (c, &v) in path.iter().enumerate() {
                embedding.insert((r * n + c + 1) as Vertex, wheel.copies[&(v, r + 1)]);
            }
        }
        debug_assert!(validate_grid_embedding(&wheel.graph, n, &embedding));
        return Ok((wheel, GridOrBiclique::Grid { n, embedding }));
    }
    let k = n * n;
    let center = spec.rim_tree.vertices().find(|&v| spec.rim_tree.degree(v) >= k).ok_or_else(|| {
        StructureError::Precondition(format!("rim tree has no {n}-vertex path and no vertex of degree {k}"))
    })?;
    let model = biclique_minor(&wheel, spec, k, center)?;
    Ok((wheel, GridOrBiclique::Biclique { n, model }))
}
