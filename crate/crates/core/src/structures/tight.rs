use std::collections::BTreeSet;

use crate::connectivity::combinations;
use crate::graph::{Graph, Vertex};

use super::StructureError;

/// The graph showing that a θ-connected set can have `C(n, θ-1)·(θ-1)`
/// vertices while θ-tree-width stays at most `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightExample {
    pub graph: Graph,
    pub a: BTreeSet<Vertex>,
    pub b: BTreeSet<Vertex>,
}

/// `A = {1..n}`; for each `(θ-1)`-subset `A'` of `A` in lexicographic order,
/// `θ - 1` fresh vertices each joined to all of `A'`.
pub fn tight_example(n: usize, theta: usize) -> Result<TightExample, StructureError> {
    if theta < 3 || n < theta {
        return Err(StructureError::Parameter(format!("need n >= theta >= 3, got n = {n}, theta = {theta}")));
    }
    let a: Vec<Vertex> = (1..=n as Vertex).collect();
    let mut g = Graph::new();
    for &v in &a {
        g.add_vertex(v);
    }
    let mut next = n as Vertex + 1;
    let mut b = BTreeSet::new();
    for part in combinations(&a, theta - 1) {
        for _ in 0..theta - 1 {
            for &x in &part {
                g.add_edge(x, next);
            }
            b.insert(next);
            next += 1;
        }
    }
    Ok(TightExample { graph: g, a: a.into_iter().collect(), b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_theta_connected_paths;
    use crate::decomposition::{theta_tree_width_value, ExactOptions};

    #[test]
    fn sizes_and_claims() {
        let ex = tight_example(4, 3).unwrap();
        assert_eq!(ex.graph.vertex_count(), 16);
        assert_eq!(ex.a.len(), 4);
        assert_eq!(ex.b.len(), 12);
        assert_eq!(ex.graph.edge_count(), 24);
        assert!(is_theta_connected_paths(&ex.graph, &ex.b, 3));
        assert!(theta_tree_width_value(&ex.graph, 3, ExactOptions::default()).unwrap() <= 3);
        assert_eq!(tight_example(5, 4).unwrap().b.len(), 30);
        assert!(tight_example(2, 3).is_err());
        assert!(tight_example(4, 2).is_err());
    }
}
