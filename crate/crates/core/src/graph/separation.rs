//! Separations: ordered pairs of subgraphs whose union is the whole graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Edge, Graph, GraphError, Vertex};

/// A subgraph given by explicit vertex and edge sets.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: BTreeSet<Vertex>,
    pub edges: BTreeSet<Edge>,
}

impl Subgraph {
    pub fn new(vertices: BTreeSet<Vertex>, edges: BTreeSet<Edge>) -> Subgraph {
        Subgraph { vertices, edges }
    }

    pub fn of_graph(g: &Graph) -> Subgraph {
        Subgraph::new(g.vertex_set(), g.edge_set())
    }

    /// Subgraph spanned by a set of edges (their endpoints and nothing else).
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Subgraph {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let vertices = edges.iter().flat_map(|e| e.ends()).collect();
        Subgraph { vertices, edges }
    }

    pub fn induced(g: &Graph, vertices: &BTreeSet<Vertex>) -> Subgraph {
        let h = g.induced_subgraph(vertices);
        Subgraph::new(vertices.clone(), h.edge_set())
    }

    pub fn is_well_formed(&self) -> bool {
        self.edges.iter().all(|e| self.vertices.contains(&e.u()) && self.vertices.contains(&e.v()))
    }

    pub fn is_subgraph_of(&self, g: &Graph) -> bool {
        self.vertices.iter().all(|&v| g.has_vertex(v)) && self.edges.iter().all(|e| g.contains_edge(e))
    }

    pub fn contains(&self, other: &Subgraph) -> bool {
        other.vertices.is_subset(&self.vertices) && other.edges.is_subset(&self.edges)
    }

    pub fn intersection(&self, other: &Subgraph) -> Subgraph {
        Subgraph { vertices: &self.vertices & &other.vertices, edges: &self.edges & &other.edges }
    }

    pub fn union(&self, other: &Subgraph) -> Subgraph {
        Subgraph { vertices: &self.vertices | &other.vertices, edges: &self.edges | &other.edges }
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_parts(self.vertices.iter().copied(), self.edges.iter().copied()).expect("well-formed subgraph")
    }

    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.to_graph().is_connected()
    }
}

/// An ordered pair `(left, right)` of subgraphs covering every vertex and edge of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub left: Subgraph,
    pub right: Subgraph,
}

impl Separation {
    /// Checks well-formedness against `g` and that the two sides cover it.
    pub fn new(g: &Graph, left: Subgraph, right: Subgraph) -> Result<Separation, GraphError> {
        for side in [&left, &right] {
            if !side.is_well_formed() || !side.is_subgraph_of(g) {
                return Err(GraphError::InvalidSeparation("side is not a subgraph of the graph".into()));
            }
        }
        let sep = Separation { left, right };
        if sep.covered_graph() != Subgraph::of_graph(g) {
            return Err(GraphError::InvalidSeparation("sides do not cover the graph".into()));
        }
        Ok(sep)
    }

    /// The order λ: number of shared vertices.
    pub fn order(&self) -> usize {
        self.left.vertices.intersection(&self.right.vertices).count()
    }

    pub fn separator(&self) -> BTreeSet<Vertex> {
        &self.left.vertices & &self.right.vertices
    }

    pub fn covered_graph(&self) -> Subgraph {
        self.left.union(&self.right)
    }

    pub fn swapped(&self) -> Separation {
        Separation { left: self.right.clone(), right: self.left.clone() }
    }

    /// Whether the vertex set `z` is split with more than λ elements on each side.
    pub fn violates(&self, z: &BTreeSet<Vertex>) -> bool {
        let lambda = self.order();
        z.intersection(&self.left.vertices).count() > lambda && z.intersection(&self.right.vertices).count() > lambda
    }

    /// Builds the separation with the given left side whose right side is
    /// the rest of the graph: every edge outside `left_edges`, its endpoints,
    /// and every vertex not in `left_vertices`.
    pub(crate) fn with_left(g: &Graph, left_vertices: BTreeSet<Vertex>, left_edges: BTreeSet<Edge>) -> Separation {
        let mut right = Subgraph::default();
        for e in g.edges() {
            if !left_edges.contains(&e) {
                right.vertices.extend(e.ends());
                right.edges.insert(e);
            }
        }
        for v in g.vertices() {
            if !left_vertices.contains(&v) {
                right.vertices.insert(v);
            }
        }
        Separation { left: Subgraph::new(left_vertices, left_edges), right }
    }
}

/// The separation whose left side is `(left_vertices, left_edges)`; uncovered
/// vertices go to the right side.
pub fn make_separation(
    g: &Graph,
    left_vertices: &BTreeSet<Vertex>,
    left_edges: &BTreeSet<Edge>,
) -> Result<Separation, GraphError> {
    for &v in left_vertices {
        if !g.has_vertex(v) {
            return Err(GraphError::UnknownVertex(v));
        }
    }
    for e in left_edges {
        if !g.contains_edge(e) {
            return Err(GraphError::UnknownEdge(*e));
        }
        for x in e.ends() {
            if !left_vertices.contains(&x) {
                return Err(GraphError::InvalidSeparation(format!(
                    "edge {e} has endpoint {x} outside the left vertex set"
                )));
            }
        }
    }
    Ok(Separation::with_left(g, left_vertices.clone(), left_edges.clone()))
}

/// Returns `(G1∩H1, G2∪H2)` and `(G1∪H1, G2∩H2)` for `s1 = (G1,G2)`, `s2 = (H1,H2)`.
pub fn submodular_combine(s1: &Separation, s2: &Separation) -> Result<(Separation, Separation), GraphError> {
    if s1.covered_graph() != s2.covered_graph() {
        return Err(GraphError::MismatchedGraph);
    }
    let meet = Separation { left: s1.left.intersection(&s2.left), right: s1.right.union(&s2.right) };
    let join = Separation { left: s1.left.union(&s2.left), right: s1.right.intersection(&s2.right) };
    Ok((meet, join))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    fn set(v: &[Vertex]) -> BTreeSet<Vertex> {
        v.iter().copied().collect()
    }

    #[test]
    fn whole_graph_side() {
        let g = Graph::from_edges([(1, 2)]);
        let s = make_separation(&g, &set(&[1, 2]), &BTreeSet::from([Edge::new(1, 2)])).unwrap();
        assert_eq!(s.right, Subgraph::default());
        assert_eq!(s.order(), 0);
    }

    #[test]
    fn cutvertex_of_path() {
        let g = generators::path(3).unwrap();
        let s = make_separation(&g, &set(&[1, 2]), &BTreeSet::from([Edge::new(1, 2)])).unwrap();
        assert_eq!(s.right.vertices, set(&[2, 3]));
        assert_eq!(s.order(), 1);
    }

    #[test]
    fn bowtie_triangle_side() {
        // triangles 1-2-3 and 3-4-5 sharing vertex 3
        let g = Graph::from_edges([(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]);
        let tri = set(&[1, 2, 3]);
        let edges = g.induced_subgraph(&tri).edge_set();
        let s = make_separation(&g, &tri, &edges).unwrap();
        assert_eq!(s.order(), 1);
        assert_eq!(s.separator(), set(&[3]));
    }

    #[test]
    fn rejects_dangling_left_edge() {
        let g = generators::path(3).unwrap();
        let err = make_separation(&g, &set(&[1]), &BTreeSet::from([Edge::new(1, 2)])).unwrap_err();
        assert!(matches!(err, GraphError::InvalidSeparation(_)));
    }

    #[test]
    fn combine_with_itself() {
        let g = generators::cycle(4).unwrap();
        let s = make_separation(&g, &set(&[1, 2, 3]), &BTreeSet::from([Edge::new(1, 2), Edge::new(2, 3)])).unwrap();
        let (a, b) = submodular_combine(&s, &s).unwrap();
        assert_eq!(a, s);
        assert_eq!(b, s);
    }

    #[test]
    fn combine_with_neutral() {
        let g = generators::cycle(4).unwrap();
        let s = make_separation(&g, &set(&[1, 2, 3]), &BTreeSet::from([Edge::new(1, 2), Edge::new(2, 3)])).unwrap();
        let neutral = Separation::new(&g, Subgraph::of_graph(&g), Subgraph::default()).unwrap();
        let (a, b) = submodular_combine(&s, &neutral).unwrap();
        assert_eq!(a.order() + b.order(), s.order());
        assert_eq!(b.order(), 0);
    }

    #[test]
    fn combine_rejects_other_graph() {
        let g = generators::cycle(4).unwrap();
        let h = generators::path(4).unwrap();
        let a = Separation::new(&g, Subgraph::of_graph(&g), Subgraph::default()).unwrap();
        let b = Separation::new(&h, Subgraph::of_graph(&h), Subgraph::default()).unwrap();
        assert_eq!(submodular_combine(&a, &b), Err(GraphError::MismatchedGraph));
    }
}
