//! Simple undirected graphs with stable integer vertex ids.
//!
//! Everything else in the crate is phrased in terms of [`Graph`]. Vertex ids
//! are opaque `u32`s and survive subgraph and retraction operations, so a set
//! of vertices chosen before a surgery still names the same vertices after it.

pub(crate) mod bits;
pub mod generators;
pub mod io;
pub mod minor;
pub mod separation;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use minor::{is_minor, MinorModel, MinorSearch};
pub use separation::{make_separation, submodular_combine, Separation, Subgraph};

pub type Vertex = u32;

/// An unordered edge, always stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[Vertex; 2]", try_from = "[Vertex; 2]")]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Panics on a loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(u: Vertex, v: Vertex) -> Edge {
        Edge::try_new(u, v).expect("loops are not edges of a simple graph")
    }

    pub fn try_new(u: Vertex, v: Vertex) -> Result<Edge, GraphError> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge(u, v)),
            std::cmp::Ordering::Greater => Ok(Edge(v, u)),
            std::cmp::Ordering::Equal => Err(GraphError::Loop(u)),
        }
    }

    pub fn u(&self) -> Vertex {
        self.0
    }

    pub fn v(&self) -> Vertex {
        self.1
    }

    pub fn ends(&self) -> [Vertex; 2] {
        [self.0, self.1]
    }

    pub fn has_end(&self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if self.0 == x {
            Some(self.1)
        } else if self.1 == x {
            Some(self.0)
        } else {
            None
        }
    }
}

impl From<Edge> for [Vertex; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl TryFrom<[Vertex; 2]> for Edge {
    type Error = GraphError;

    fn try_from(value: [Vertex; 2]) -> Result<Self, Self::Error> {
        Edge::try_new(value[0], value[1])
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(Edge),
    #[error("vertex {keep} is not an endpoint of {edge}")]
    NotAnEndpoint { edge: Edge, keep: Vertex },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("separation sides do not cover the same graph")]
    MismatchedGraph,
    #[error("invalid separation: {0}")]
    InvalidSeparation(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A finite simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { vertices: g.vertices().collect(), edges: g.edges().collect() }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    fn try_from(r: GraphRepr) -> Result<Self, Self::Error> {
        Graph::from_parts(r.vertices, r.edges)
    }
}

impl Graph {
    pub fn new() -> Graph {
        Graph::default()
    }

    /// Builds a graph from explicit vertices and edges; every edge endpoint must be listed.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Graph, GraphError> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for e in edges {
            for x in e.ends() {
                if !g.has_vertex(x) {
                    return Err(GraphError::UnknownVertex(x));
                }
            }
            g.add_edge(e.u(), e.v());
        }
        Ok(g)
    }

    /// Builds a graph from an edge list, adding endpoints as needed.
    pub fn from_edges(edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
        let mut g = Graph::new();
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds `uv`, creating endpoints if needed. Loops are ignored.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        let fresh = self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        fresh
    }

    pub fn remove_edge(&mut self, e: Edge) -> bool {
        let hit = self.adj.get_mut(&e.u()).map(|s| s.remove(&e.v())).unwrap_or(false);
        if hit {
            self.adj.get_mut(&e.v()).map(|s| s.remove(&e.u()));
        }
        hit
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> bool {
        match self.adj.remove(&v) {
            Some(nbrs) => {
                for w in nbrs {
                    if let Some(s) = self.adj.get_mut(&w) {
                        s.remove(&v);
                    }
                }
                true
            }
            None => false,
        }
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.has_edge(e.u(), e.v())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.adj.keys().copied().collect()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().flat_map(|(&u, nb)| nb.range(u + 1..).map(move |&v| Edge(u, v)))
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().collect()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn neighbor_set(&self, v: Vertex) -> Option<&BTreeSet<Vertex>> {
        self.adj.get(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    /// Edges incident with `v` (the paper's δ(v)).
    pub fn incident_edges(&self, v: Vertex) -> impl Iterator<Item = Edge> + '_ {
        self.neighbors(v).map(move |w| Edge::new(v, w))
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        self.adj.iter().filter(|(_, s)| s.is_empty()).map(|(&v, _)| v).collect()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    pub fn induced_subgraph(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, nb)| (v, nb.intersection(keep).copied().collect()))
            .collect();
        Graph { adj }
    }

    pub fn without_vertices(&self, drop: &BTreeSet<Vertex>) -> Graph {
        let keep = self.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices().all(|v| other.has_vertex(v)) && self.edges().all(|e| other.contains_edge(&e))
    }

    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        for v in other.vertices() {
            g.add_vertex(v);
        }
        for e in other.edges() {
            g.add_edge(e.u(), e.v());
        }
        g
    }

    /// Connected components as sorted vertex sets, ordered by smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.reachable_from(std::iter::once(v));
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True iff the graph is connected and acyclic (the empty graph is not a tree).
    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1 && self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    pub fn reachable_from(&self, start: impl IntoIterator<Item = Vertex>) -> BTreeSet<Vertex> {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for s in start {
            if self.has_vertex(s) && seen.insert(s) {
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Shortest path between two vertex sets, as a vertex sequence.
    pub fn shortest_path(&self, from: &BTreeSet<Vertex>, to: &BTreeSet<Vertex>) -> Option<Vec<Vertex>> {
        let mut parent: BTreeMap<Vertex, Option<Vertex>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &s in from {
            if self.has_vertex(s) {
                parent.insert(s, None);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            if to.contains(&v) {
                let mut path = vec![v];
                let mut cur = v;
                while let Some(Some(p)) = parent.get(&cur) {
                    path.push(*p);
                    cur = *p;
                }
                path.reverse();
                return Some(path);
            }
            for w in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(w) {
                    slot.insert(Some(v));
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Retraction of `e` onto `keep`: contract `e`, the other endpoint disappears.
    pub fn retract_edge(&self, e: Edge, keep: Vertex) -> Result<Graph, GraphError> {
        if !self.contains_edge(&e) {
            return Err(GraphError::UnknownEdge(e));
        }
        let gone = e.other(keep).ok_or(GraphError::NotAnEndpoint { edge: e, keep })?;
        let mut g = self.clone();
        let moved: Vec<Vertex> = g.neighbors(gone).collect();
        g.remove_vertex(gone);
        for w in moved {
            if w != keep {
                g.add_edge(keep, w);
            }
        }
        Ok(g)
    }

    /// Contracts every edge of the connected vertex set `part` onto `keep`.
    pub fn retract_set(&self, part: &BTreeSet<Vertex>, keep: Vertex) -> Result<Graph, GraphError> {
        if !part.contains(&keep) {
            return Err(GraphError::UnknownVertex(keep));
        }
        let mut g = self.clone();
        for &v in part {
            if v == keep {
                continue;
            }
            let moved: Vec<Vertex> = g.neighbors(v).collect();
            if !g.remove_vertex(v) {
                return Err(GraphError::UnknownVertex(v));
            }
            for w in moved {
                if w != keep {
                    g.add_edge(keep, w);
                }
            }
        }
        Ok(g)
    }
}

/// Checks that `path` is a path in `g` (distinct vertices, consecutive ones adjacent).
pub fn is_path_in(g: &Graph, path: &[Vertex]) -> bool {
    if path.is_empty() {
        return false;
    }
    let distinct: BTreeSet<_> = path.iter().collect();
    distinct.len() == path.len()
        && path.iter().all(|&v| g.has_vertex(v))
        && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_normalized() {
        let e = Edge::new(5, 2);
        assert_eq!((e.u(), e.v()), (2, 5));
        assert_eq!(Edge::try_new(3, 3), Err(GraphError::Loop(3)));
        assert_eq!(e.other(2), Some(5));
        assert_eq!(e.other(4), None);
    }

    #[test]
    fn simple_graph_ignores_loops_and_parallels() {
        let mut g = Graph::new();
        assert!(g.add_edge(1, 2));
        assert!(!g.add_edge(2, 1));
        assert!(!g.add_edge(3, 3));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn from_parts_rejects_dangling_edge() {
        let err = Graph::from_parts([1, 2], [Edge::new(1, 3)]).unwrap_err();
        assert_eq!(err, GraphError::UnknownVertex(3));
    }

    #[test]
    fn retract_triangle_edge() {
        let g = Graph::from_edges([(1, 2), (2, 3), (1, 3)]);
        let r = g.retract_edge(Edge::new(1, 2), 1).unwrap();
        assert_eq!(r.vertex_set(), BTreeSet::from([1, 3]));
        assert_eq!(r.edge_count(), 1);
    }

    #[test]
    fn retract_path_edge() {
        let g = Graph::from_edges([(1, 2), (2, 3)]);
        let r = g.retract_edge(Edge::new(1, 2), 1).unwrap();
        assert_eq!(r.edge_set(), BTreeSet::from([Edge::new(1, 3)]));
    }

    #[test]
    fn retract_cycle_gives_shorter_cycle() {
        let c5 = generators::cycle(5).unwrap();
        for e in c5.edges() {
            for keep in e.ends() {
                let r = c5.retract_edge(e, keep).unwrap();
                assert_eq!(r.vertex_count(), 4);
                assert_eq!(r.edge_count(), 4);
                assert!(r.vertices().all(|v| r.degree(v) == 2));
                assert!(r.is_connected());
            }
        }
    }

    #[test]
    fn retract_errors() {
        let g = Graph::from_edges([(1, 2), (2, 3)]);
        assert_eq!(g.retract_edge(Edge::new(1, 3), 1), Err(GraphError::UnknownEdge(Edge::new(1, 3))));
        assert!(matches!(g.retract_edge(Edge::new(1, 2), 3), Err(GraphError::NotAnEndpoint { .. })));
    }

    #[test]
    fn components_and_paths() {
        let g = Graph::from_edges([(1, 2), (3, 4), (4, 5)]);
        let comps = g.components();
        assert_eq!(comps, vec![BTreeSet::from([1, 2]), BTreeSet::from([3, 4, 5])]);
        let p = g.shortest_path(&BTreeSet::from([3]), &BTreeSet::from([5])).unwrap();
        assert_eq!(p, vec![3, 4, 5]);
        assert!(is_path_in(&g, &p));
        assert!(g.shortest_path(&BTreeSet::from([1]), &BTreeSet::from([5])).is_none());
    }

    #[test]
    fn json_shape() {
        let g = Graph::from_edges([(1, 2)]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"vertices":[1,2],"edges":[[1,2]]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"vertices":[1],"edges":[[1,1]]}"#).is_err());
    }
}
