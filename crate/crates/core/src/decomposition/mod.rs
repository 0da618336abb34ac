//! Tree-decompositions whose leaves are labelled by the edges of the graph.
//!
//! Bags are never stored. The bag of a node `t` is the set of vertices `v`
//! such that `t` lies on the minimal subtree spanning the leaves labelled by
//! edges at `v`; an edge bag is the intersection of its two node bags.

mod exact;
mod improve;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::ConnectivityError;
use crate::graph::{Edge, Graph, GraphError, Separation, Subgraph, Vertex};

pub use exact::{theta_tree_width_exact, theta_tree_width_value, ExactOptions, DEFAULT_EXACT_LIMIT};
pub use improve::{improve_to_connected_bags, improve_with_trace, ImproveTrace};

/// Node identifiers of a decomposition tree.
pub type Node = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("decomposition tree is not a tree")]
    NotATree,
    #[error("node {0} carries a label but is not a leaf")]
    LabelOnInnerNode(Node),
    #[error("edge {0} labels more than one leaf")]
    DuplicateLabel(Edge),
    #[error("edge {0} of the graph labels no leaf")]
    MissingEdge(Edge),
    #[error("label {0} is not an edge of the graph")]
    ExtraEdge(Edge),
    #[error("node {0} is not in the decomposition")]
    UnknownNode(Node),
    #[error("{0}-{1} is not a tree edge")]
    UnknownTreeEdge(Node, Node),
    #[error("vertex {0} is isolated; edge-leaf decompositions cannot place it")]
    IsolatedVertex(Vertex),
    #[error("graph has no edges")]
    Edgeless,
    #[error("invalid bag decomposition: {0}")]
    InvalidBags(String),
    #[error("clique-sum precondition violated: {0}")]
    CliqueSum(String),
    #[error("instance too large: {vertices} vertices, limit {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("internal invariant broken: {0}")]
    InvariantBroken(String),
    #[error("input adhesion {adhesion} is not below theta = {theta}")]
    AdhesionTooLarge { adhesion: usize, theta: usize },
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A tree plus an injective labelling of some leaves by graph edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DecompositionRepr", into = "DecompositionRepr")]
pub struct TreeDecomposition {
    tree: Graph,
    labels: BTreeMap<Node, Edge>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    nodes: Vec<Node>,
    tree_edges: Vec<Edge>,
    leaf_labels: BTreeMap<Node, Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bags: Option<BTreeMap<Node, BTreeSet<Vertex>>>,
}

impl From<TreeDecomposition> for DecompositionRepr {
    fn from(t: TreeDecomposition) -> Self {
        DecompositionRepr {
            nodes: t.tree.vertices().collect(),
            tree_edges: t.tree.edges().collect(),
            leaf_labels: t.labels,
            bags: None,
        }
    }
}

impl TryFrom<DecompositionRepr> for TreeDecomposition {
    type Error = DecompositionError;

    fn try_from(r: DecompositionRepr) -> Result<Self, Self::Error> {
        let tree = Graph::from_parts(r.nodes, r.tree_edges)?;
        TreeDecomposition::new(tree, r.leaf_labels)
    }
}

fn is_leaf(tree: &Graph, t: Node) -> bool {
    tree.degree(t) <= 1
}

impl TreeDecomposition {
    pub fn new(tree: Graph, labels: BTreeMap<Node, Edge>) -> Result<TreeDecomposition, DecompositionError> {
        if tree.vertex_count() == 0 || !tree.is_tree() {
            return Err(DecompositionError::NotATree);
        }
        let mut seen = BTreeSet::new();
        for (&t, &e) in &labels {
            if !tree.has_vertex(t) {
                return Err(DecompositionError::UnknownNode(t));
            }
            if !is_leaf(&tree, t) {
                return Err(DecompositionError::LabelOnInnerNode(t));
            }
            if !seen.insert(e) {
                return Err(DecompositionError::DuplicateLabel(e));
            }
        }
        Ok(TreeDecomposition { tree, labels })
    }

    /// Checks that the labels are exactly the edges of `g` and `g` has no isolated vertex.
    pub fn validate_for(&self, g: &Graph) -> Result<(), DecompositionError> {
        check_decomposable(g)?;
        let labelled: BTreeSet<Edge> = self.labels.values().copied().collect();
        if let Some(e) = labelled.iter().find(|e| !g.contains_edge(e)) {
            return Err(DecompositionError::ExtraEdge(*e));
        }
        if let Some(e) = g.edges().find(|e| !labelled.contains(e)) {
            return Err(DecompositionError::MissingEdge(e));
        }
        Ok(())
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.tree.vertices()
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.tree.edges()
    }

    pub fn leaf_labels(&self) -> &BTreeMap<Node, Edge> {
        &self.labels
    }

    /// The graph spanned by the labels.
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.labels.values().map(|e| (e.u(), e.v())))
    }

    /// All node bags at once.
    pub fn bags(&self) -> BTreeMap<Node, BTreeSet<Vertex>> {
        let mut by_vertex: BTreeMap<Vertex, Vec<Node>> = BTreeMap::new();
        for (&t, e) in &self.labels {
            for x in e.ends() {
                by_vertex.entry(x).or_default().push(t);
            }
        }
        // root at the least node; parent pointers in BFS order
        let root = self.tree.vertices().next().expect("nonempty tree");
        let mut order = vec![root];
        let mut parent: BTreeMap<Node, Node> = BTreeMap::new();
        let mut i = 0;
        while i < order.len() {
            let t = order[i];
            for w in self.tree.neighbors(t) {
                if Some(&w) != parent.get(&t) {
                    parent.insert(w, t);
                    order.push(w);
                }
            }
            i += 1;
        }
        let mut bags: BTreeMap<Node, BTreeSet<Vertex>> = self.tree.vertices().map(|t| (t, BTreeSet::new())).collect();
        for (v, leaves) in by_vertex {
            let total = leaves.len();
            let mut below: BTreeMap<Node, usize> = BTreeMap::new();
            for &t in &leaves {
                *below.entry(t).or_default() += 1;
            }
            // t is on the spanning subtree iff it is marked or the marked leaves
            // meet at least two of its branches
            let mut count: BTreeMap<Node, usize> = BTreeMap::new();
            for &t in order.iter().rev() {
                let own = below.get(&t).copied().unwrap_or(0);
                let mut branches = 0;
                let mut sum = own;
                for w in self.tree.neighbors(t) {
                    if parent.get(&w) == Some(&t) {
                        let c = count[&w];
                        if c > 0 {
                            branches += 1;
                        }
                        sum += c;
                    }
                }
                if sum < total {
                    branches += 1;
                }
                count.insert(t, sum);
                if own > 0 || branches >= 2 {
                    bags.get_mut(&t).unwrap().insert(v);
                }
            }
        }
        bags
    }

    pub fn node_bag(&self, t: Node) -> Result<BTreeSet<Vertex>, DecompositionError> {
        if !self.tree.has_vertex(t) {
            return Err(DecompositionError::UnknownNode(t));
        }
        Ok(self.bags().remove(&t).unwrap_or_default())
    }

    pub fn edge_bag(&self, a: Node, b: Node) -> Result<BTreeSet<Vertex>, DecompositionError> {
        if !self.tree.has_edge(a, b) {
            return Err(DecompositionError::UnknownTreeEdge(a, b));
        }
        let bags = self.bags();
        Ok(&bags[&a] & &bags[&b])
    }

    /// `max |Y_t| - 1`; an edgeless labelling is an error.
    pub fn width(&self) -> Result<usize, DecompositionError> {
        if self.labels.is_empty() {
            return Err(DecompositionError::Edgeless);
        }
        Ok(self.bags().values().map(BTreeSet::len).max().unwrap_or(0).saturating_sub(1))
    }

    /// `max |Y_e|` over tree edges, 0 for a single node.
    pub fn adhesion(&self) -> usize {
        let bags = self.bags();
        self.tree.edges().map(|e| bags[&e.u()].intersection(&bags[&e.v()]).count()).max().unwrap_or(0)
    }

    /// Nodes of the component of `T - ab` containing `a`.
    pub fn side_of(&self, a: Node, b: Node) -> BTreeSet<Node> {
        let mut t = self.tree.clone();
        t.remove_edge(Edge::new(a, b));
        t.reachable_from([a])
    }

    /// The separation associated with tree edge `ab`; the left side comes from `a`'s component.
    pub fn separation_of_tree_edge(&self, a: Node, b: Node) -> Result<Separation, DecompositionError> {
        if !self.tree.has_edge(a, b) {
            return Err(DecompositionError::UnknownTreeEdge(a, b));
        }
        let side = self.side_of(a, b);
        let (left, right): (Vec<Edge>, Vec<Edge>) = self.labels.iter().map(|(t, e)| (side.contains(t), *e)).fold(
            (Vec::new(), Vec::new()),
            |(mut l, mut r), (is_left, e)| {
                if is_left {
                    l.push(e)
                } else {
                    r.push(e)
                }
                (l, r)
            },
        );
        let g = self.graph();
        Ok(Separation::new(&g, Subgraph::from_edges(left), Subgraph::from_edges(right))?)
    }

    /// Removes unlabelled leaves and suppresses unlabelled degree-2 nodes. Neither
    /// step increases width or adhesion.
    pub fn normalized(&self) -> TreeDecomposition {
        let mut tree = self.tree.clone();
        loop {
            let mut changed = false;
            let nodes: Vec<Node> = tree.vertices().collect();
            for t in nodes {
                if tree.vertex_count() <= 1 || self.labels.contains_key(&t) {
                    continue;
                }
                match tree.degree(t) {
                    0 | 1 => {
                        tree.remove_vertex(t);
                        changed = true;
                    }
                    2 => {
                        let nb: Vec<Node> = tree.neighbors(t).collect();
                        tree.remove_vertex(t);
                        tree.add_edge(nb[0], nb[1]);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        TreeDecomposition { tree, labels: self.labels.clone() }
    }

    /// JSON value in the external format, optionally with derived bags.
    pub fn to_json(&self, with_bags: bool) -> serde_json::Value {
        let mut repr = DecompositionRepr::from(self.clone());
        if with_bags {
            repr.bags = Some(self.bags());
        }
        serde_json::to_value(repr).expect("serializable")
    }
}

pub(crate) fn check_decomposable(g: &Graph) -> Result<(), DecompositionError> {
    if g.edge_count() == 0 {
        return Err(DecompositionError::Edgeless);
    }
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(DecompositionError::IsolatedVertex(v));
    }
    Ok(())
}

/// Converts a standard decomposition (tree of explicit bags) into edge-leaf form
/// by hanging one labelled leaf per graph edge on the least node whose bag holds it.
pub fn from_bags(
    g: &Graph,
    bag_tree: &Graph,
    bags: &BTreeMap<Node, BTreeSet<Vertex>>,
) -> Result<TreeDecomposition, DecompositionError> {
    check_decomposable(g)?;
    let bad = |m: String| Err(DecompositionError::InvalidBags(m));
    if bag_tree.vertex_count() == 0 || !bag_tree.is_tree() {
        return bad("bag tree is not a tree".into());
    }
    if bags.keys().copied().collect::<BTreeSet<_>>() != bag_tree.vertex_set() {
        return bad("every tree node needs exactly one bag".into());
    }
    for v in g.vertices() {
        let holding: BTreeSet<Node> = bags.iter().filter(|(_, b)| b.contains(&v)).map(|(&t, _)| t).collect();
        if holding.is_empty() || !bag_tree.induced_subgraph(&holding).is_connected() {
            return bad(format!("nodes holding vertex {v} do not form a nonempty subtree"));
        }
    }
    if let Some(v) = bags.values().flatten().find(|v| !g.has_vertex(**v)) {
        return bad(format!("bag vertex {v} is not in the graph"));
    }
    let mut tree = bag_tree.clone();
    let mut labels = BTreeMap::new();
    let first = tree.max_vertex().unwrap_or(0) + 1;
    for (leaf, e) in (first..).zip(g.edges()) {
        let Some((&t, _)) = bags.iter().find(|(_, b)| b.contains(&e.u()) && b.contains(&e.v())) else {
            return bad(format!("no bag holds edge {e}"));
        };
        tree.add_edge(t, leaf);
        labels.insert(leaf, e);
    }
    Ok(TreeDecomposition::new(tree, labels)?.normalized())
}

/// `(G1 ∪ G2) - E(K)` where `K` is the clique on `h`.
pub fn clique_sum(g1: &Graph, g2: &Graph, h: &BTreeSet<Vertex>) -> Result<Graph, DecompositionError> {
    let err = |m: String| Err(DecompositionError::CliqueSum(m));
    let shared = &g1.vertex_set() & &g2.vertex_set();
    if &shared != h {
        return err(format!("shared vertices {shared:?} differ from {h:?}"));
    }
    let hv: Vec<Vertex> = h.iter().copied().collect();
    let mut clique = BTreeSet::new();
    for (i, &a) in hv.iter().enumerate() {
        for &b in &hv[i + 1..] {
            clique.insert(Edge::new(a, b));
        }
    }
    for (name, g) in [("first", g1), ("second", g2)] {
        if let Some(e) = clique.iter().find(|e| !g.contains_edge(e)) {
            return err(format!("{e} missing from the {name} graph"));
        }
    }
    if let Some(e) = (&g1.edge_set() & &g2.edge_set()).difference(&clique).next() {
        return err(format!("shared edge {e} lies outside the clique"));
    }
    let mut g = g1.union(g2);
    for e in clique {
        g.remove_edge(e);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    fn set(v: &[Vertex]) -> BTreeSet<Vertex> {
        v.iter().copied().collect()
    }

    fn star_of(g: &Graph) -> TreeDecomposition {
        let mut tree = Graph::new();
        tree.add_vertex(0);
        let mut labels = BTreeMap::new();
        for (i, e) in g.edges().enumerate() {
            tree.add_edge(0, i as Node + 1);
            labels.insert(i as Node + 1, e);
        }
        TreeDecomposition::new(tree, labels).unwrap()
    }

    #[test]
    fn single_edge() {
        let mut tree = Graph::new();
        tree.add_vertex(7);
        let td = TreeDecomposition::new(tree, BTreeMap::from([(7, Edge::new(1, 2))])).unwrap();
        assert_eq!(td.node_bag(7).unwrap(), set(&[1, 2]));
        assert_eq!(td.width().unwrap(), 1);
        assert_eq!(td.adhesion(), 0);
    }

    #[test]
    fn path_star_bag() {
        let td = star_of(&generators::path(3).unwrap());
        assert_eq!(td.node_bag(0).unwrap(), set(&[2]));
        assert_eq!(td.node_bag(1).unwrap(), set(&[1, 2]));
        assert!(td.node_bag(9).is_err());
    }

    #[test]
    fn triangle_star_width() {
        let td = star_of(&generators::complete(3).unwrap());
        assert_eq!(td.width().unwrap(), 2);
        assert_eq!(td.adhesion(), 2);
    }

    #[test]
    fn path4_from_bags() {
        let g = generators::path(4).unwrap();
        let bag_tree = Graph::from_edges([(1, 2), (2, 3)]);
        let bags = BTreeMap::from([(1, set(&[1, 2])), (2, set(&[2, 3])), (3, set(&[3, 4]))]);
        let td = from_bags(&g, &bag_tree, &bags).unwrap();
        td.validate_for(&g).unwrap();
        assert_eq!(td.width().unwrap(), 1);
        // the leaf of the middle edge shares both ends with its neighbour
        assert_eq!(td.adhesion(), 2);
        let orders: BTreeSet<usize> =
            td.tree_edges().map(|e| td.separation_of_tree_edge(e.u(), e.v()).unwrap().order()).collect();
        assert!(orders.contains(&1));
    }

    #[test]
    fn c4_from_bags() {
        let g = generators::cycle(4).unwrap();
        let bag_tree = Graph::from_edges([(1, 2)]);
        let bags = BTreeMap::from([(1, set(&[1, 2, 4])), (2, set(&[2, 3, 4]))]);
        let td = from_bags(&g, &bag_tree, &bags).unwrap();
        assert_eq!(td.width().unwrap(), 2);
        assert_eq!(td.adhesion(), 2);
    }

    #[test]
    fn from_bags_rejects() {
        let g = generators::path(3).unwrap();
        let bag_tree = Graph::from_edges([(1, 2), (2, 3)]);
        let bags = BTreeMap::from([(1, set(&[1, 2])), (2, set(&[3])), (3, set(&[2, 3]))]);
        assert!(matches!(from_bags(&g, &bag_tree, &bags), Err(DecompositionError::InvalidBags(_))));
        let single = BTreeMap::from([(1, set(&[1, 2, 3]))]);
        let mut one = Graph::new();
        one.add_vertex(1);
        let td = from_bags(&g, &one, &single).unwrap();
        assert!(td.width().unwrap() <= 2);
    }

    #[test]
    fn leaf_edge_separation() {
        let g = generators::cycle(4).unwrap();
        let td = star_of(&g);
        let sep = td.separation_of_tree_edge(1, 0).unwrap();
        assert_eq!(sep.left.edges.len(), 1);
        assert_eq!(sep.order(), 2);
    }

    #[test]
    fn clique_sums() {
        let t1 = Graph::from_edges([(1, 2), (2, 3), (1, 3)]);
        let t2 = Graph::from_edges([(1, 2), (2, 4), (1, 4)]);
        let c4 = clique_sum(&t1, &t2, &set(&[1, 2])).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert!(c4.vertices().all(|v| c4.degree(v) == 2));
        let disjoint = clique_sum(&t1, &Graph::from_edges([(5, 6)]), &BTreeSet::new()).unwrap();
        assert_eq!(disjoint.edge_count(), 4);
        let k4a = generators::complete(4).unwrap();
        let mut k4b = Graph::new();
        for (a, b) in [(1, 2), (1, 3), (2, 3), (1, 5), (2, 5), (3, 5)] {
            k4b.add_edge(a, b);
        }
        let s = clique_sum(&k4a, &k4b, &set(&[1, 2, 3])).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (5, 6));
        assert!(clique_sum(&t1, &t2, &set(&[1])).is_err());
    }

    #[test]
    fn rejects_bad_trees() {
        let cyc = generators::cycle(3).unwrap();
        assert_eq!(TreeDecomposition::new(cyc, BTreeMap::new()), Err(DecompositionError::NotATree));
        let p = generators::path(3).unwrap();
        assert_eq!(
            TreeDecomposition::new(p, BTreeMap::from([(2, Edge::new(1, 2))])),
            Err(DecompositionError::LabelOnInnerNode(2))
        );
    }

    #[test]
    fn json_round_trip() {
        let td = star_of(&generators::complete(3).unwrap());
        let text = serde_json::to_string(&td).unwrap();
        assert!(text.contains("\"leaf_labels\":{\"1\":[1,2]"));
        let back: TreeDecomposition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, td);
        let with_bags = td.to_json(true);
        assert_eq!(with_bags["bags"]["0"], serde_json::json!([1, 2, 3]));
    }

    #[test]
    fn normalization_prunes() {
        // 0 - 1 - 2 with an unlabelled spur 3 on node 1
        let tree = Graph::from_edges([(0, 1), (1, 2), (1, 3)]);
        let td = TreeDecomposition::new(tree, BTreeMap::from([(0, Edge::new(1, 2)), (2, Edge::new(2, 3))])).unwrap();
        let n = td.normalized();
        assert_eq!(n.tree().vertex_count(), 2);
        assert_eq!(n.width().unwrap(), td.width().unwrap());
    }
}
