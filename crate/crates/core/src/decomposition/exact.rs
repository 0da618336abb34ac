//! Exact θ-tree-width by the clique-sum recursion.
//!
//! `f(H) = min(|V(H)| - 1, max(f(H[C ∪ S] + K_S), f(H - C + K_S)))` over
//! separators `S` with `|S| < θ` and components `C` of `H - S` with
//! `N(C) = S` and `V(H) ≠ C ∪ S`. Separations whose small side is not a
//! single component reduce to this form by monotonicity under subgraphs.
//! Memoized on the vertex set together with the (possibly augmented) edges.

use std::collections::{BTreeMap, HashMap};

use crate::graph::bits::{bits, full_mask, subsets_of_size, Mask, MAX_BITS};
use crate::graph::{Edge, Graph, Vertex};

use super::{check_decomposable, DecompositionError, Node, TreeDecomposition};

/// Default size guard for the exact solver.
pub const DEFAULT_EXACT_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub max_vertices: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { max_vertices: DEFAULT_EXACT_LIMIT }
    }
}

/// `tw_θ(G)` together with a witness decomposition of that width.
///
/// The witness has adhesion at most `max(θ - 1, 2)`: a leaf for an edge whose
/// ends both have further edges always shares both ends with its neighbour,
/// so for `θ ≤ 2` the edge-leaf format cannot reach adhesion below `θ` on
/// most graphs even when the clique-sum value is small.
pub fn theta_tree_width_exact(
    g: &Graph,
    theta: usize,
    options: ExactOptions,
) -> Result<(usize, TreeDecomposition), DecompositionError> {
    check_decomposable(g)?;
    let mut solver = Solver::new(g, theta, options)?;
    let root = solver.root();
    let value = solver.solve(&root);
    let mut next = 0;
    let (tree, labels) = solver.build(&root, &mut next).expect("graph has edges");
    let td = TreeDecomposition::new(tree, labels)?.normalized();
    let width = td.width()?;
    assert!(width <= value, "witness width {width} exceeds value {value}");
    Ok((value, td))
}

/// `tw_θ(G)` only. Isolated vertices are allowed here.
pub fn theta_tree_width_value(g: &Graph, theta: usize, options: ExactOptions) -> Result<usize, DecompositionError> {
    if g.vertex_count() == 0 {
        return Err(DecompositionError::Graph(crate::graph::GraphError::Parameter("empty graph".into())));
    }
    let mut solver = Solver::new(g, theta, options)?;
    let root = solver.root();
    Ok(solver.solve(&root))
}

/// A graph on a subset of the original vertex indices.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Piece {
    vmask: Mask,
    adj: Vec<Mask>,
}

impl Piece {
    fn key(&self) -> Vec<Mask> {
        std::iter::once(self.vmask).chain(bits(self.vmask).map(|i| self.adj[i])).collect()
    }

    fn torso(&self, keep: Mask, s: Mask) -> Piece {
        let mut adj = vec![0; self.adj.len()];
        for i in bits(keep) {
            adj[i] = self.adj[i] & keep;
            if s >> i & 1 == 1 {
                adj[i] |= s & !(1 << i);
            }
        }
        Piece { vmask: keep, adj }
    }

    fn neighborhood(&self, m: Mask) -> Mask {
        bits(m).fold(0, |a, i| a | self.adj[i]) & !m
    }

    fn components(&self, within: Mask) -> Vec<Mask> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            loop {
                let grown = (comp | self.neighborhood(comp)) & within;
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }
}

#[derive(Clone, Copy)]
struct Entry {
    value: usize,
    split: Option<(Mask, Mask)>,
}

struct Solver {
    ids: Vec<Vertex>,
    theta: usize,
    base: Piece,
    memo: HashMap<Vec<Mask>, Entry>,
}

impl Solver {
    fn new(g: &Graph, theta: usize, options: ExactOptions) -> Result<Solver, DecompositionError> {
        let n = g.vertex_count();
        let limit = options.max_vertices.min(MAX_BITS);
        if n > limit {
            return Err(DecompositionError::TooLarge { vertices: n, limit });
        }
        let ids: Vec<Vertex> = g.vertices().collect();
        let adj = ids.iter().map(|&v| g.neighbors(v).fold(0, |m, w| m | 1 << ids.binary_search(&w).unwrap())).collect();
        Ok(Solver { base: Piece { vmask: full_mask(n), adj }, ids, theta, memo: HashMap::new() })
    }

    fn root(&self) -> Piece {
        self.base.clone()
    }

    fn solve(&mut self, h: &Piece) -> usize {
        let key = h.key();
        if let Some(e) = self.memo.get(&key) {
            return e.value;
        }
        let n = h.vmask.count_ones() as usize;
        let mut best = Entry { value: n.saturating_sub(1), split: None };
        for size in 0..self.theta.min(n.saturating_sub(1)) {
            for s in subsets_of_size(h.vmask, size) {
                let comps = h.components(h.vmask & !s);
                if comps.len() < 2 {
                    continue;
                }
                for &c in &comps {
                    if h.neighborhood(c) != s {
                        continue;
                    }
                    let small = h.torso(c | s, s);
                    let a = self.solve(&small);
                    if a >= best.value {
                        continue;
                    }
                    let large = h.torso(h.vmask & !c, s);
                    let v = a.max(self.solve(&large));
                    if v < best.value {
                        best = Entry { value: v, split: Some((s, c)) };
                    }
                }
            }
        }
        self.memo.insert(key, best);
        best.value
    }

    fn edges_of(&self, h: &Piece) -> Vec<Edge> {
        let mut out = Vec::new();
        for i in bits(h.vmask) {
            for j in bits(h.adj[i] & !full_mask(i + 1)) {
                out.push(Edge::new(self.ids[i], self.ids[j]));
            }
        }
        out
    }

    /// Witness for `h` labelled by all edges of `h`; `None` when `h` has no edges.
    fn build(&mut self, h: &Piece, next: &mut Node) -> Option<(Graph, BTreeMap<Node, Edge>)> {
        self.solve(h);
        let entry = self.memo[&h.key()];
        let Some((s, c)) = entry.split else {
            return star(&self.edges_of(h), next);
        };
        let small = h.torso(c | s, s);
        let large = h.torso(h.vmask & !c, s);
        let a = self.build(&small, next);
        let b = self.build(&large, next);
        let sv: Vec<Vertex> = bits(s).map(|i| self.ids[i]).collect();
        let in_s = |e: &Edge| sv.contains(&e.u()) && sv.contains(&e.v());
        let real = |e: &Edge| {
            let (i, j) = (self.ids.binary_search(&e.u()).unwrap(), self.ids.binary_search(&e.v()).unwrap());
            h.adj[i] >> j & 1 == 1
        };
        let (a, b) = match (a, b) {
            (None, None) => return None,
            (Some(x), None) => return Some(drop_leaves(x, |e| in_s(e) && !real(e))),
            (None, Some(y)) => return Some(drop_leaves(y, |e| in_s(e) && !real(e))),
            (Some(x), Some(y)) => (x, y),
        };
        let (a, ta) = attach_point(a, &sv, next);
        let (b, tb) = attach_point(b, &sv, next);
        let (mut tree, mut labels) = a;
        tree = tree.union(&b.0);
        labels.extend(b.1.iter().filter(|(_, e)| !in_s(e)).map(|(&t, &e)| (t, e)));
        tree.add_edge(ta, tb);
        for (t, e) in &b.1 {
            if in_s(e) {
                tree.remove_vertex(*t);
            }
        }
        let fake: Vec<Node> = labels.iter().filter(|(_, e)| in_s(e) && !real(e)).map(|(&t, _)| t).collect();
        for t in fake {
            labels.remove(&t);
        }
        Some((tree, labels))
    }
}

fn star(edges: &[Edge], next: &mut Node) -> Option<(Graph, BTreeMap<Node, Edge>)> {
    let mut tree = Graph::new();
    let mut labels = BTreeMap::new();
    match edges {
        [] => return None,
        [e] => {
            tree.add_vertex(*next);
            labels.insert(*next, *e);
            *next += 1;
        }
        _ => {
            let center = *next;
            *next += 1;
            for e in edges {
                tree.add_edge(center, *next);
                labels.insert(*next, *e);
                *next += 1;
            }
        }
    }
    Some((tree, labels))
}

fn drop_leaves(
    (tree, mut labels): (Graph, BTreeMap<Node, Edge>),
    drop: impl Fn(&Edge) -> bool,
) -> (Graph, BTreeMap<Node, Edge>) {
    labels.retain(|_, e| !drop(e));
    (tree, labels)
}

/// A node whose bag contains every vertex of `s`, or the least node if no bag does.
/// A labelled choice is first pushed down: its label moves to a fresh leaf.
fn attach_point(
    (mut tree, mut labels): (Graph, BTreeMap<Node, Edge>),
    s: &[Vertex],
    next: &mut Node,
) -> ((Graph, BTreeMap<Node, Edge>), Node) {
    let td = TreeDecomposition { tree: tree.clone(), labels: labels.clone() };
    let t = td
        .bags()
        .iter()
        .find(|(_, b)| s.iter().all(|v| b.contains(v)))
        .map(|(&t, _)| t)
        .unwrap_or_else(|| tree.vertices().next().expect("nonempty tree"));
    if let Some(e) = labels.remove(&t) {
        tree.add_edge(t, *next);
        labels.insert(*next, e);
        *next += 1;
    }
    ((tree, labels), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    fn exact(g: &Graph, theta: usize) -> (usize, TreeDecomposition) {
        let (w, td) = theta_tree_width_exact(g, theta, ExactOptions::default()).unwrap();
        td.validate_for(g).unwrap();
        assert_eq!(td.width().unwrap(), w);
        if theta >= 3 {
            assert!(td.adhesion() < theta);
        }
        (w, td)
    }

    #[test]
    fn complete_graphs() {
        for n in 2..=6 {
            let k = generators::complete(n).unwrap();
            for theta in 1..=n {
                assert_eq!(theta_tree_width_value(&k, theta, ExactOptions::default()).unwrap(), n - 1);
            }
            assert_eq!(exact(&k, 3.min(n)).0, n - 1);
        }
    }

    #[test]
    fn cycles() {
        for n in 4..=7 {
            let c = generators::cycle(n).unwrap();
            assert_eq!(theta_tree_width_value(&c, 2, ExactOptions::default()).unwrap(), n - 1);
            assert_eq!(exact(&c, 3).0, 2);
        }
    }

    #[test]
    fn trees_and_grids() {
        let t = generators::random_tree(9, 3).unwrap();
        assert_eq!(theta_tree_width_value(&t, 2, ExactOptions::default()).unwrap(), 1);
        assert_eq!(exact(&t, 3).0, 1);
        // Cutting off the four corners leaves a 4-wheel on {2, 4, 5, 6, 8}.
        assert_eq!(exact(&generators::grid(3).unwrap(), 3).0, 4);
    }

    #[test]
    fn disconnected_and_guard() {
        let g = Graph::from_edges([(1, 2), (2, 3), (1, 3), (4, 5)]);
        assert_eq!(theta_tree_width_value(&g, 1, ExactOptions::default()).unwrap(), 2);
        assert_eq!(exact(&g, 3).0, 2);
        let big = generators::path(20).unwrap();
        assert!(matches!(
            theta_tree_width_exact(&big, 3, ExactOptions::default()),
            Err(DecompositionError::TooLarge { .. })
        ));
        let mut iso = generators::path(3).unwrap();
        iso.add_vertex(9);
        assert_eq!(
            theta_tree_width_exact(&iso, 3, ExactOptions::default()).unwrap_err(),
            DecompositionError::IsolatedVertex(9)
        );
    }
}
