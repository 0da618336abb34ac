use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::connectivity::is_theta_connected_paths;
use crate::graph::{Edge, Graph, Subgraph, Vertex};
use crate::structures::{contract, supports, validate_necklace, Necklace, NecklaceParams};

use super::bounds::path_or_hub_bound;
use super::{checked, ExtractionError};

/// A spanning forest of `g` that contains a spanning tree of every bead:
/// bead edges first, then the other edges in breadth-first order from the
/// least vertex of each component.
pub fn bead_spanning_tree(g: &Graph, beads: &[Subgraph]) -> Graph {
    let mut parent: BTreeMap<Vertex, Vertex> = g.vertices().map(|v| (v, v)).collect();
    fn root(parent: &mut BTreeMap<Vertex, Vertex>, v: Vertex) -> Vertex {
        let mut r = v;
        while parent[&r] != r {
            r = parent[&r];
        }
        let mut x = v;
        while parent[&x] != r {
            let next = parent[&x];
            parent.insert(x, r);
            x = next;
        }
        r
    }
    let mut order: Vec<Edge> = beads.iter().flat_map(|b| b.edges.iter().copied()).collect();
    let mut seen = BTreeSet::new();
    for start in g.vertices() {
        if !seen.insert(start) {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                order.push(Edge::new(u, w));
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    let mut tree = Graph::new();
    for v in g.vertices() {
        tree.add_vertex(v);
    }
    for e in order {
        let (a, b) = (root(&mut parent, e.u()), root(&mut parent, e.v()));
        if a != b {
            parent.insert(a, b);
            tree.add_edge(e.u(), e.v());
        }
    }
    tree
}

pub(crate) enum Outcome {
    Hub { z: Vertex, parts: Vec<BTreeSet<Vertex>> },
    Path { path: Vec<Vertex>, parts: Vec<BTreeSet<Vertex>> },
}

fn holds_bead(part: &BTreeSet<Vertex>, beads: &[Subgraph]) -> bool {
    beads.iter().any(|b| b.vertices.is_subset(part))
}

/// Components of `tree - z` that contain a whole bead.
fn parts_around(tree: &Graph, z: Vertex, beads: &[Subgraph]) -> Vec<BTreeSet<Vertex>> {
    let rest = tree.without_vertices(&BTreeSet::from([z]));
    rest.components().into_iter().filter(|c| holds_bead(c, beads)).collect()
}

fn find_hub(tree: &Graph, beads: &[Subgraph], d: usize) -> Option<Outcome> {
    tree.vertices().filter(|&z| tree.degree(z) >= d).find_map(|z| {
        let parts = parts_around(tree, z, beads);
        (parts.len() >= d).then_some(Outcome::Hub { z, parts })
    })
}

/// Components of `tree \ E(path)`, one per path vertex, if each holds a bead.
fn parts_along(tree: &Graph, path: &[Vertex], beads: &[Subgraph]) -> Option<Vec<BTreeSet<Vertex>>> {
    let mut rest = tree.clone();
    for w in path.windows(2) {
        rest.remove_edge(Edge::new(w[0], w[1]));
    }
    path.iter().map(|&v| Some(rest.reachable_from([v])).filter(|c| holds_bead(c, beads))).collect()
}

/// First path on `len` vertices, by start then end vertex, whose pieces all
/// hold a bead.
pub(crate) fn find_path(tree: &Graph, beads: &[Subgraph], len: usize) -> Option<Outcome> {
    if len == 0 {
        return None;
    }
    for u in tree.vertices() {
        let mut pred: BTreeMap<Vertex, (Vertex, usize)> = BTreeMap::from([(u, (u, 1))]);
        let mut queue = VecDeque::from([u]);
        let mut ends = Vec::new();
        while let Some(x) = queue.pop_front() {
            let depth = pred[&x].1;
            if depth == len {
                ends.push(x);
                continue;
            }
            for w in tree.neighbors(x) {
                if let Entry::Vacant(slot) = pred.entry(w) {
                    slot.insert((x, depth + 1));
                    queue.push_back(w);
                }
            }
        }
        ends.sort_unstable();
        for v in ends {
            let mut path = vec![v];
            while *path.last().expect("nonempty") != u {
                path.push(pred[path.last().expect("nonempty")].0);
            }
            path.reverse();
            if let Some(parts) = parts_along(tree, &path, beads) {
                return Some(Outcome::Path { path, parts });
            }
        }
    }
    None
}

/// Hub with at least `max(d, 3)` bead-holding branches, else a path on `n`
/// vertices, else a hub with at least `d` branches. Preferring real branch
/// points keeps `d = 2` from always answering with a hub.
pub(crate) fn path_or_hub(tree: &Graph, beads: &[Subgraph], d: usize, n: usize) -> Option<Outcome> {
    find_hub(tree, beads, d.max(3)).or_else(|| find_path(tree, beads, n)).or_else(|| {
        if d < 3 {
            find_hub(tree, beads, d)
        } else {
            None
        }
    })
}

pub(crate) fn path_necklace(tree: &Graph, path: &[Vertex], parts: &[BTreeSet<Vertex>]) -> Necklace {
    let n = path.len();
    let beads = parts.iter().map(|p| Subgraph::induced(tree, p)).collect();
    let mut matchings: Vec<BTreeSet<Edge>> = path.windows(2).map(|w| BTreeSet::from([Edge::new(w[0], w[1])])).collect();
    matchings.push(BTreeSet::new());
    Necklace { params: NecklaceParams { t: 1, s: 0, l: 0, n }, beads, matchings, hubs: BTreeSet::new() }
}

pub(crate) fn hub_necklace(tree: &Graph, hubs: BTreeSet<Vertex>, parts: &[BTreeSet<Vertex>]) -> Necklace {
    let beads: Vec<Subgraph> = parts.iter().map(|p| Subgraph::induced(tree, p)).collect();
    let n = beads.len();
    Necklace {
        params: NecklaceParams { t: 0, s: 0, l: hubs.len(), n },
        beads,
        matchings: vec![BTreeSet::new(); n],
        hubs,
    }
}

/// From a connected `g` and a `(0,0,0,m)`-necklace with `m ≥ d^n`: either a
/// `(0,0,1,d)`-necklace whose hub has a bead in each of `d` branches of a
/// spanning tree, or a `(1,0,0,n)`-necklace strung along a tree path. Both
/// are supported by the input.
pub fn long_path_or_high_degree(g: &Graph, n0: &Necklace, d: usize, n: usize) -> Result<Necklace, ExtractionError> {
    let p = n0.params;
    if (p.t, p.s, p.l) != (0, 0, 0) {
        return Err(ExtractionError::Parameter(format!("expected a (0,0,0,m)-necklace, got {p}")));
    }
    if d < 2 || n < 2 {
        return Err(ExtractionError::Parameter(format!("need d >= 2 and n >= 2, got d = {d}, n = {n}")));
    }
    if path_or_hub_bound(d, n).is_none_or(|b| n0.len() < b) {
        return Err(ExtractionError::Hypothesis(format!("{} beads, fewer than {d}^{n}", n0.len())));
    }
    if !g.is_connected() {
        return Err(ExtractionError::Hypothesis("graph is not connected".into()));
    }
    validate_necklace(g, n0).into_result()?;
    let tree = bead_spanning_tree(g, &n0.beads);
    let out = match path_or_hub(&tree, &n0.beads, d, n) {
        Some(Outcome::Hub { z, parts }) => hub_necklace(&tree, BTreeSet::from([z]), &parts[..d]),
        Some(Outcome::Path { path, parts }) => path_necklace(&tree, &path, &parts),
        None => return Err(ExtractionError::Hypothesis("spanning tree has neither a hub nor a long path".into())),
    };
    debug_assert!(supports(n0, &out));
    checked(g, out)
}

/// A `(0,0,θ,n)`-necklace, or a `(1,0,0,p)`-necklace whose beads each hold
/// `θ` vertices of `u`, supported by the θ-connected set `u`.
///
/// Hubs are collected one at a time: each round works in the component of
/// `G - Z` holding most of `u`, and either finds a further hub with at least
/// `n` branches or strings `pθ` beads along a path and merges them `θ` at a
/// time.
pub fn init_necklace(
    g: &Graph,
    u: &BTreeSet<Vertex>,
    theta: usize,
    n: usize,
    p: usize,
) -> Result<Necklace, ExtractionError> {
    if let Some(v) = u.iter().find(|&&v| !g.has_vertex(v)) {
        return Err(ExtractionError::Parameter(format!("vertex {v} of U is not in the graph")));
    }
    if theta > 0 && !is_theta_connected_paths(g, u, theta) {
        return Err(ExtractionError::Hypothesis(format!("U is not {theta}-connected")));
    }
    init_unchecked(g, u, theta, n, p)
}

pub(crate) fn init_unchecked(
    g: &Graph,
    u: &BTreeSet<Vertex>,
    theta: usize,
    n: usize,
    p: usize,
) -> Result<Necklace, ExtractionError> {
    if n < 2 || p < 2 {
        return Err(ExtractionError::Parameter(format!("need n >= 2 and p >= 2, got n = {n}, p = {p}")));
    }
    if u.len() < n {
        return Err(ExtractionError::Hypothesis(format!("|U| = {} is less than n = {n}", u.len())));
    }
    if theta == 0 {
        return checked(g, Necklace::singletons(u.iter().copied().take(n)));
    }
    let mut beads: Vec<Subgraph> = Necklace::singletons(u.iter().copied()).beads;
    let mut hubs = BTreeSet::new();
    for round in 0..theta {
        let rest = g.without_vertices(&hubs);
        let home = rest
            .components()
            .into_iter()
            .rev()
            .max_by_key(|c| c.intersection(u).count())
            .ok_or_else(|| ExtractionError::Hypothesis("hubs exhaust the graph".into()))?;
        let h = rest.induced_subgraph(&home);
        beads.retain(|b| b.vertices.is_subset(&home));
        let tree = bead_spanning_tree(&h, &beads);
        match path_or_hub(&tree, &beads, n, p * theta) {
            Some(Outcome::Hub { z, parts }) => {
                log::debug!("round {round}: hub {z} with {} branches", parts.len());
                hubs.insert(z);
                beads = parts.iter().map(|c| Subgraph::induced(&tree, c)).collect();
            }
            Some(Outcome::Path { path, parts }) => {
                log::debug!("round {round}: path on {} vertices", path.len());
                let long = path_necklace(&tree, &path, &parts);
                let cuts: Vec<usize> = (1..p).map(|k| k * theta).collect();
                return checked(g, contract(&long, &cuts)?);
            }
            None => {
                return Err(ExtractionError::Hypothesis(format!(
                    "round {round}: no hub with {n} branches and no path on {} vertices",
                    p * theta
                )))
            }
        }
    }
    if beads.len() < n {
        return Err(ExtractionError::Hypothesis(format!("only {} beads remain for {theta} hubs", beads.len())));
    }
    beads.truncate(n);
    let nk = Necklace {
        params: NecklaceParams { t: 0, s: 0, l: theta, n },
        matchings: vec![BTreeSet::new(); n],
        beads,
        hubs,
    };
    checked(g, nk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use crate::structures::is_supported_by;

    fn all_singletons(g: &Graph) -> Necklace {
        Necklace::singletons(g.vertices())
    }

    #[test]
    fn star_gives_hub() {
        let g = generators::star(8).unwrap();
        let out = long_path_or_high_degree(&g, &all_singletons(&g), 3, 2).unwrap();
        assert_eq!(out.params, NecklaceParams { t: 0, s: 0, l: 1, n: 3 });
        assert_eq!(out.hubs, BTreeSet::from([1]));
    }

    #[test]
    fn path_gives_path() {
        let g = generators::path(9).unwrap();
        let n0 = all_singletons(&g);
        let out = long_path_or_high_degree(&g, &n0, 3, 2).unwrap();
        assert_eq!(out.params, NecklaceParams { t: 1, s: 0, l: 0, n: 2 });
        assert!(supports(&n0, &out));
        let g = generators::path(8).unwrap();
        let n0 = all_singletons(&g);
        // Eight beads fall short of 3^2.
        assert!(matches!(long_path_or_high_degree(&g, &n0, 3, 2), Err(ExtractionError::Hypothesis(_))));
        let out = long_path_or_high_degree(&g, &n0, 2, 3).unwrap();
        assert_eq!(out.params, NecklaceParams { t: 1, s: 0, l: 0, n: 3 });
        assert!(long_path_or_high_degree(&g, &n0, 3, 3).is_err());
    }

    #[test]
    fn spanning_tree_keeps_beads_whole() {
        let g = generators::cycle(6).unwrap();
        let bead = Subgraph::from_edges([Edge::new(3, 4), Edge::new(4, 5)]);
        let tree = bead_spanning_tree(&g, std::slice::from_ref(&bead));
        assert!(tree.is_tree());
        assert!(tree.has_edge(3, 4) && tree.has_edge(4, 5));
    }

    #[test]
    fn biclique_collects_two_hubs() {
        let g = generators::complete_bipartite(2, 9).unwrap();
        let u: BTreeSet<Vertex> = (3..=11).collect();
        let out = init_necklace(&g, &u, 2, 3, 2).unwrap();
        assert_eq!(out.params, NecklaceParams { t: 0, s: 0, l: 2, n: 3 });
        assert_eq!(out.hubs, BTreeSet::from([1, 2]));
        assert!(is_supported_by(&out, &u));
    }

    #[test]
    fn long_path_is_strung() {
        let g = generators::path(12).unwrap();
        let u = g.vertex_set();
        let out = init_necklace(&g, &u, 1, 3, 4).unwrap();
        assert_eq!(out.params, NecklaceParams { t: 1, s: 0, l: 0, n: 4 });
        let out = init_necklace(&g, &u, 0, 3, 4).unwrap();
        assert_eq!(out.params, NecklaceParams { t: 0, s: 0, l: 0, n: 3 });
        assert!(out.beads.iter().all(|b| b.vertices.len() == 1));
    }

    #[test]
    fn path_beads_hold_theta_vertices_of_u() {
        let g = generators::cycle(10).unwrap();
        let u = g.vertex_set();
        let out = init_necklace(&g, &u, 2, 3, 3).unwrap();
        assert_eq!(out.params, NecklaceParams { t: 1, s: 0, l: 0, n: 3 });
        assert!(out.beads.iter().all(|b| b.vertices.intersection(&u).count() >= 2));
    }
}
