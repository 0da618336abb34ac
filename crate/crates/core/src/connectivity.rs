//! Disjoint paths, θ-connected sets and violating separations.
//!
//! Two independent routes decide θ-connectivity: linking pairs of subsets by
//! disjoint paths, and searching for separations of order below θ that split
//! the set. The separation route enumerates separators on small graphs and
//! falls back to minimum vertex cuts above [`ENUMERATION_LIMIT`] vertices.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::bits::{subsets_of_size, BitGraph, Mask, MAX_BITS};
use crate::graph::{Graph, GraphError, Separation, Vertex};

/// Largest graph handled by exhaustive separator enumeration.
pub const ENUMERATION_LIMIT: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("instance too large: {vertices} vertices, limit {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A maximum family of vertex-disjoint `(X, Y)`-paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointPaths {
    pub count: usize,
    pub paths: Vec<Vec<Vertex>>,
}

const INF: u32 = u32::MAX / 2;

/// Unit vertex-capacity flow network over a graph: vertex `i` becomes an arc
/// `2i -> 2i+1`; graph edges and terminal arcs are uncapacitated.
struct FlowNet {
    ids: Vec<Vertex>,
    to: Vec<usize>,
    cap: Vec<u32>,
    orig: Vec<u32>,
    out: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
}

impl FlowNet {
    fn build(g: &Graph, removed: &BTreeSet<Vertex>, sources: &BTreeSet<Vertex>, sinks: &BTreeSet<Vertex>) -> FlowNet {
        let ids: Vec<Vertex> = g.vertices().collect();
        let n = ids.len();
        let mut net = FlowNet {
            ids,
            to: Vec::new(),
            cap: Vec::new(),
            orig: Vec::new(),
            out: vec![Vec::new(); 2 * n + 2],
            source: 2 * n,
            sink: 2 * n + 1,
        };
        let idx = |v: Vertex| net.ids.binary_search(&v).ok();
        let live: Vec<bool> = net.ids.iter().map(|v| !removed.contains(v)).collect();
        let mut arcs = Vec::new();
        for (i, _) in live.iter().enumerate().filter(|(_, &alive)| alive) {
            arcs.push((2 * i, 2 * i + 1, 1));
        }
        for e in g.edges() {
            let (a, b) = (idx(e.u()).unwrap(), idx(e.v()).unwrap());
            if live[a] && live[b] {
                arcs.push((2 * a + 1, 2 * b, INF));
                arcs.push((2 * b + 1, 2 * a, INF));
            }
        }
        for &x in sources {
            if let Some(i) = idx(x).filter(|&i| live[i]) {
                arcs.push((net.source, 2 * i, INF));
            }
        }
        for &y in sinks {
            if let Some(i) = idx(y).filter(|&i| live[i]) {
                arcs.push((2 * i + 1, net.sink, INF));
            }
        }
        for (a, b, c) in arcs {
            net.add_arc(a, b, c);
        }
        net
    }

    fn add_arc(&mut self, a: usize, b: usize, c: u32) {
        self.out[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.orig.push(c);
        self.out[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
        self.orig.push(0);
    }

    fn max_flow(&mut self) -> usize {
        let mut flow = 0;
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; self.out.len()];
            let mut seen = vec![false; self.out.len()];
            seen[self.source] = true;
            let mut queue = VecDeque::from([self.source]);
            while let Some(x) = queue.pop_front() {
                for &a in &self.out[x] {
                    let y = self.to[a];
                    if self.cap[a] > 0 && !seen[y] {
                        seen[y] = true;
                        pred[y] = Some(a);
                        queue.push_back(y);
                    }
                }
            }
            if !seen[self.sink] {
                return flow;
            }
            let mut y = self.sink;
            while let Some(a) = pred[y] {
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.to[a ^ 1];
            }
            flow += 1;
        }
    }

    fn residual_reach(&self) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                if self.cap[a] > 0 && !seen[self.to[a]] {
                    seen[self.to[a]] = true;
                    queue.push_back(self.to[a]);
                }
            }
        }
        seen
    }

    /// Decomposes the flow into vertex sequences from source to sink.
    fn paths(&self) -> Vec<Vec<Vertex>> {
        let mut used = vec![0u32; self.to.len()];
        let mut out = Vec::new();
        loop {
            let mut path = Vec::new();
            let mut x = self.source;
            while x != self.sink {
                let next =
                    self.out[x].iter().copied().find(|&a| a.is_multiple_of(2) && self.orig[a] - self.cap[a] > used[a]);
                let Some(a) = next else { break };
                used[a] += 1;
                x = self.to[a];
                if x < self.source && x.is_multiple_of(2) {
                    path.push(self.ids[x / 2]);
                }
            }
            if path.is_empty() {
                return out;
            }
            out.push(path);
        }
    }
}

/// Maximum number of vertex-disjoint `(X, Y)`-paths with a witness family.
/// Each vertex of `X ∩ Y` is an edgeless path; every other path meets
/// `X ∪ Y` only at its two ends. Vertices outside `g` are ignored.
pub fn max_disjoint_paths(g: &Graph, x: &BTreeSet<Vertex>, y: &BTreeSet<Vertex>) -> DisjointPaths {
    let x: BTreeSet<Vertex> = x.iter().copied().filter(|&v| g.has_vertex(v)).collect();
    let y: BTreeSet<Vertex> = y.iter().copied().filter(|&v| g.has_vertex(v)).collect();
    let both: BTreeSet<Vertex> = &x & &y;
    let mut paths: Vec<Vec<Vertex>> = both.iter().map(|&v| vec![v]).collect();
    let mut net = FlowNet::build(g, &both, &(&x - &both), &(&y - &both));
    net.max_flow();
    for p in net.paths() {
        let start = p.iter().rposition(|v| x.contains(v)).expect("path starts in X");
        let tail = &p[start..];
        let end = tail.iter().position(|v| y.contains(v)).expect("path ends in Y");
        paths.push(tail[..=end].to_vec());
    }
    DisjointPaths { count: paths.len(), paths }
}

/// A minimum set of vertices meeting every `(X, Y)`-path; it contains `X ∩ Y`.
pub fn min_vertex_cut(g: &Graph, x: &BTreeSet<Vertex>, y: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    let both: BTreeSet<Vertex> = x & y;
    let mut net = FlowNet::build(g, &both, &(x - &both), &(y - &both));
    net.max_flow();
    let reach = net.residual_reach();
    let mut cut = both;
    for (i, &v) in net.ids.iter().enumerate() {
        if reach[2 * i] && !reach[2 * i + 1] {
            cut.insert(v);
        }
    }
    cut
}

/// A pair `(X, Y)` of equal-size subsets of `z`, at most `theta` each, that
/// cannot be fully linked, together with the number of disjoint paths found.
pub fn unlinked_pair(
    g: &Graph,
    z: &BTreeSet<Vertex>,
    theta: usize,
) -> Option<(BTreeSet<Vertex>, BTreeSet<Vertex>, usize)> {
    let zs: Vec<Vertex> = z.iter().copied().collect();
    for k in 1..=theta.min(zs.len()) {
        let subsets = combinations(&zs, k);
        for (i, a) in subsets.iter().enumerate() {
            for b in &subsets[i..] {
                let found = max_disjoint_paths(g, a, b).count;
                if found < k {
                    return Some((a.clone(), b.clone(), found));
                }
            }
        }
    }
    None
}

/// θ-connectivity by the linkage definition. Panics if `z` is not a subset of `V(g)`.
pub fn is_theta_connected_paths(g: &Graph, z: &BTreeSet<Vertex>, theta: usize) -> bool {
    assert!(z.iter().all(|&v| g.has_vertex(v)), "Z must be a subset of V(G)");
    unlinked_pair(g, z, theta).is_none()
}

/// How [`is_theta_connected_separations_with`] searches for a violating separation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationStrategy {
    /// Exhaustive over separators and component placements.
    Enumerate,
    /// Minimum vertex cuts between subsets of `Z`.
    CutSearch,
}

/// θ-connectivity by the separation definition, choosing the strategy by size.
pub fn is_theta_connected_separations(
    g: &Graph,
    z: &BTreeSet<Vertex>,
    theta: usize,
) -> Result<bool, ConnectivityError> {
    let strategy = if g.vertex_count() <= ENUMERATION_LIMIT {
        SeparationStrategy::Enumerate
    } else {
        SeparationStrategy::CutSearch
    };
    is_theta_connected_separations_with(g, z, theta, strategy)
}

pub fn is_theta_connected_separations_with(
    g: &Graph,
    z: &BTreeSet<Vertex>,
    theta: usize,
    strategy: SeparationStrategy,
) -> Result<bool, ConnectivityError> {
    if let Some(&v) = z.iter().find(|&&v| !g.has_vertex(v)) {
        return Err(GraphError::UnknownVertex(v).into());
    }
    match strategy {
        SeparationStrategy::Enumerate => {
            check_size(g, ENUMERATION_LIMIT.max(16))?;
            let bg = BitGraph::new(g);
            let zm = bg.mask_of(z);
            let mut violated = false;
            for_each_separation(&bg, theta, &mut |a, b, order| {
                violated = (zm & a).count_ones() > order && (zm & b).count_ones() > order;
                !violated
            });
            Ok(!violated)
        }
        SeparationStrategy::CutSearch => {
            check_size(g, MAX_BITS)?;
            Ok(cut_search_violation(g, z, theta).is_none())
        }
    }
}

fn check_size(g: &Graph, limit: usize) -> Result<(), ConnectivityError> {
    if g.vertex_count() > limit {
        Err(ConnectivityError::TooLarge { vertices: g.vertex_count(), limit })
    } else {
        Ok(())
    }
}

/// Finds a violating separation from a deficient minimum vertex cut.
fn cut_search_violation(g: &Graph, z: &BTreeSet<Vertex>, theta: usize) -> Option<Separation> {
    let zs: Vec<Vertex> = z.iter().copied().collect();
    for k in 1..=theta.min(zs.len()) {
        let subsets = combinations(&zs, k);
        for (i, a) in subsets.iter().enumerate() {
            for b in &subsets[i + 1..] {
                let cut = min_vertex_cut(g, a, b);
                if cut.len() >= k {
                    continue;
                }
                let rest = g.without_vertices(&cut);
                let mut left = cut.clone();
                left.extend(rest.reachable_from(a.iter().copied().filter(|v| !cut.contains(v))));
                let sep = Separation::with_left(g, left.clone(), g.induced_subgraph(&left).edge_set());
                debug_assert!(sep.order() == cut.len() && sep.violates(z));
                return Some(sep);
            }
        }
    }
    None
}

/// Calls `visit(left, right, order)` for every separation of order below
/// `theta`, given by vertex masks, with at least one component of `G - S` on
/// each side. Each unordered pair is visited once. Stops when `visit` returns false.
pub(crate) fn for_each_separation(bg: &BitGraph, theta: usize, visit: &mut dyn FnMut(Mask, Mask, u32) -> bool) {
    let full = bg.full();
    for size in 0..theta.min(bg.n() + 1) {
        for s in subsets_of_size(full, size) {
            let comps = bg.components(full & !s);
            if comps.len() < 2 {
                continue;
            }
            let rest = &comps[1..];
            // comps[0] stays on the left; the right side needs at least one component
            for choice in 0..(1u64 << rest.len()) - 1 {
                let mut a = s | comps[0];
                let mut b = s;
                for (j, &c) in rest.iter().enumerate() {
                    if choice >> j & 1 == 1 {
                        a |= c;
                    } else {
                        b |= c;
                    }
                }
                if !visit(a, b, size as u32) {
                    return;
                }
            }
        }
    }
}

/// A violating separation of minimum order, ties broken by the
/// lexicographically least left vertex set. Edges inside the separator lie on
/// the left side.
pub fn violating_separation(
    g: &Graph,
    z: &BTreeSet<Vertex>,
    theta: usize,
) -> Result<Option<Separation>, ConnectivityError> {
    Ok(minimum_violators(g, z, theta)?.into_iter().next())
}

/// All violating separations of minimum order (as vertex-side pairs, both
/// orientations), sorted by left vertex set.
pub fn minimum_violators(g: &Graph, z: &BTreeSet<Vertex>, theta: usize) -> Result<Vec<Separation>, ConnectivityError> {
    check_size(g, 20)?;
    if let Some(&v) = z.iter().find(|&&v| !g.has_vertex(v)) {
        return Err(GraphError::UnknownVertex(v).into());
    }
    let bg = BitGraph::new(g);
    let zm = bg.mask_of(z);
    let mut best: Option<u32> = None;
    let mut found: Vec<(Mask, Mask)> = Vec::new();
    for_each_separation(&bg, theta, &mut |a, b, order| {
        if best.is_some_and(|o| order > o) {
            return false;
        }
        if (zm & a).count_ones() > order && (zm & b).count_ones() > order {
            best = Some(order);
            found.push((a, b));
            found.push((b, a));
        }
        true
    });
    let mut seps: Vec<(Vec<Vertex>, Separation)> = found
        .into_iter()
        .map(|(a, _)| {
            let left = bg.set_of(a);
            let edges = g.induced_subgraph(&left).edge_set();
            let sep = Separation::with_left(g, left.clone(), edges);
            (left.into_iter().collect(), sep)
        })
        .collect();
    seps.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(seps.into_iter().map(|(_, s)| s).collect())
}

/// A θ-connected set of maximum size; among those, the lexicographically least.
pub fn max_theta_connected_set(g: &Graph, theta: usize) -> Result<BTreeSet<Vertex>, ConnectivityError> {
    check_size(g, 16)?;
    let bg = BitGraph::new(g);
    let mut family: Vec<(Mask, Mask, u32)> = Vec::new();
    for_each_separation(&bg, theta, &mut |a, b, order| {
        family.push((a, b, order));
        true
    });
    let ok = |zm: Mask| family.iter().all(|&(a, b, order)| (zm & a).count_ones().min((zm & b).count_ones()) <= order);
    let ids: Vec<Vertex> = g.vertices().collect();
    for k in (1..=ids.len()).rev() {
        for c in combinations(&ids, k) {
            if ok(bg.mask_of(&c)) {
                return Ok(c);
            }
        }
    }
    Ok(BTreeSet::new())
}

/// All `k`-subsets of `items` in lexicographic order.
pub(crate) fn combinations(items: &[Vertex], k: usize) -> Vec<BTreeSet<Vertex>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
