//! Independent oracles and graph catalogs shared by the integration tests.
//!
//! Nothing here calls the library's connectivity or decomposition code: the
//! oracles work on their own bitmask graphs by plain enumeration.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use theta_width::graph::{Graph, Vertex};

/// A graph on `0..n` as adjacency masks, with the original names.
pub struct Small {
    pub adj: Vec<u32>,
    pub names: Vec<Vertex>,
}

impl Small {
    pub fn new(g: &Graph) -> Small {
        let names: Vec<Vertex> = g.vertices().collect();
        assert!(names.len() <= 32, "oracle graphs have at most 32 vertices");
        let index: BTreeMap<Vertex, usize> = names.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![0u32; names.len()];
        for e in g.edges() {
            let (a, b) = (index[&e.u()], index[&e.v()]);
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Small { adj, names }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn full(&self) -> u32 {
        if self.n() == 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        }
    }

    pub fn mask(&self, set: &BTreeSet<Vertex>) -> u32 {
        set.iter()
            .map(|v| 1u32 << self.names.iter().position(|x| x == v).expect("vertex of the graph"))
            .fold(0, |a, b| a | b)
    }

    /// Open neighbourhood of `set`.
    pub fn nbhd(&self, set: u32) -> u32 {
        bits(set).fold(0, |acc, i| acc | self.adj[i]) & !set
    }

    /// Vertices of `within` reachable from `seed ∩ within`.
    pub fn reach(&self, seed: u32, within: u32) -> u32 {
        let mut seen = seed & within;
        let mut frontier = seen;
        while frontier != 0 {
            let next = self.nbhd(frontier) & within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn components(&self, within: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut left = within;
        while left != 0 {
            let c = self.reach(left & left.wrapping_neg(), within);
            out.push(c);
            left &= !c;
        }
        out
    }
}

pub fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// All `k`-subsets of `mask`, as masks.
pub fn subsets_of_size(mask: u32, k: usize) -> Vec<u32> {
    let items: Vec<usize> = bits(mask).collect();
    let mut out = Vec::new();
    fn go(items: &[usize], k: usize, start: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k {
                break;
            }
            go(items, k - 1, i + 1, acc | 1 << items[i], out);
        }
    }
    go(&items, k, 0, 0, &mut out);
    out
}

/// Least `|S|` such that `G - S` has no path from `X \ S` to `Y \ S`,
/// found by trying every `S` in order of size.
pub fn brute_separator(s: &Small, x: u32, y: u32) -> usize {
    let full = s.full();
    for k in 0..=s.n() {
        for sep in subsets_of_size(full, k) {
            let rest = full & !sep;
            if s.reach(x & rest, rest) & y == 0 {
                return k;
            }
        }
    }
    unreachable!("removing every vertex separates")
}

/// θ-connectivity of `z` checked pair by pair with [`brute_separator`].
pub fn brute_theta_connected(g: &Graph, z: &BTreeSet<Vertex>, theta: usize) -> bool {
    let s = Small::new(g);
    let zm = s.mask(z);
    for k in 1..=theta.min(z.len()) {
        let family = subsets_of_size(zm, k);
        for (i, &x) in family.iter().enumerate() {
            for &y in &family[i..] {
                if brute_separator(&s, x, y) < k {
                    return false;
                }
            }
        }
    }
    true
}

/// Least width of an ordinary (bag) tree-decomposition with adhesion `< θ`.
///
/// Roots a decomposition at a bag `X`; every component `C` of `G - X` then
/// hangs off its own subtree whose top bag contains `N(C)`, so the
/// adhesion there is exactly `|N(C)|`.
pub fn bag_width(g: &Graph, theta: usize) -> usize {
    let s = Small::new(g);
    (0..s.n().max(1))
        .find(|&k| {
            let mut memo = HashMap::new();
            fits(&s, s.full(), k, theta, &mut memo)
        })
        .expect("one bag always fits")
}

fn fits(s: &Small, c: u32, k: usize, theta: usize, memo: &mut HashMap<u32, bool>) -> bool {
    if let Some(&v) = memo.get(&c) {
        return v;
    }
    let nc = s.nbhd(c);
    let used = nc.count_ones() as usize;
    let mut ok = false;
    if used <= k {
        'outer: for size in 1..=(k + 1 - used).min(c.count_ones() as usize) {
            for part in subsets_of_size(c, size) {
                let rest = c & !part;
                if s.components(rest)
                    .into_iter()
                    .all(|d| (s.nbhd(d).count_ones() as usize) < theta && fits(s, d, k, theta, memo))
                {
                    ok = true;
                    break 'outer;
                }
            }
        }
    }
    memo.insert(c, ok);
    ok
}

/// θ-tree-width under the edge-leaf definition (adhesion `< θ`).
///
/// The leaf for `uv` shares with the rest of the tree exactly the ends of
/// `uv` lying in other edges, which rules out every graph for `θ = 1` unless
/// all edges are isolated, and for `θ = 2` unless each edge has an end of
/// degree one. Past that the edge-leaf and bag definitions coincide.
pub fn edge_leaf_width(g: &Graph, theta: usize) -> Option<usize> {
    let leaf_adhesion_ok = g.edges().all(|e| {
        let shared = e.ends().iter().filter(|&&x| g.degree(x) >= 2).count();
        shared < theta
    });
    leaf_adhesion_ok.then(|| bag_width(g, theta))
}

/// Checks a minor model directly: nonempty disjoint connected branch sets and
/// a host edge between the branch sets of every pattern edge.
pub fn model_ok(host: &Graph, pattern: &Graph, branch_sets: &BTreeMap<Vertex, BTreeSet<Vertex>>) -> bool {
    let mut used = BTreeSet::new();
    for v in pattern.vertices() {
        let Some(set) = branch_sets.get(&v) else { return false };
        if set.is_empty() || !set.iter().all(|x| host.has_vertex(*x) && used.insert(*x)) {
            return false;
        }
        let first = *set.iter().next().expect("nonempty");
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(x) = stack.pop() {
            for y in host.neighbors(x) {
                if set.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        if seen.len() != set.len() {
            return false;
        }
    }
    pattern
        .edges()
        .all(|e| branch_sets[&e.u()].iter().any(|&a| branch_sets[&e.v()].iter().any(|&b| host.has_edge(a, b))))
}

/// `g` with every vertex renamed through `map`.
pub fn relabel(g: &Graph, map: &BTreeMap<Vertex, Vertex>) -> Graph {
    let mut h = Graph::new();
    for v in g.vertices() {
        h.add_vertex(map[&v]);
    }
    for e in g.edges() {
        h.add_edge(map[&e.u()], map[&e.v()]);
    }
    h
}

/// A random bijection from the vertices of `g` onto `1..=|V|` shifted by `offset`.
pub fn random_names(g: &Graph, offset: Vertex, rng: &mut impl Rng) -> BTreeMap<Vertex, Vertex> {
    let mut targets: Vec<Vertex> = (1..=g.vertex_count() as Vertex).map(|i| i + offset).collect();
    targets.shuffle(rng);
    g.vertices().zip(targets).collect()
}

fn pair_bit(i: usize, j: usize) -> u64 {
    let (a, b) = (i.min(j), i.max(j));
    1u64 << (b * (b - 1) / 2 + a)
}

/// Least edge code over relabellings that list vertices by degree.
fn canonical_code(adj: &[u32]) -> u64 {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| adj[v].count_ones());
    let class: Vec<u32> = order.iter().map(|&v| adj[v].count_ones()).collect();
    let mut best = u64::MAX;
    let mut slot = vec![usize::MAX; n];
    fn go(p: usize, adj: &[u32], order: &[usize], class: &[u32], slot: &mut Vec<usize>, used: u32, best: &mut u64) {
        let n = adj.len();
        if p == n {
            let mut code = 0;
            for u in 0..n {
                for w in bits(adj[u]).filter(|&w| w > u) {
                    code |= pair_bit(slot[u], slot[w]);
                }
            }
            *best = (*best).min(code);
            return;
        }
        for &v in order {
            if used >> v & 1 == 0 && adj[v].count_ones() == class[p] {
                slot[v] = p;
                go(p + 1, adj, order, class, slot, used | 1 << v, best);
            }
        }
    }
    go(0, adj, &order, &class, &mut slot, 0, &mut best);
    best
}

fn from_adj(adj: &[u32]) -> Graph {
    let mut g = Graph::new();
    for (i, &row) in adj.iter().enumerate() {
        g.add_vertex(i as Vertex + 1);
        for j in bits(row).filter(|&j| j > i) {
            g.add_edge(i as Vertex + 1, j as Vertex + 1);
        }
    }
    g
}

/// Every graph on exactly `n` vertices (named `1..=n`), one per isomorphism class.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut level: Vec<Vec<u32>> = vec![vec![0]];
    for size in 2..=n {
        let mut seen = BTreeMap::new();
        for adj in &level {
            for nb in 0..1u32 << (size - 1) {
                let mut next = adj.clone();
                for i in bits(nb) {
                    next[i] |= 1 << (size - 1);
                }
                next.push(nb);
                seen.entry(canonical_code(&next)).or_insert(next);
            }
        }
        level = seen.into_values().collect();
    }
    if n == 0 {
        return Vec::new();
    }
    level.iter().map(|adj| from_adj(adj)).collect()
}

/// Connected graphs on `1..=max_n` vertices up to isomorphism.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(graphs_up_to_iso).filter(|g| g.is_connected()).collect()
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| rooted_code(adj, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Unrooted tree code: the least rooted code over the tree's centres.
fn tree_code(adj: &[Vec<usize>]) -> String {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| rooted_code(adj, c, usize::MAX)).min().expect("a tree has a centre")
}

/// Every tree on exactly `n` vertices (named `1..=n`), one per isomorphism class.
pub fn trees_up_to_iso(n: usize) -> Vec<Graph> {
    let mut level: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for size in 2..=n {
        let mut seen = BTreeMap::new();
        for adj in &level {
            for v in 0..size - 1 {
                let mut next = adj.clone();
                next[v].push(size - 1);
                next.push(vec![v]);
                seen.entry(tree_code(&next)).or_insert(next);
            }
        }
        level = seen.into_values().collect();
    }
    level
        .iter()
        .map(|adj| {
            let mut g = Graph::new();
            g.add_vertex(1);
            for (v, nbrs) in adj.iter().enumerate() {
                for &w in nbrs.iter().filter(|&&w| w > v) {
                    g.add_edge(v as Vertex + 1, w as Vertex + 1);
                }
            }
            g
        })
        .collect()
}
