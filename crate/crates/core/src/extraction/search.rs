use std::collections::BTreeSet;

use crate::connectivity::combinations;
use crate::graph::{Graph, Vertex};
use crate::structures::{contract, find_jumps, is_supported_by, reverse, Jump, Necklace, NecklaceParams};

use super::initial::{bead_spanning_tree, find_path, init_unchecked, path_necklace, Outcome};
use super::surgery::jump_increase_s;
use super::{checked, ExtractionError};

struct Search<'a> {
    g: &'a Graph,
    u: &'a BTreeSet<Vertex>,
    theta: usize,
    n: usize,
    budget: usize,
    expanded: usize,
    visited: BTreeSet<String>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), ExtractionError> {
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(ExtractionError::BudgetExhausted(self.budget));
        }
        Ok(())
    }

    /// Depth-first from `seed`; the first state that trims to a valid
    /// `(θ; n)`-necklace supported by `u` wins.
    fn explore(&mut self, seed: Necklace) -> Result<Option<Necklace>, ExtractionError> {
        let mut stack = vec![seed];
        while let Some(nk) = stack.pop() {
            if !self.visited.insert(nk.to_json()) {
                continue;
            }
            self.tick()?;
            if let Some(done) = self.finish(&nk) {
                return Ok(Some(done));
            }
            stack.extend(self.children(&nk));
        }
        Ok(None)
    }

    /// Drops surplus hubs and beads.
    fn finish(&self, nk: &Necklace) -> Option<Necklace> {
        let extra = nk.theta().checked_sub(self.theta)?;
        if extra > nk.params.l || nk.len() < self.n {
            return None;
        }
        let mut out = nk.clone();
        for _ in 0..extra {
            let z = *out.hubs.last().expect("enough hubs");
            out.hubs.remove(&z);
        }
        out.params.l -= extra;
        if out.len() > self.n {
            if out.params.t > 0 {
                out = contract(&out, &(1..self.n).collect::<Vec<_>>()).ok()?;
            } else {
                out.beads.truncate(self.n);
                out.matchings.truncate(self.n);
                out.params.n = self.n;
            }
        }
        checked(self.g, out).ok().filter(|o| is_supported_by(o, self.u))
    }

    /// New hubs, and every jump that can be brought to the `(s+1, s+n')`
    /// position by merging leading beads, in either orientation.
    fn children(&self, nk: &Necklace) -> Vec<Necklace> {
        let mut out = Vec::new();
        if nk.theta() >= self.theta {
            return out;
        }
        let inside = nk.vertex_set();
        for z in self.g.vertices().filter(|z| !inside.contains(z)) {
            if nk.beads.iter().all(|b| b.vertices.iter().any(|&v| self.g.has_edge(z, v))) {
                let mut c = nk.clone();
                c.hubs.insert(z);
                c.params.l += 1;
                out.push(c);
            }
        }
        let NecklaceParams { t, s, .. } = nk.params;
        if t <= s {
            return out;
        }
        for base in [nk.clone(), reverse(nk)] {
            let m = base.len();
            for jump in find_jumps(self.g, &base) {
                if jump.i < s + 1 {
                    continue;
                }
                let span = jump.j - jump.i + 1;
                let lead = jump.i - s;
                if span < self.n || m + 1 - lead < span + 2 * s {
                    continue;
                }
                let lifted = if lead == 1 {
                    base.clone()
                } else {
                    match contract(&base, &(lead..m).collect::<Vec<_>>()) {
                        Ok(c) => c,
                        Err(_) => continue,
                    }
                };
                let moved = Jump { i: s + 1, j: s + span, path: jump.path.clone() };
                if let Ok(c) = jump_increase_s(self.g, &lifted, &moved) {
                    out.push(c);
                }
            }
        }
        out
    }
}

/// Starting necklaces for a fixed hub set `z`: the longest path necklace in
/// the main component of `G - z`, and singleton beads on the vertices of `u`
/// that see all of `z`.
fn seeds(g: &Graph, u: &BTreeSet<Vertex>, z: &BTreeSet<Vertex>, n: usize) -> Vec<Necklace> {
    let rest = g.without_vertices(z);
    let Some(home) = rest.components().into_iter().rev().max_by_key(|c| c.intersection(u).count()) else {
        return Vec::new();
    };
    let h = rest.induced_subgraph(&home);
    let local: Vec<Vertex> = u.intersection(&home).copied().collect();
    let mut out = Vec::new();
    let beads = Necklace::singletons(local.iter().copied()).beads;
    let tree = bead_spanning_tree(&h, &beads);
    let sees_all = |v: Vertex| z.iter().all(|&x| g.has_edge(x, v));
    for len in (n..=local.len()).rev() {
        if let Some(Outcome::Path { path, parts }) = find_path(&tree, &beads, len) {
            let mut nk = path_necklace(&tree, &path, &parts);
            nk.hubs = z
                .iter()
                .copied()
                .filter(|&x| nk.beads.iter().all(|b| b.vertices.iter().any(|&v| g.has_edge(x, v))))
                .collect();
            nk.params.l = nk.hubs.len();
            out.push(nk);
            break;
        }
    }
    let seen: Vec<Vertex> = local.into_iter().filter(|&v| sees_all(v)).collect();
    if seen.len() >= n {
        let mut nk = Necklace::singletons(seen);
        nk.hubs = z.clone();
        nk.params.l = z.len();
        out.push(nk);
    }
    out
}

/// A valid `(θ; n)`-necklace supported by `u`, found by a bounded search.
///
/// Seeds are the initial necklace and, for each hub set of up to `θ`
/// vertices of degree at least `n`, a path necklace and a hub necklace. From
/// a seed the search adds hubs and uses jumps to raise `s`. `budget` caps
/// the number of necklaces examined; `Ok(None)` means the search space was
/// exhausted first. The moves never raise `t` past its seed value.
pub fn search_necklace(
    g: &Graph,
    u: &BTreeSet<Vertex>,
    theta: usize,
    n: usize,
    budget: usize,
) -> Result<Option<Necklace>, ExtractionError> {
    if n < 2 {
        return Err(ExtractionError::Parameter(format!("need n >= 2, got {n}")));
    }
    if let Some(v) = u.iter().find(|&&v| !g.has_vertex(v)) {
        return Err(ExtractionError::Parameter(format!("vertex {v} of U is not in the graph")));
    }
    if u.len() < n {
        return Ok(None);
    }
    if theta == 0 {
        return init_unchecked(g, u, 0, n, 2).map(Some);
    }
    let mut search = Search { g, u, theta, n, budget, expanded: 0, visited: BTreeSet::new() };
    if let Ok(seed) = init_unchecked(g, u, theta, n, n) {
        if let Some(found) = search.explore(seed)? {
            return Ok(Some(found));
        }
    }
    let candidates: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= n).collect();
    for size in 0..=theta.min(candidates.len()) {
        for z in combinations(&candidates, size) {
            search.tick()?;
            for seed in seeds(g, u, &z, n) {
                if let Some(found) = search.explore(seed)? {
                    log::info!("search found {} after {} states", found.params, search.expanded);
                    return Ok(Some(found));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use crate::structures::{build_wheel, WheelSpec};

    #[test]
    fn cycle_reaches_two() {
        let g = generators::cycle(9).unwrap();
        let u = g.vertex_set();
        let out = search_necklace(&g, &u, 2, 3, 500).unwrap().unwrap();
        assert_eq!((out.theta(), out.len()), (2, 3));
        assert!(search_necklace(&g, &u, 3, 3, 500).unwrap().is_none());
    }

    #[test]
    fn biclique_hubs() {
        let g = generators::complete_bipartite(3, 8).unwrap();
        let u: BTreeSet<Vertex> = (4..=11).collect();
        let out = search_necklace(&g, &u, 3, 3, 500).unwrap().unwrap();
        assert_eq!(out.params, NecklaceParams { t: 0, s: 0, l: 3, n: 3 });
    }

    #[test]
    fn wheel_with_hub() {
        let mut single = Graph::new();
        single.add_vertex(1);
        let w = build_wheel(&WheelSpec::simple(single, 1, 7)).unwrap();
        let rim: BTreeSet<Vertex> = (1..=7).collect();
        let out = search_necklace(&w.graph, &rim, 3, 3, 2000).unwrap().unwrap();
        assert_eq!(out.theta(), 3);
    }

    #[test]
    fn zero_and_budget() {
        let g = generators::cycle(9).unwrap();
        let u = g.vertex_set();
        assert_eq!(search_necklace(&g, &u, 0, 4, 1).unwrap().unwrap().len(), 4);
        assert_eq!(search_necklace(&g, &u, 3, 3, 2), Err(ExtractionError::BudgetExhausted(2)));
    }
}
