use std::collections::{BTreeMap, BTreeSet};

use crate::connectivity::max_disjoint_paths;
use crate::graph::{is_path_in, Edge, Graph, Subgraph, Vertex};
use crate::structures::{contract, is_supported_by, validate_necklace, Jump, Necklace, NecklaceParams};

use super::bounds::extract_path_bound;
use super::{checked, ExtractionError};

/// `k` disjoint `(X, Y)`-paths inside the union of `k` `(X, ·)`-paths, `k`
/// `(·, Y)`-paths and `k` disjoint connected subgraphs each meeting all of
/// them.
pub fn reroute_disjoint_paths(
    g: &Graph,
    p_paths: &[Vec<Vertex>],
    q_paths: &[Vec<Vertex>],
    links: &[Subgraph],
    x: &BTreeSet<Vertex>,
    y: &BTreeSet<Vertex>,
) -> Result<Vec<Vec<Vertex>>, ExtractionError> {
    let k = p_paths.len();
    if k == 0 || q_paths.len() != k || links.len() != k {
        return Err(ExtractionError::Parameter(format!(
            "need k >= 1 paths of each kind and k links, got {k}, {}, {}",
            q_paths.len(),
            links.len()
        )));
    }
    let all = || p_paths.iter().chain(q_paths);
    if let Some(bad) = all().find(|p| !is_path_in(g, p)) {
        return Err(ExtractionError::Parameter(format!("{bad:?} is not a path of the graph")));
    }
    let ends_in = |p: &Vec<Vertex>, s: &BTreeSet<Vertex>| s.contains(&p[0]) || s.contains(&p[p.len() - 1]);
    if !p_paths.iter().all(|p| ends_in(p, x)) || !q_paths.iter().all(|q| ends_in(q, y)) {
        return Err(ExtractionError::Hypothesis("paths must end in X and Y respectively".into()));
    }
    for b in links {
        if !b.is_subgraph_of(g) || !b.is_connected() {
            return Err(ExtractionError::Hypothesis("every link must be a connected subgraph".into()));
        }
        if !all().all(|p| p.iter().any(|v| b.vertices.contains(v))) {
            return Err(ExtractionError::Hypothesis("every link must meet every path".into()));
        }
    }
    let mut h = Graph::new();
    for p in all() {
        for &v in p {
            h.add_vertex(v);
        }
        for w in p.windows(2) {
            h.add_edge(w[0], w[1]);
        }
    }
    for b in links {
        h = h.union(&b.to_graph());
    }
    let xs: BTreeSet<Vertex> = x.iter().copied().filter(|&v| h.has_vertex(v)).collect();
    let ys: BTreeSet<Vertex> = y.iter().copied().filter(|&v| h.has_vertex(v)).collect();
    let flow = max_disjoint_paths(&h, &xs, &ys);
    if flow.count < k {
        return Err(ExtractionError::Hypothesis(format!(
            "only {} disjoint (X, Y)-paths in the union, need {k}",
            flow.count
        )));
    }
    Ok(flow.paths.into_iter().take(k).collect())
}

/// A `(t, s+1, ℓ, n)`-necklace from a `(t, s, ℓ, m)`-necklace with `t > s`,
/// `m ≥ n + 2s` and an `(s+1, s+n)`-jump. The jump's interior joins
/// `B_{s+1}`; beads `1..=s+1` and `s+n..` are merged and the jump's last edge
/// closes the extra strand.
pub fn jump_increase_s(g: &Graph, nk: &Necklace, jump: &Jump) -> Result<Necklace, ExtractionError> {
    validate_necklace(g, nk).into_result()?;
    let NecklaceParams { t, s, .. } = nk.params;
    let m = nk.len();
    if t <= s {
        return Err(ExtractionError::Parameter(format!("need t > s in {}", nk.params)));
    }
    if jump.i != s + 1 || jump.j <= s + 1 || jump.j > m {
        return Err(ExtractionError::Parameter(format!(
            "expected an ({}, {} + n)-jump, got ({}, {})",
            s + 1,
            s,
            jump.i,
            jump.j
        )));
    }
    let n = jump.j - s;
    if m < n + 2 * s {
        return Err(ExtractionError::Hypothesis(format!("{m} beads, need n + 2s = {}", n + 2 * s)));
    }
    let path = &jump.path;
    let inside = nk.vertex_set();
    let interior_ok = path.len() >= 2 && path[1..path.len() - 1].iter().all(|v| !inside.contains(v));
    if !is_path_in(g, path)
        || !interior_ok
        || !nk.bead(jump.i).vertices.contains(&path[0])
        || !nk.bead(jump.j).vertices.contains(&path[path.len() - 1])
    {
        return Err(ExtractionError::Parameter(format!("{path:?} is not a ({}, {})-jump", jump.i, jump.j)));
    }
    let mut work = if m > n + 2 * s { contract(nk, &(1..n + 2 * s).collect::<Vec<_>>())? } else { nk.clone() };
    let last = path.len() - 1;
    let grow = &mut work.beads[s];
    for w in path[..last].windows(2) {
        grow.vertices.insert(w[1]);
        grow.edges.insert(Edge::new(w[0], w[1]));
    }
    let mut out = contract(&work, &(s + 1..s + n).collect::<Vec<_>>())?;
    out.matchings[n - 1].insert(Edge::new(path[last - 1], path[last]));
    out.params = NecklaceParams { s: s + 1, n, ..out.params };
    checked(g, out)
}

/// Trade hub `z` for an `(s+1, s+n)`-jump through it: a `(t, s+1, ℓ-1, n)`-necklace.
pub fn remove_hub(g: &Graph, nk: &Necklace, z: Vertex, n: usize) -> Result<Necklace, ExtractionError> {
    if !nk.hubs.contains(&z) {
        return Err(ExtractionError::Parameter(format!("{z} is not a hub")));
    }
    let s = nk.params.s;
    if n < 2 || s + n > nk.len() {
        return Err(ExtractionError::Parameter(format!("no bead {} among {}", s + n, nk.len())));
    }
    let seen = |i: usize| nk.bead(i).vertices.iter().copied().find(|&v| g.has_edge(z, v));
    let (Some(a), Some(b)) = (seen(s + 1), seen(s + n)) else {
        return Err(ExtractionError::Hypothesis(format!("hub {z} misses a bead")));
    };
    let mut rest = nk.clone();
    rest.hubs.remove(&z);
    rest.params.l -= 1;
    jump_increase_s(g, &rest, &Jump { i: s + 1, j: s + n, path: vec![a, z, b] })
}

/// Rails: `t` disjoint paths from `B_1` to `B_m` avoiding `M_m`, oriented
/// from `B_1`. Each one crosses every other matching exactly once.
fn rails(nk: &Necklace) -> Vec<Vec<Vertex>> {
    let m = nk.len();
    let mut h = Graph::new();
    for b in &nk.beads {
        h = h.union(&b.to_graph());
    }
    for i in 1..m {
        for e in nk.matching(i) {
            h.add_edge(e.u(), e.v());
        }
    }
    let flow = max_disjoint_paths(&h, &nk.bead(1).vertices, &nk.bead(m).vertices);
    flow.paths
        .into_iter()
        .map(|mut p| {
            if !nk.bead(1).vertices.contains(&p[0]) {
                p.reverse();
            }
            p
        })
        .collect()
}

/// The component of `bead - cut` containing `anchor`, as a subgraph of `bead`.
fn piece(bead: &Subgraph, cut: &BTreeSet<Vertex>, anchor: Vertex) -> Subgraph {
    let keep: BTreeSet<Vertex> = bead.vertices.difference(cut).copied().collect();
    let inner = Subgraph {
        edges: bead.edges.iter().copied().filter(|e| keep.contains(&e.u()) && keep.contains(&e.v())).collect(),
        vertices: keep,
    };
    let reach = inner.to_graph().reachable_from([anchor]);
    Subgraph { edges: inner.edges.iter().copied().filter(|e| reach.contains(&e.u())).collect(), vertices: reach }
}

/// A `(t-1, s, 0, n)`-necklace supported by `u` and a path disjoint from it
/// with a neighbour in every bead, from a `(t, s, 0, m)`-necklace supported
/// by `u` with `t > s`, `t + s ≥ 2` and `m ≥ t(n-1) + 1`.
///
/// A rail is removable at bead `i` when the rest of `B_i` keeps the other
/// rails and a vertex of `u` in one component. The rail removable at most
/// interior beads is cut out between two of them; `n = 2` is built with
/// three beads and the last two merged.
pub fn extract_path(
    g: &Graph,
    nk: &Necklace,
    u: &BTreeSet<Vertex>,
    n: usize,
) -> Result<(Necklace, Vec<Vertex>), ExtractionError> {
    validate_necklace(g, nk).into_result()?;
    let NecklaceParams { t, s, l, .. } = nk.params;
    let m = nk.len();
    if l != 0 || t <= s || t + s < 2 || n < 2 {
        return Err(ExtractionError::Parameter(format!(
            "need l = 0, t > s, t + s >= 2, n >= 2; got {} and n = {n}",
            nk.params
        )));
    }
    if extract_path_bound(t, n).is_none_or(|b| m < b) {
        return Err(ExtractionError::Hypothesis(format!("{m} beads, need t(n-1) + 1")));
    }
    if !is_supported_by(nk, u) {
        return Err(ExtractionError::Hypothesis("necklace is not supported by U".into()));
    }
    let rails = rails(nk);
    if rails.len() != t {
        return Err(ExtractionError::Invalid(format!("found {} rails, expected {t}", rails.len())));
    }
    let home: BTreeMap<Vertex, usize> =
        (1..=m).flat_map(|i| nk.bead(i).vertices.iter().map(move |&v| (v, i))).collect();
    let on_bead = |r: usize, i: usize| -> BTreeSet<Vertex> {
        rails[r].iter().copied().filter(|v| home.get(v) == Some(&i)).collect()
    };
    let removable = |r: usize, i: usize| {
        let cut = on_bead(r, i);
        let others: BTreeSet<Vertex> = (0..t).filter(|&q| q != r).flat_map(|q| on_bead(q, i)).collect();
        let anchor = *others.first().expect("t >= 2");
        let rest = piece(nk.bead(i), &cut, anchor);
        others.is_subset(&rest.vertices) && rest.vertices.iter().any(|v| u.contains(v))
    };
    let width = n.max(3);
    let mut options: Vec<(usize, Vec<usize>)> =
        (0..t).map(|r| (r, (2..m).filter(|&i| removable(r, i)).collect())).collect();
    options.sort_by_key(|(r, idx)| (std::cmp::Reverse(idx.len()), *r));
    for (r, idx) in options.into_iter().filter(|(_, idx)| idx.len() + 2 >= width) {
        let inner = &idx[..width - 2];
        let mut firsts = vec![inner[0] - 1, 1];
        firsts.dedup();
        for a1 in firsts {
            let cuts: Vec<usize> = std::iter::once(a1).chain(inner.iter().copied()).collect();
            match cut_out(g, nk, &rails[r], &home, &cuts) {
                Ok((mut out, path)) => {
                    if width > n {
                        out = contract(&out, &[1])?;
                    }
                    if let Ok(out) = checked(g, out) {
                        if is_supported_by(&out, u) {
                            return Ok((out, path));
                        }
                    }
                }
                Err(e) => log::debug!("rail {r} with cuts {cuts:?}: {e}"),
            }
        }
    }
    Err(ExtractionError::Hypothesis("no rail is removable at enough beads".into()))
}

fn cut_out(
    g: &Graph,
    nk: &Necklace,
    rail: &[Vertex],
    home: &BTreeMap<Vertex, usize>,
    cuts: &[usize],
) -> Result<(Necklace, Vec<Vertex>), ExtractionError> {
    let width = cuts.len() + 1;
    let (lo, hi) = (cuts[0] + 1, cuts[width - 2]);
    let path: Vec<Vertex> = rail.iter().copied().filter(|v| (lo..=hi).contains(&home[v])).collect();
    let on_path: BTreeSet<Vertex> = path.iter().copied().collect();
    let merged = contract(nk, cuts)?;
    let mut beads = merged.beads.clone();
    for (k, bead) in beads.iter_mut().enumerate().take(width - 1).skip(1) {
        let anchor = bead
            .vertices
            .iter()
            .copied()
            .find(|v| !on_path.contains(v) && merged.matching(k + 1).iter().any(|e| e.has_end(*v)))
            .ok_or_else(|| ExtractionError::Invalid(format!("bead {} has no other rail", k + 1)))?;
        *bead = piece(bead, &on_path, anchor);
    }
    let mut matchings = merged.matchings.clone();
    for m in matchings.iter_mut().take(width - 1) {
        m.retain(|e| !rail.contains(&e.u()));
    }
    let params = NecklaceParams { t: nk.params.t - 1, n: width, ..nk.params };
    let out = Necklace { params, beads, matchings, hubs: BTreeSet::new() };
    if out.beads.iter().any(|b| !b.vertices.iter().any(|v| g.neighbors(*v).any(|w| on_path.contains(&w)))) {
        return Err(ExtractionError::Invalid("path misses a bead".into()));
    }
    Ok((out, path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use crate::structures::{find_jumps, zigzag_necklace};

    fn path_necklace(m: usize) -> (Graph, Necklace) {
        let g = generators::path(m).unwrap();
        let mut nk = Necklace::singletons(g.vertices());
        nk.params.t = 1;
        for i in 1..m {
            nk.matchings[i - 1].insert(Edge::new(i as Vertex, i as Vertex + 1));
        }
        (g, nk)
    }

    #[test]
    fn chord_closes_the_cycle() {
        let (mut g, nk) = path_necklace(6);
        g.add_edge(1, 4);
        let jump = Jump { i: 1, j: 4, path: vec![1, 4] };
        let out = jump_increase_s(&g, &nk, &jump).unwrap();
        assert_eq!(out.params, NecklaceParams { t: 1, s: 1, l: 0, n: 4 });
        assert_eq!(out.bead(4).vertices, BTreeSet::from([4, 5, 6]));
        assert!(out.matching(4).contains(&Edge::new(1, 4)));
    }

    #[test]
    fn jump_interior_is_absorbed() {
        let (mut g, nk) = path_necklace(5);
        g.add_edge(1, 9);
        g.add_edge(9, 5);
        let jump = find_jumps(&g, &nk).into_iter().find(|j| (j.i, j.j) == (1, 5)).unwrap();
        let out = jump_increase_s(&g, &nk, &jump).unwrap();
        assert!(out.bead(1).vertices.contains(&9));
        assert!(jump_increase_s(&g, &nk, &Jump { i: 2, j: 5, path: vec![2, 3] }).is_err());
    }

    #[test]
    fn hub_becomes_jump() {
        let (mut g, mut nk) = path_necklace(5);
        for v in 1..=5 {
            g.add_edge(10, v);
        }
        nk.hubs.insert(10);
        nk.params.l = 1;
        let out = remove_hub(&g, &nk, 10, 5).unwrap();
        assert_eq!(out.params, NecklaceParams { t: 1, s: 1, l: 0, n: 5 });
        assert!(out.bead(1).vertices.contains(&10));
    }

    #[test]
    fn ladder_gives_path() {
        for n in 2..=4 {
            let (g, nk) = zigzag_necklace(2, 1, 0, 2 * n - 1);
            let u = g.vertex_set();
            let (out, path) = extract_path(&g, &nk, &u, n).unwrap();
            assert_eq!(out.params, NecklaceParams { t: 1, s: 1, l: 0, n });
            assert!(path.iter().all(|v| !out.vertex_set().contains(v)));
            assert!(is_path_in(&g, &path));
        }
        let (g, nk) = zigzag_necklace(2, 1, 0, 4);
        assert!(matches!(extract_path(&g, &nk, &g.vertex_set(), 3), Err(ExtractionError::Hypothesis(_))));
    }

    #[test]
    fn reroute_through_links() {
        let g = Graph::from_edges([(1, 2), (2, 3), (4, 5), (5, 6), (1, 4), (2, 5), (3, 6)]);
        let rows = vec![vec![1, 2, 3], vec![4, 5, 6]];
        let links = vec![Subgraph::from_edges([Edge::new(2, 5)]), Subgraph::from_edges([Edge::new(3, 6)])];
        let (x, y) = (BTreeSet::from([1, 4]), BTreeSet::from([3, 6]));
        let out = reroute_disjoint_paths(&g, &rows, &rows, &links, &x, &y).unwrap();
        assert_eq!(out.len(), 2);
        let short = vec![Subgraph::from_edges([Edge::new(2, 5)]), Subgraph::from_edges([Edge::new(2, 3)])];
        assert!(reroute_disjoint_paths(&g, &rows, &rows, &short, &x, &y).is_err());
    }
}
