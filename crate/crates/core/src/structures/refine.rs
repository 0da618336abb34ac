//! Refined necklaces and the pigeonhole step from a balanced refined
//! necklace to a wheel minor.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Edge, Graph, MinorModel, Subgraph, Vertex};

use super::necklace::{validate_necklace, Necklace, NecklaceParams};
use super::wheel::{build_wheel, BuiltWheel, WheelSpec};
use super::StructureError;

/// `x_{i,j}` as `names[i-1][j-1]`: bead 1 in increasing order, later beads
/// by following `M_1, …, M_{n-1}`. `None` unless every such matching pairs
/// consecutive beads perfectly.
pub fn canonical_names(nk: &Necklace) -> Option<Vec<Vec<Vertex>>> {
    let width = nk.params.t.max(1);
    let first: Vec<Vertex> = nk.beads.first()?.vertices.iter().copied().collect();
    if first.len() != width {
        return None;
    }
    let mut names = vec![first];
    for i in 1..nk.len() {
        let next = &nk.bead(i + 1).vertices;
        if next.len() != width {
            return None;
        }
        let row = if nk.params.t == 0 {
            next.iter().copied().collect()
        } else {
            let m = nk.matching(i);
            let partner = |x: Vertex| m.iter().find_map(|e| e.other(x).filter(|y| next.contains(y)));
            names[i - 1].iter().map(|&x| partner(x)).collect::<Option<Vec<Vertex>>>()?
        };
        if row.iter().collect::<BTreeSet<_>>().len() != width {
            return None;
        }
        names.push(row);
    }
    Some(names)
}

/// Every bead is a tree on `max(1, t)` vertices and the canonical names exist.
pub fn is_refined(nk: &Necklace) -> bool {
    let width = nk.params.t.max(1);
    nk.beads.iter().all(|b| b.vertices.len() == width && b.edges.len() + 1 == width && b.is_connected())
        && canonical_names(nk).is_some()
}

/// The balanced `(t, t, ℓ, n)`-necklace formed by the rim copies of a wheel.
pub fn wheel_necklace(spec: &WheelSpec) -> Result<(BuiltWheel, Necklace), StructureError> {
    let w = build_wheel(spec)?;
    let rim: Vec<Vertex> = spec.rim_tree.vertices().collect();
    let beads = (1..=spec.n).map(|i| Subgraph::induced(&w.graph, &w.copy(i))).collect();
    let mut matchings: Vec<BTreeSet<Edge>> = (1..spec.n)
        .map(|i| rim.iter().map(|&v| Edge::new(w.copies[&(v, i)], w.copies[&(v, i + 1)])).collect())
        .collect();
    matchings.push(rim.iter().map(|&v| Edge::new(w.copies[&(v, spec.n)], w.copies[&(spec.pi[&v], 1)])).collect());
    let params = NecklaceParams { t: spec.t(), s: spec.t(), l: spec.l(), n: spec.n };
    let hubs = w.hubs.values().copied().collect();
    Ok((w, Necklace { params, beads, matchings, hubs }))
}

/// A `(t, ℓ, n)`-wheel minor of `g` from a valid refined balanced necklace.
///
/// Beads are grouped by their tree on the canonical names together with, for
/// each hub, the least name it sees; the first group to reach `n` members
/// gives the rim copies. Every bead between two chosen beads is absorbed,
/// strand by strand, into the earlier copy. `(n-1)·t^{t-2} < m` guarantees a
/// group when there are no hubs; otherwise the search runs on the instance.
pub fn necklace_to_wheel(g: &Graph, nk: &Necklace, n: usize) -> Result<(WheelSpec, MinorModel), StructureError> {
    validate_necklace(g, nk).into_result()?;
    let NecklaceParams { t, s, .. } = nk.params;
    if t == 0 {
        return Err(StructureError::Precondition(
            "t = 0: the necklace already spans a complete bipartite graph".into(),
        ));
    }
    if s != t {
        return Err(StructureError::Precondition(format!("necklace {} is not balanced", nk.params)));
    }
    if n < 3 {
        return Err(StructureError::Parameter("a wheel needs n >= 3".into()));
    }
    let names = canonical_names(nk)
        .filter(|_| is_refined(nk))
        .ok_or_else(|| StructureError::Precondition("necklace is not refined".into()))?;
    let m = nk.len();
    let index = |i: usize, x: Vertex| names[i - 1].iter().position(|&y| y == x).map(|j| j as Vertex + 1);
    let wrap = nk.matching(m);
    let mut sigma = BTreeMap::new();
    for e in &wrap {
        let (last, first) = if index(m, e.u()).is_some() { (e.u(), e.v()) } else { (e.v(), e.u()) };
        sigma.insert(index(m, last).expect("wrap edge leaves B_m"), index(1, first).expect("wrap edge enters B_1"));
    }
    let hubs: Vec<Vertex> = nk.hubs.iter().copied().collect();
    let key = |i: usize| {
        let tree: BTreeSet<(Vertex, Vertex)> = nk
            .bead(i)
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (index(i, e.u()).expect("bead vertex"), index(i, e.v()).expect("bead vertex"));
                (a.min(b), a.max(b))
            })
            .collect();
        let seen: Vec<Vertex> = hubs
            .iter()
            .map(|&z| names[i - 1].iter().position(|&x| g.has_edge(z, x)).expect("hub sees every bead") as Vertex + 1)
            .collect();
        (tree, seen)
    };
    let mut groups: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    let mut chosen = None;
    for i in 1..=m {
        let members = groups.entry(key(i)).or_default();
        members.push(i);
        if members.len() == n {
            chosen = Some(members.clone());
            break;
        }
    }
    let a = chosen.ok_or_else(|| {
        StructureError::Precondition(format!("no {n} beads share a tree and hub attachment among {m} beads"))
    })?;
    let (tree, seen) = key(a[0]);
    let mut rim_tree = Graph::new();
    for j in 1..=t as Vertex {
        rim_tree.add_vertex(j);
    }
    for &(u, v) in &tree {
        rim_tree.add_edge(u, v);
    }
    let spec =
        WheelSpec { rim_tree, hubs: nk.hubs.clone(), pi: sigma, psi: hubs.iter().copied().zip(seen).collect(), n };
    let wheel = build_wheel(&spec)?;
    let x = |i: usize, j: Vertex| names[i - 1][j as usize - 1];
    let mut branch_sets = BTreeMap::new();
    for j in 1..=t as Vertex {
        for k in 1..=n {
            let set: BTreeSet<Vertex> = if k < n {
                (a[k - 1]..a[k]).map(|i| x(i, j)).collect()
            } else {
                let tail = (a[n - 1]..=m).map(|i| x(i, j));
                tail.chain((1..a[0]).map(|i| x(i, spec.pi[&j]))).collect()
            };
            branch_sets.insert(wheel.copies[&(j, k)], set);
        }
    }
    for (z, hz) in &wheel.hubs {
        branch_sets.insert(*hz, BTreeSet::from([*z]));
    }
    let model = MinorModel { branch_sets, edge_witnesses: BTreeMap::new() }.with_witnesses(g, &wheel.graph);
    model.validate(g, &wheel.graph).map_err(|e| StructureError::Precondition(format!("wheel model invalid: {e}")))?;
    Ok((spec, model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use crate::structures::necklace::contract;

    #[test]
    fn identical_beads_round_trip() {
        let tree = Graph::from_edges([(1, 2), (2, 3)]);
        let mut spec = WheelSpec::simple(tree, 1, 4);
        spec.pi = BTreeMap::from([(1, 3), (2, 2), (3, 1)]);
        spec.psi.insert(0, 2);
        let (w, nk) = wheel_necklace(&spec).unwrap();
        assert!(is_refined(&nk));
        let (out, model) = necklace_to_wheel(&w.graph, &nk, 4).unwrap();
        assert_eq!((out.t(), out.l(), out.n), (3, 1, 4));
        assert_eq!(out.pi, BTreeMap::from([(1, 3), (2, 2), (3, 1)]));
        model.validate(&w.graph, &build_wheel(&out).unwrap().graph).unwrap();
    }

    #[test]
    fn cycle_with_hub_shrinks() {
        let mut single = Graph::new();
        single.add_vertex(1);
        let (w, nk) = wheel_necklace(&WheelSpec::simple(single, 1, 5)).unwrap();
        let (out, model) = necklace_to_wheel(&w.graph, &nk, 3).unwrap();
        let pattern = build_wheel(&out).unwrap().graph;
        assert_eq!((pattern.vertex_count(), pattern.edge_count()), (4, 6));
        model.validate(&w.graph, &pattern).unwrap();
        assert_eq!(model.branch_sets[&3], BTreeSet::from([3, 4, 5]));
    }

    #[test]
    fn rejects_unrefined_or_unbalanced() {
        let (w, nk) = wheel_necklace(&WheelSpec::simple(generators::path(2).unwrap(), 0, 6)).unwrap();
        let merged = contract(&nk, &[2, 4]).unwrap();
        assert!(!is_refined(&merged));
        assert!(necklace_to_wheel(&w.graph, &merged, 3).is_err());
        let mut open = nk.clone();
        open.params.s = 0;
        open.matchings[5].clear();
        assert!(necklace_to_wheel(&w.graph, &open, 3).is_err());
        assert!(necklace_to_wheel(&w.graph, &nk, 7).is_err());
    }
}
