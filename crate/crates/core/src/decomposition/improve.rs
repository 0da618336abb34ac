//! Splitting bags that are not θ-connected.
//!
//! Each round picks a largest bag `Y_r` that is not θ-connected, a violating
//! separation `(G1, G2)` of minimum order that, subject to that, leaves the
//! fewest branches at `r` not nested in it, and replaces the tree by two copies
//! joined at `r`: labelled leaves whose edge lies in `G1` stay in the first
//! copy, all others move to the second. The bag-size signature
//! `(n_{ω+1}, …, n_0)` strictly decreases every round; this is checked.

use std::collections::{BTreeMap, BTreeSet};

use crate::connectivity::{minimum_violators, violating_separation};
use crate::graph::{Graph, Separation, Vertex};

use super::{DecompositionError, Node, TreeDecomposition};

/// Per-round bag-size signatures, most significant (largest size) first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ImproveTrace {
    pub signatures: Vec<Vec<usize>>,
}

impl ImproveTrace {
    pub fn rounds(&self) -> usize {
        self.signatures.len().saturating_sub(1)
    }
}

const MAX_ROUNDS: usize = 100_000;

pub fn improve_to_connected_bags(
    g: &Graph,
    td: &TreeDecomposition,
    theta: usize,
) -> Result<TreeDecomposition, DecompositionError> {
    improve_with_trace(g, td, theta).map(|(t, _)| t)
}

pub fn improve_with_trace(
    g: &Graph,
    td: &TreeDecomposition,
    theta: usize,
) -> Result<(TreeDecomposition, ImproveTrace), DecompositionError> {
    td.validate_for(g)?;
    let adhesion = td.adhesion();
    if adhesion >= theta {
        return Err(DecompositionError::AdhesionTooLarge { adhesion, theta });
    }
    let top = td.width()? + 1;
    let mut current = td.clone();
    let mut trace = ImproveTrace { signatures: vec![signature(&current, top)] };
    for _ in 0..MAX_ROUNDS {
        let bags = current.bags();
        let mut bad: Option<(Node, Separation)> = None;
        let mut order: Vec<(&Node, &BTreeSet<Vertex>)> = bags.iter().collect();
        order.sort_by_key(|(t, b)| (std::cmp::Reverse(b.len()), **t));
        for (&t, bag) in order {
            if bad.as_ref().is_some_and(|(r, _)| bags[r].len() > bag.len()) {
                break;
            }
            if let Some(sep) = violating_separation(g, bag, theta)? {
                bad = Some((t, sep));
                break;
            }
        }
        let Some((r, _)) = bad else {
            return Ok((current, trace));
        };
        let sep = choose_separation(g, &current, r, &bags[&r], theta)?;
        let next = split_at(&current, r, &sep);
        let sig = signature(&next, top);
        let prev = trace.signatures.last().expect("initial signature");
        log::info!("split node {r} along order-{} separation; signature {sig:?}", sep.order());
        if next.adhesion() >= theta || next.width()? + 1 > top || sig >= *prev {
            return Err(DecompositionError::InvariantBroken(format!(
                "improvement round at node {r} did not make progress: {prev:?} -> {sig:?}"
            )));
        }
        trace.signatures.push(sig);
        current = next;
    }
    Err(DecompositionError::InvariantBroken("improvement did not terminate".into()))
}

/// Counts of bags of each size from `top` down to 0.
pub(crate) fn signature(td: &TreeDecomposition, top: usize) -> Vec<usize> {
    let mut counts = vec![0; top + 1];
    for bag in td.bags().values() {
        counts[top - bag.len().min(top)] += 1;
    }
    counts
}

/// Minimum-order violator of `Y_r` with the fewest non-nesting branches at `r`.
fn choose_separation(
    g: &Graph,
    td: &TreeDecomposition,
    r: Node,
    bag: &BTreeSet<Vertex>,
    theta: usize,
) -> Result<Separation, DecompositionError> {
    let branches = branch_vertex_sets(td, r);
    let candidates = minimum_violators(g, bag, theta)?;
    let non_nesting = |sep: &Separation| {
        branches.iter().filter(|a| !a.is_subset(&sep.left.vertices) && !a.is_subset(&sep.right.vertices)).count()
    };
    candidates
        .into_iter()
        .enumerate()
        .min_by_key(|(i, s)| (non_nesting(s), *i))
        .map(|(_, s)| s)
        .ok_or_else(|| DecompositionError::InvariantBroken("violated bag has no violator".into()))
}

/// `V(A_t)` for every node `t ≠ r`: endpoints of labels in the branch of `t` away from `r`.
fn branch_vertex_sets(td: &TreeDecomposition, r: Node) -> Vec<BTreeSet<Vertex>> {
    let tree = td.tree();
    let mut parent: BTreeMap<Node, Node> = BTreeMap::new();
    let mut order = vec![r];
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        for w in tree.neighbors(t) {
            if parent.get(&t) != Some(&w) && w != r {
                parent.insert(w, t);
                order.push(w);
            }
        }
        i += 1;
    }
    let mut sets: BTreeMap<Node, BTreeSet<Vertex>> = BTreeMap::new();
    for &t in order.iter().rev() {
        let mut s = sets.remove(&t).unwrap_or_default();
        if let Some(e) = td.leaf_labels().get(&t) {
            s.extend(e.ends());
        }
        if let Some(&p) = parent.get(&t) {
            sets.entry(p).or_default().extend(s.iter().copied());
            sets.insert(t, s);
        } else {
            sets.insert(t, s);
        }
    }
    sets.into_iter().filter(|(t, _)| *t != r).map(|(_, s)| s).collect()
}

/// Two copies of the tree joined at `r`; leaves follow their edge's side.
fn split_at(td: &TreeDecomposition, r: Node, sep: &Separation) -> TreeDecomposition {
    let tree = td.tree();
    let offset = tree.max_vertex().expect("nonempty tree") + 1;
    let mut doubled = Graph::new();
    for t in tree.vertices() {
        doubled.add_vertex(t);
        doubled.add_vertex(t + offset);
    }
    for e in tree.edges() {
        doubled.add_edge(e.u(), e.v());
        doubled.add_edge(e.u() + offset, e.v() + offset);
    }
    doubled.add_edge(r, r + offset);
    let labels = td
        .leaf_labels()
        .iter()
        .map(|(&t, &e)| if sep.left.edges.contains(&e) { (t, e) } else { (t + offset, e) })
        .collect();
    TreeDecomposition::new(doubled, labels).expect("labels stay on leaves of the doubled tree").normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_theta_connected_paths;
    use crate::decomposition::{from_bags, theta_tree_width_exact, ExactOptions};
    use crate::graph::generators;

    fn single_bag(g: &Graph) -> TreeDecomposition {
        let mut one = Graph::new();
        one.add_vertex(0);
        from_bags(g, &one, &BTreeMap::from([(0, g.vertex_set())])).unwrap()
    }

    #[test]
    fn bowtie_splits_at_cutvertex() {
        let g = Graph::from_edges([(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]);
        let (out, trace) = improve_with_trace(&g, &single_bag(&g), 3).unwrap();
        out.validate_for(&g).unwrap();
        let big: Vec<BTreeSet<Vertex>> = out.bags().into_values().filter(|b| b.len() == 3).collect();
        assert_eq!(big, vec![BTreeSet::from([1, 2, 3]), BTreeSet::from([3, 4, 5])]);
        assert_eq!(trace.rounds(), 1);
        assert!(out.adhesion() < 3);
    }

    #[test]
    fn fixed_point() {
        let g = generators::complete(4).unwrap();
        let td = single_bag(&g);
        assert_eq!(improve_to_connected_bags(&g, &td, 3).unwrap(), td);
    }

    #[test]
    fn rejects_large_adhesion() {
        let g = generators::path(5).unwrap();
        assert!(matches!(
            improve_to_connected_bags(&g, &single_bag(&g), 2),
            Err(DecompositionError::AdhesionTooLarge { adhesion: 2, theta: 2 })
        ));
    }

    #[test]
    fn path_becomes_chain() {
        let g = generators::path(5).unwrap();
        let out = improve_to_connected_bags(&g, &single_bag(&g), 3).unwrap();
        assert_eq!(out.width().unwrap(), 1);
        for bag in out.bags().values() {
            assert!(is_theta_connected_paths(&g, bag, 3));
        }
    }

    #[test]
    fn from_exact_witness() {
        for seed in 0..10 {
            let g = generators::random_connected_graph(7, 0.3, seed).unwrap();
            let (w, td) = theta_tree_width_exact(&g, 3, ExactOptions::default()).unwrap();
            let (out, trace) = improve_with_trace(&g, &td, 3).unwrap();
            assert!(out.width().unwrap() <= w);
            assert!(trace.signatures.windows(2).all(|p| p[1] < p[0]));
            for bag in out.bags().values() {
                assert!(is_theta_connected_paths(&g, bag, 3));
            }
        }
    }
}
