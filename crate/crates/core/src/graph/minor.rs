//! Minor models and a small exhaustive minor search.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::bits::{bits, BitGraph, Mask, MAX_BITS};
use super::{Edge, Graph, GraphError, Vertex};

/// Branch sets in the host for each pattern vertex, plus one host edge per pattern edge.
///
/// In JSON the witnesses are a list of `[pattern_edge, host_edge]` pairs,
/// since edges cannot be object keys.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MinorModel {
    pub branch_sets: BTreeMap<Vertex, BTreeSet<Vertex>>,
    #[serde(with = "witness_pairs")]
    pub edge_witnesses: BTreeMap<Edge, Edge>,
}

mod witness_pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::graph::Edge;

    pub fn serialize<S: Serializer>(map: &BTreeMap<Edge, Edge>, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(Edge, Edge)> = map.iter().map(|(a, b)| (*a, *b)).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Edge, Edge>, D::Error> {
        Ok(Vec::<(Edge, Edge)>::deserialize(d)?.into_iter().collect())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("pattern vertex {0} has no branch set")]
    MissingBranchSet(Vertex),
    #[error("branch set for {0} is empty, disconnected or outside the host")]
    BadBranchSet(Vertex),
    #[error("branch sets of {0} and {1} overlap")]
    Overlap(Vertex, Vertex),
    #[error("model names {0}, which is not a pattern vertex")]
    ExtraVertex(Vertex),
    #[error("pattern edge {0} has no valid witness")]
    BadWitness(Edge),
}

impl MinorModel {
    /// Independent check of disjointness, connectivity and witnesses.
    pub fn validate(&self, host: &Graph, pattern: &Graph) -> Result<(), ModelError> {
        for &h in self.branch_sets.keys() {
            if !pattern.has_vertex(h) {
                return Err(ModelError::ExtraVertex(h));
            }
        }
        let mut owner: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for h in pattern.vertices() {
            let set = self.branch_sets.get(&h).ok_or(ModelError::MissingBranchSet(h))?;
            if set.is_empty() || !set.iter().all(|&v| host.has_vertex(v)) || !host.induced_subgraph(set).is_connected()
            {
                return Err(ModelError::BadBranchSet(h));
            }
            for &v in set {
                if let Some(&other) = owner.get(&v) {
                    return Err(ModelError::Overlap(other, h));
                }
                owner.insert(v, h);
            }
        }
        for e in pattern.edges() {
            let w = self.edge_witnesses.get(&e).ok_or(ModelError::BadWitness(e))?;
            let ok = host.contains_edge(w)
                && matches!(
                    (owner.get(&w.u()), owner.get(&w.v())),
                    (Some(&a), Some(&b)) if Edge::try_new(a, b).ok() == Some(e)
                );
            if !ok {
                return Err(ModelError::BadWitness(e));
            }
        }
        Ok(())
    }

    /// Fills in witnesses with the least host edge between each pair of branch sets.
    pub fn with_witnesses(mut self, host: &Graph, pattern: &Graph) -> MinorModel {
        self.edge_witnesses.clear();
        for e in pattern.edges() {
            let (a, b) = (&self.branch_sets[&e.u()], &self.branch_sets[&e.v()]);
            let w =
                a.iter().flat_map(|&x| host.neighbors(x).filter(|y| b.contains(y)).map(move |y| Edge::new(x, y))).min();
            if let Some(w) = w {
                self.edge_witnesses.insert(e, w);
            }
        }
        self
    }
}

/// Outcome of [`is_minor`]; `NotMinor` is only reported after a complete search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinorSearch {
    Found(MinorModel),
    NotMinor,
    BudgetExhausted,
}

impl MinorSearch {
    pub fn model(&self) -> Option<&MinorModel> {
        match self {
            MinorSearch::Found(m) => Some(m),
            _ => None,
        }
    }
}

/// Searches for an `h`-minor of `g`. `budget` caps the number of candidate branch sets tried.
pub fn is_minor(g: &Graph, h: &Graph, budget: u64) -> Result<MinorSearch, GraphError> {
    if g.vertex_count() > MAX_BITS {
        return Err(GraphError::Parameter(format!("minor search supports at most {MAX_BITS} host vertices")));
    }
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return Ok(MinorSearch::NotMinor);
    }
    if h.vertex_count() == 0 {
        return Ok(MinorSearch::Found(MinorModel::default()));
    }
    let bg = BitGraph::new(g);
    let order = placement_order(h);
    let mut search = Search { bg: &bg, h, order: &order, sets: vec![0; order.len()], budget, exhausted: false };
    if search.place(0, 0) {
        let branch_sets = order.iter().zip(&search.sets).map(|(&hv, &m)| (hv, bg.set_of(m))).collect();
        let model = MinorModel { branch_sets, edge_witnesses: BTreeMap::new() }.with_witnesses(g, h);
        debug_assert!(model.validate(g, h).is_ok());
        return Ok(MinorSearch::Found(model));
    }
    Ok(if search.exhausted { MinorSearch::BudgetExhausted } else { MinorSearch::NotMinor })
}

/// Breadth-first order per component, each component started at its highest-degree vertex.
fn placement_order(h: &Graph) -> Vec<Vertex> {
    let mut order = Vec::new();
    let mut seen = BTreeSet::new();
    let mut starts: Vec<Vertex> = h.vertices().collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    for s in starts {
        if !seen.insert(s) {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut nbrs: Vec<Vertex> = h.neighbors(v).filter(|w| !seen.contains(w)).collect();
            nbrs.sort_by_key(|&w| (std::cmp::Reverse(h.degree(w)), w));
            for w in nbrs {
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    order
}

struct Search<'a> {
    bg: &'a BitGraph,
    h: &'a Graph,
    order: &'a [Vertex],
    sets: Vec<Mask>,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn place(&mut self, idx: usize, used: Mask) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let hv = self.order[idx];
        let placed: Vec<Mask> = self.order[..idx]
            .iter()
            .zip(&self.sets)
            .filter(|(w, _)| self.h.has_edge(hv, **w))
            .map(|(_, &m)| m)
            .collect();
        let free = self.bg.full() & !used;
        let remaining = self.order.len() - idx - 1;
        let Some(max_size) = (free.count_ones() as usize).checked_sub(remaining).filter(|&k| k > 0) else {
            return false;
        };
        // roots: next to the first placed neighbour, or anywhere if none
        let roots = match placed.first() {
            Some(&m) => self.bg.neighborhood(m) & free,
            None => free,
        };
        let mut candidates = Vec::new();
        enumerate_connected(self.bg, free, roots, max_size, &mut |set| {
            if placed.iter().all(|&m| self.bg.neighborhood(m) & set != 0) {
                candidates.push(set);
            }
            true
        });
        candidates.sort_by_key(|&m| (m.count_ones(), m));
        for set in candidates {
            if self.budget == 0 {
                self.exhausted = true;
                return false;
            }
            self.budget -= 1;
            self.sets[idx] = set;
            if self.place(idx + 1, used | set) {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Visits every connected subset of `allowed` of size at most `max_size` that meets
/// `roots`, exactly once. The visitor returns `false` to stop early.
pub(crate) fn enumerate_connected(
    bg: &BitGraph,
    allowed: Mask,
    roots: Mask,
    max_size: usize,
    visit: &mut dyn FnMut(Mask) -> bool,
) -> bool {
    let mut excluded = !allowed;
    for r in bits(roots & allowed) {
        let start = 1u64 << r;
        let cand = bg.adj[r] & !excluded & !start;
        if !extend(bg, start, cand, excluded, max_size, visit) {
            return false;
        }
        excluded |= start;
    }
    true
}

fn extend(
    bg: &BitGraph,
    set: Mask,
    cand: Mask,
    excluded: Mask,
    max_size: usize,
    visit: &mut dyn FnMut(Mask) -> bool,
) -> bool {
    if !visit(set) {
        return false;
    }
    if set.count_ones() as usize >= max_size {
        return true;
    }
    let mut excl = excluded;
    for v in bits(cand) {
        let bit = 1u64 << v;
        let next_set = set | bit;
        let next_cand = (cand | bg.adj[v]) & !next_set & !excl;
        if !extend(bg, next_set, next_cand, excl, max_size, visit) {
            return false;
        }
        excl |= bit;
    }
    true
}
