use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

use super::StructureError;

/// A `(t, ℓ, n)`-wheel given by its rim tree `T`, hub labels `Z`, the seam
/// permutation `π` and the hub attachment map `ψ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelSpec {
    pub rim_tree: Graph,
    pub hubs: BTreeSet<Vertex>,
    pub pi: BTreeMap<Vertex, Vertex>,
    pub psi: BTreeMap<Vertex, Vertex>,
    pub n: usize,
}

impl WheelSpec {
    /// Identity seam, hubs `0..ℓ` all attached to the least rim vertex.
    pub fn simple(rim_tree: Graph, l: usize, n: usize) -> WheelSpec {
        let pi = rim_tree.vertices().map(|v| (v, v)).collect();
        let first = rim_tree.vertices().next().unwrap_or(0);
        let hubs: BTreeSet<Vertex> = (0..l as Vertex).collect();
        let psi = hubs.iter().map(|&z| (z, first)).collect();
        WheelSpec { rim_tree, hubs, pi, psi, n }
    }

    pub fn t(&self) -> usize {
        self.rim_tree.vertex_count()
    }

    pub fn l(&self) -> usize {
        self.hubs.len()
    }

    /// `2t + ℓ`, the connectivity a rim-transversal is guaranteed.
    pub fn theta(&self) -> usize {
        2 * self.t() + self.l()
    }

    pub fn validate(&self) -> Result<(), StructureError> {
        let bad = |m: &str| Err(StructureError::InvalidWheel(m.into()));
        if self.t() == 0 || !self.rim_tree.is_tree() {
            return bad("rim tree must be a nonempty tree");
        }
        if self.n < 3 {
            return bad("n must be at least 3");
        }
        let rim = self.rim_tree.vertex_set();
        let keys: BTreeSet<Vertex> = self.pi.keys().copied().collect();
        let image: BTreeSet<Vertex> = self.pi.values().copied().collect();
        if keys != rim || image != rim {
            return bad("pi must be a permutation of the rim vertices");
        }
        let domain: BTreeSet<Vertex> = self.psi.keys().copied().collect();
        if domain != self.hubs || !self.psi.values().all(|v| rim.contains(v)) {
            return bad("psi must map every hub to a rim vertex");
        }
        Ok(())
    }
}

/// The graph of a wheel plus the names of its vertices.
///
/// Copy `i` of the `j`-th least rim vertex (both 1-based) is `(i - 1)·t + j`;
/// the `k`-th least hub label is `n·t + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltWheel {
    pub graph: Graph,
    pub copies: BTreeMap<(Vertex, usize), Vertex>,
    pub hubs: BTreeMap<Vertex, Vertex>,
    pub n: usize,
}

impl BuiltWheel {
    /// Vertex set of the rim copy `T_i`, `1 ≤ i ≤ n`.
    pub fn copy(&self, i: usize) -> BTreeSet<Vertex> {
        self.copies.iter().filter(|((_, c), _)| *c == i).map(|(_, &x)| x).collect()
    }

    /// `(rim vertex, copy index)` for a non-hub vertex.
    pub fn locate(&self, x: Vertex) -> Option<(Vertex, usize)> {
        self.copies.iter().find(|(_, &y)| y == x).map(|(&k, _)| k)
    }
}

pub fn build_wheel(spec: &WheelSpec) -> Result<BuiltWheel, StructureError> {
    spec.validate()?;
    let t = spec.t();
    let rim: Vec<Vertex> = spec.rim_tree.vertices().collect();
    let pos = |v: Vertex| rim.binary_search(&v).expect("rim vertex") as Vertex;
    let id = |v: Vertex, i: usize| (i as Vertex - 1) * t as Vertex + pos(v) + 1;
    let mut g = Graph::new();
    let mut copies = BTreeMap::new();
    for i in 1..=spec.n {
        for &v in &rim {
            g.add_vertex(id(v, i));
            copies.insert((v, i), id(v, i));
        }
        for e in spec.rim_tree.edges() {
            g.add_edge(id(e.u(), i), id(e.v(), i));
        }
        if i < spec.n {
            for &v in &rim {
                g.add_edge(id(v, i), id(v, i + 1));
            }
        }
    }
    for &v in &rim {
        g.add_edge(id(v, spec.n), id(spec.pi[&v], 1));
    }
    let mut hubs = BTreeMap::new();
    for (k, &z) in spec.hubs.iter().enumerate() {
        let hz = (spec.n * t + k + 1) as Vertex;
        hubs.insert(z, hz);
        g.add_vertex(hz);
        for i in 1..=spec.n {
            g.add_edge(hz, id(spec.psi[&z], i));
        }
    }
    Ok(BuiltWheel { graph: g, copies, hubs, n: spec.n })
}

/// True iff `u` avoids the hubs and has exactly one vertex in each rim copy.
pub fn verify_rim_transversal(wheel: &BuiltWheel, u: &BTreeSet<Vertex>) -> bool {
    let mut hit = vec![0usize; wheel.n + 1];
    for &x in u {
        match wheel.locate(x) {
            Some((_, i)) => hit[i] += 1,
            None => return false,
        }
    }
    hit[1..].iter().all(|&c| c == 1)
}
