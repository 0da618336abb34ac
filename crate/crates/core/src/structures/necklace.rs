use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connectivity::max_disjoint_paths;
use crate::graph::{Edge, Graph, Subgraph, Vertex};

use super::StructureError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceParams {
    pub t: usize,
    pub s: usize,
    pub l: usize,
    pub n: usize,
}

impl fmt::Display for NecklaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.t, self.s, self.l, self.n)
    }
}

/// Beads `B_1..B_n`, matchings `M_1..M_n` (`M_n` joins `B_n` to `B_1`) and hubs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Necklace {
    pub params: NecklaceParams,
    pub beads: Vec<Subgraph>,
    pub matchings: Vec<BTreeSet<Edge>>,
    pub hubs: BTreeSet<Vertex>,
}

impl Necklace {
    /// The `(0,0,0,m)`-necklace of singleton beads.
    pub fn singletons(vertices: impl IntoIterator<Item = Vertex>) -> Necklace {
        let beads: Vec<Subgraph> =
            vertices.into_iter().map(|v| Subgraph::new(BTreeSet::from([v]), BTreeSet::new())).collect();
        let n = beads.len();
        Necklace {
            params: NecklaceParams { t: 0, s: 0, l: 0, n },
            matchings: vec![BTreeSet::new(); n],
            beads,
            hubs: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    /// `B_i` for `1 ≤ i ≤ n`.
    pub fn bead(&self, i: usize) -> &Subgraph {
        &self.beads[i - 1]
    }

    /// `M_i` with indices taken mod `n`, so `M_0 = M_n`. Empty if absent.
    pub fn matching(&self, i: usize) -> BTreeSet<Edge> {
        let n = self.matchings.len();
        if n == 0 {
            return BTreeSet::new();
        }
        self.matchings[(i + n - 1) % n].clone()
    }

    pub fn theta(&self) -> usize {
        self.params.t + self.params.s + self.params.l
    }

    pub fn is_balanced(&self) -> bool {
        self.params.s == self.params.t
    }

    pub fn is_nearly_balanced(&self) -> bool {
        self.is_balanced() || (self.params.s + 1 == self.params.t && self.params.l == 0)
    }

    /// `V(N)`: all bead vertices and the hubs.
    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        let mut out = self.hubs.clone();
        for b in &self.beads {
            out.extend(b.vertices.iter().copied());
        }
        out
    }

    /// 1-based index of the bead containing `v`, if any.
    pub fn bead_of(&self, v: Vertex) -> Option<usize> {
        self.beads.iter().position(|b| b.vertices.contains(&v)).map(|k| k + 1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("necklace serializes")
    }

    pub fn from_json(s: &str) -> Result<Necklace, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// One of the seven defining conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    N1,
    N2,
    N3,
    N4,
    N5,
    N6,
    N7,
}

impl Condition {
    pub const ALL: [Condition; 7] =
        [Condition::N1, Condition::N2, Condition::N3, Condition::N4, Condition::N5, Condition::N6, Condition::N7];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Outcome of one condition; `beads` lists the 1-based beads where it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: Condition,
    pub passed: bool,
    pub beads: Vec<usize>,
    pub detail: String,
}

/// Per-condition results plus the path systems that discharged N5 and N6.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceReport {
    pub results: Vec<ConditionResult>,
    pub paths: BTreeMap<usize, Vec<Vec<Vertex>>>,
}

impl NecklaceReport {
    pub fn is_valid(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failed(&self) -> Vec<Condition> {
        self.results.iter().filter(|r| !r.passed).map(|r| r.condition).collect()
    }

    pub fn result(&self, c: Condition) -> &ConditionResult {
        self.results.iter().find(|r| r.condition == c).expect("all conditions reported")
    }

    /// `Ok` when valid, otherwise an error naming the failed conditions.
    pub fn into_result(self) -> Result<(), StructureError> {
        if self.is_valid() {
            return Ok(());
        }
        let msg: Vec<String> =
            self.results.iter().filter(|r| !r.passed).map(|r| format!("{}: {}", r.condition, r.detail)).collect();
        Err(StructureError::InvalidNecklace(msg.join("; ")))
    }
}

/// Left and right attachment sets, 0-based by bead.
pub fn attachment_sequences(nk: &Necklace) -> (Vec<BTreeSet<Vertex>>, Vec<BTreeSet<Vertex>>) {
    let touched = |i: usize, m: &BTreeSet<Edge>| -> BTreeSet<Vertex> {
        let b = nk.bead(i);
        m.iter().flat_map(|e| e.ends()).filter(|v| b.vertices.contains(v)).collect()
    };
    let n = nk.len();
    let xs = (1..=n).map(|i| touched(i, &nk.matching(i - 1))).collect();
    let ys = (1..=n).map(|i| touched(i, &nk.matching(i))).collect();
    (xs, ys)
}

pub fn validate_necklace(g: &Graph, nk: &Necklace) -> NecklaceReport {
    let n = nk.len();
    let p = nk.params;
    let mut results = Vec::new();
    let mut push = |condition, beads: Vec<usize>, detail: String| {
        results.push(ConditionResult { condition, passed: beads.is_empty() && detail.is_empty(), beads, detail });
    };

    let mut bad = BTreeSet::new();
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    for i in 1..=n {
        for &v in &nk.bead(i).vertices {
            if nk.hubs.contains(&v) {
                bad.insert(i);
            }
            if let Some(j) = owner.insert(v, i) {
                bad.insert(j);
                bad.insert(i);
            }
        }
    }
    let detail = if bad.is_empty() { String::new() } else { "beads overlap each other or the hubs".into() };
    push(Condition::N1, bad.into_iter().collect(), detail);

    let bad: Vec<usize> = (1..=n)
        .filter(|&i| {
            let b = nk.bead(i);
            b.vertices.is_empty() || !b.is_well_formed() || !b.is_subgraph_of(g) || !b.is_connected()
        })
        .collect();
    let detail = if bad.is_empty() { String::new() } else { "bead empty, not a subgraph, or disconnected".into() };
    push(Condition::N2, bad, detail);

    let mut bad = Vec::new();
    if nk.matchings.len() == n {
        for i in 1..=n {
            let m = nk.matching(i);
            let (bi, bj) = (&nk.bead(i).vertices, &nk.bead(i % n + 1).vertices);
            let ends: Vec<Vertex> = m.iter().flat_map(|e| e.ends()).collect();
            let distinct: BTreeSet<Vertex> = ends.iter().copied().collect();
            let across = m.iter().all(|e| {
                g.contains_edge(e)
                    && ((bi.contains(&e.u()) && bj.contains(&e.v())) || (bi.contains(&e.v()) && bj.contains(&e.u())))
            });
            if distinct.len() != ends.len() || !across {
                bad.push(i);
            }
        }
    }
    let detail = if nk.matchings.len() != n {
        format!("{} matchings for {} beads", nk.matchings.len(), n)
    } else if bad.is_empty() {
        String::new()
    } else {
        "not a matching between consecutive beads of G".into()
    };
    push(Condition::N3, bad, detail);

    let bad: Vec<usize> = (1..=n).filter(|&i| nk.matching(i).len() != if i == n { p.s } else { p.t }).collect();
    let detail = if p.n != n || n < 2 || p.t < p.s || nk.matchings.len() != n {
        format!("parameters {p} do not fit {n} beads")
    } else if bad.is_empty() {
        String::new()
    } else {
        "matching sizes differ from t and s".into()
    };
    push(Condition::N4, bad, detail);

    let (xs, ys) = attachment_sequences(nk);
    let mut paths = BTreeMap::new();
    let mut linkage = |range: Vec<usize>, need: usize| -> Vec<usize> {
        let mut bad = Vec::new();
        for i in range {
            let found = max_disjoint_paths(&nk.bead(i).to_graph(), &xs[i - 1], &ys[i - 1]);
            if found.count < need {
                bad.push(i);
            } else {
                paths.insert(i, found.paths.into_iter().take(need).collect());
            }
        }
        bad
    };
    let bad = linkage((2..n).collect(), p.t);
    let detail = if bad.is_empty() { String::new() } else { format!("fewer than {} disjoint paths", p.t) };
    push(Condition::N5, bad, detail);
    let ends = if n >= 2 { vec![1, n] } else { (1..=n).collect() };
    let bad = linkage(ends, p.s);
    let detail = if bad.is_empty() { String::new() } else { format!("fewer than {} disjoint paths", p.s) };
    push(Condition::N6, bad, detail);

    let bad: Vec<usize> =
        (1..=n).filter(|&i| nk.hubs.iter().any(|&z| !nk.bead(i).vertices.iter().any(|&v| g.has_edge(z, v)))).collect();
    let detail = if nk.hubs.len() != p.l {
        format!("{} hubs but l = {}", nk.hubs.len(), p.l)
    } else if bad.is_empty() {
        String::new()
    } else {
        "a hub misses some bead".into()
    };
    push(Condition::N7, bad, detail);

    NecklaceReport { results, paths }
}

/// `G[N]`: beads, matchings and every hub-to-bead edge of `g`.
pub fn necklace_graph(g: &Graph, nk: &Necklace) -> Graph {
    let mut h = Graph::new();
    for v in nk.vertex_set() {
        h.add_vertex(v);
    }
    for b in &nk.beads {
        for e in &b.edges {
            h.add_edge(e.u(), e.v());
        }
    }
    for m in &nk.matchings {
        for e in m {
            h.add_edge(e.u(), e.v());
        }
    }
    for &z in &nk.hubs {
        for b in &nk.beads {
            for &v in &b.vertices {
                if g.has_edge(z, v) {
                    h.add_edge(z, v);
                }
            }
        }
    }
    h
}

/// `B'_i = B_{n-i+1}`, `M'_i = M_{n-i}`.
pub fn reverse(nk: &Necklace) -> Necklace {
    let n = nk.len();
    Necklace {
        params: nk.params,
        beads: nk.beads.iter().rev().cloned().collect(),
        matchings: (1..=n).map(|i| nk.matching(n - i)).collect(),
        hubs: nk.hubs.clone(),
    }
}

/// Contraction to the cut points `0 < a_1 < … < a_{n'-1} < n`.
pub fn contract(nk: &Necklace, cuts: &[usize]) -> Result<Necklace, StructureError> {
    let m = nk.len();
    let mut bounds = vec![0];
    bounds.extend_from_slice(cuts);
    bounds.push(m);
    if bounds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(StructureError::Parameter(format!("cut points {cuts:?} must increase strictly within 1..{m}")));
    }
    if cuts.is_empty() {
        return Err(StructureError::Parameter("a necklace needs at least two beads".into()));
    }
    if nk.params.t == 0 && bounds.windows(2).any(|w| w[1] - w[0] > 1) {
        log::warn!("contracting a necklace with t = 0; merged beads may be disconnected");
    }
    let mut beads = Vec::new();
    let mut matchings = Vec::new();
    for w in bounds.windows(2) {
        let mut b = Subgraph::default();
        for i in w[0] + 1..=w[1] {
            b = b.union(nk.bead(i));
            if i < w[1] {
                b.edges.extend(nk.matching(i));
            }
        }
        beads.push(b);
        matchings.push(nk.matching(w[1]));
    }
    let params = NecklaceParams { n: beads.len(), ..nk.params };
    Ok(Necklace { params, beads, matchings, hubs: nk.hubs.clone() })
}

/// An `(i, j)`-jump, `i < j`, with a witness path from `B_i` to `B_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Jump {
    pub i: usize,
    pub j: usize,
    pub path: Vec<Vertex>,
}

/// `j - i ∉ {-1, 0, 1}` in `Z_n`; in particular a `(1, n)`-jump is not long.
pub fn is_long_jump(i: usize, j: usize, n: usize) -> bool {
    let (a, b) = (i.min(j), i.max(j));
    b - a >= 2 && !(a == 1 && b == n)
}

/// One shortest witness for every realizable pair `i < j`.
pub fn find_jumps(g: &Graph, nk: &Necklace) -> Vec<Jump> {
    let inside = nk.vertex_set();
    let n = nk.len();
    let mut out = Vec::new();
    for i in 1..=n {
        let mut parent: BTreeMap<Vertex, Option<Vertex>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &v in &nk.bead(i).vertices {
            parent.insert(v, None);
            queue.push_back(v);
        }
        let mut found: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if parent.contains_key(&w) {
                    continue;
                }
                if !inside.contains(&w) {
                    parent.insert(w, Some(u));
                    queue.push_back(w);
                } else if let Some(j) = nk.bead_of(w).filter(|&j| j > i) {
                    found.entry(j).or_insert_with(|| {
                        let mut path = vec![w, u];
                        let mut x = u;
                        while let Some(Some(p)) = parent.get(&x) {
                            path.push(*p);
                            x = *p;
                        }
                        path.reverse();
                        path
                    });
                }
            }
        }
        out.extend(found.into_iter().map(|(j, path)| Jump { i, j, path }));
    }
    out
}

pub fn is_long_jump_free(g: &Graph, nk: &Necklace) -> bool {
    find_jumps(g, nk).iter().all(|jp| !is_long_jump(jp.i, jp.j, nk.len()))
}

/// Every bead meets `u`.
pub fn is_supported_by(nk: &Necklace, u: &BTreeSet<Vertex>) -> bool {
    nk.beads.iter().all(|b| b.vertices.iter().any(|v| u.contains(v)))
}

/// Every bead of `other` contains some bead of `nk`.
pub fn supports(nk: &Necklace, other: &Necklace) -> bool {
    other.beads.iter().all(|b2| nk.beads.iter().any(|b| b2.contains(b)))
}

/// A `(t,s,ℓ,n)`-necklace with zigzag beads `a_1 b_1 a_2 … a_t b_t`.
/// `M_i` joins `b_{i,k}` to `a_{i+1,k}`; `M_n` uses the first `s` strands.
/// Hubs see `a_{i,1}`. One spare isolated vertex and one spare edge
/// `b_{n,t} a_{1,t}` (when `s < t`) are added to the graph.
pub fn zigzag_necklace(t: usize, s: usize, l: usize, n: usize) -> (Graph, Necklace) {
    let a = |i: usize, k: usize| (2 * t * (i - 1) + 2 * k - 1) as Vertex;
    let b = |i: usize, k: usize| (2 * t * (i - 1) + 2 * k) as Vertex;
    let mut g = Graph::new();
    let mut beads = Vec::new();
    for i in 1..=n {
        let mut sub = Subgraph::default();
        for k in 1..=t {
            sub.vertices.extend([a(i, k), b(i, k)]);
            sub.edges.insert(Edge::new(a(i, k), b(i, k)));
            if k < t {
                sub.edges.insert(Edge::new(b(i, k), a(i, k + 1)));
            }
        }
        for e in &sub.edges {
            g.add_edge(e.u(), e.v());
        }
        beads.push(sub);
    }
    let mut matchings = Vec::new();
    for i in 1..=n {
        let (next, width) = if i < n { (i + 1, t) } else { (1, s) };
        let m: BTreeSet<Edge> = (1..=width).map(|k| Edge::new(b(i, k), a(next, k))).collect();
        for e in &m {
            g.add_edge(e.u(), e.v());
        }
        matchings.push(m);
    }
    let base = (2 * t * n) as Vertex;
    let hubs: BTreeSet<Vertex> = (1..=l as Vertex).map(|z| base + z).collect();
    for &z in &hubs {
        for i in 1..=n {
            g.add_edge(z, a(i, 1));
        }
    }
    g.add_vertex(base + l as Vertex + 1);
    if s < t {
        g.add_edge(b(n, t), a(1, t));
    }
    (g, Necklace { params: NecklaceParams { t, s, l, n }, beads, matchings, hubs })
}
