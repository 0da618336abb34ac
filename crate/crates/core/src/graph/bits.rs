//! Dense bitmask view of a small graph, used by the exhaustive searches.

use std::collections::BTreeSet;

use super::{Graph, Vertex};

pub(crate) type Mask = u64;

pub(crate) const MAX_BITS: usize = 64;

#[derive(Debug, Clone)]
pub(crate) struct BitGraph {
    pub ids: Vec<Vertex>,
    pub adj: Vec<Mask>,
}

impl BitGraph {
    /// Panics if the graph has more than 64 vertices; callers guard sizes first.
    pub fn new(g: &Graph) -> BitGraph {
        let ids: Vec<Vertex> = g.vertices().collect();
        assert!(ids.len() <= MAX_BITS, "bitmask view limited to 64 vertices");
        let adj = ids
            .iter()
            .map(|&v| g.neighbors(v).map(|w| 1u64 << ids.binary_search(&w).unwrap()).fold(0, |a, b| a | b))
            .collect();
        BitGraph { ids, adj }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn full(&self) -> Mask {
        full_mask(self.n())
    }

    pub fn index(&self, v: Vertex) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub fn mask_of<'a>(&self, vs: impl IntoIterator<Item = &'a Vertex>) -> Mask {
        vs.into_iter().filter_map(|v| self.index(*v)).fold(0, |m, i| m | (1 << i))
    }

    pub fn set_of(&self, mask: Mask) -> BTreeSet<Vertex> {
        bits(mask).map(|i| self.ids[i]).collect()
    }

    pub fn neighborhood(&self, mask: Mask) -> Mask {
        bits(mask).fold(0, |acc, i| acc | self.adj[i]) & !mask
    }

    /// Components of the subgraph induced on `within`.
    pub fn components(&self, within: Mask) -> Vec<Mask> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let comp = self.grow(seed, within);
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn grow(&self, seed: Mask, within: Mask) -> Mask {
        let mut comp = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let next = self.neighborhood_raw(frontier) & within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    fn neighborhood_raw(&self, mask: Mask) -> Mask {
        bits(mask).fold(0, |acc, i| acc | self.adj[i])
    }

    #[cfg(test)]
    pub fn is_connected_set(&self, mask: Mask) -> bool {
        mask != 0 && self.grow(mask & mask.wrapping_neg(), mask) == mask
    }
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// All `k`-subsets of the bits in `universe`, in increasing colex order.
pub(crate) fn subsets_of_size(universe: Mask, k: usize) -> Vec<Mask> {
    let items: Vec<usize> = bits(universe).collect();
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | (1 << items[i])));
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] < items.len() - k + pos {
                idx[pos] += 1;
                for j in pos + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
