//! The test oracles checked against catalog counts and hand-computed values.

mod common;

use std::collections::BTreeSet;

use common::*;
use theta_width::graph::{generators, Graph};

#[test]
fn catalog_sizes_match_known_counts() {
    let all: Vec<usize> = (1..=6).map(|n| graphs_up_to_iso(n).len()).collect();
    assert_eq!(all, [1, 2, 4, 11, 34, 156]);
    let connected: Vec<usize> =
        (1..=6).map(|n| graphs_up_to_iso(n).iter().filter(|g| g.is_connected()).count()).collect();
    assert_eq!(connected, [1, 1, 2, 6, 21, 112]);
    let trees: Vec<usize> = (1..=10).map(|n| trees_up_to_iso(n).len()).collect();
    assert_eq!(trees, [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    assert!(trees_up_to_iso(7).iter().all(|t| t.is_tree() && t.vertex_count() == 7));
}

#[test]
fn seven_vertex_catalog() {
    let g7 = graphs_up_to_iso(7);
    assert_eq!(g7.len(), 1044);
    assert_eq!(g7.iter().filter(|g| g.is_connected()).count(), 853);
}

#[test]
fn separator_oracle() {
    let c6 = generators::cycle(6).unwrap();
    let s = Small::new(&c6);
    assert_eq!(brute_separator(&s, s.mask(&BTreeSet::from([1])), s.mask(&BTreeSet::from([4]))), 1);
    assert_eq!(brute_separator(&s, s.mask(&BTreeSet::from([1, 2])), s.mask(&BTreeSet::from([4, 5]))), 2);
    assert_eq!(brute_separator(&s, s.mask(&BTreeSet::from([1, 2])), s.mask(&BTreeSet::from([2, 5]))), 2);
    let star = generators::star(3).unwrap();
    assert!(brute_theta_connected(&star, &BTreeSet::from([2, 3, 4]), 3));
    assert!(!brute_theta_connected(&star, &BTreeSet::from([1, 2, 3, 4]), 2));
    assert!(brute_theta_connected(&generators::path(3).unwrap(), &BTreeSet::from([1, 3]), 2));
    assert!(!brute_theta_connected(&generators::path(5).unwrap(), &BTreeSet::from([1, 2, 4, 5]), 2));
}

#[test]
fn width_oracle_values() {
    let c6 = generators::cycle(6).unwrap();
    assert_eq!(bag_width(&c6, 3), 2);
    assert_eq!(bag_width(&c6, 2), 5);
    assert_eq!(bag_width(&generators::complete(4).unwrap(), 2), 3);
    assert_eq!(bag_width(&generators::path(5).unwrap(), 2), 1);
    assert_eq!(bag_width(&generators::grid(3).unwrap(), 3), 4);
    assert_eq!(bag_width(&generators::grid(3).unwrap(), 5), 3);
    assert_eq!(edge_leaf_width(&generators::path(4).unwrap(), 2), None);
    assert_eq!(edge_leaf_width(&generators::star(5).unwrap(), 2), Some(1));
    assert_eq!(edge_leaf_width(&generators::path(4).unwrap(), 3), Some(1));
    let mut lone = Graph::new();
    lone.add_vertex(7);
    assert_eq!(bag_width(&lone, 3), 0);
}
