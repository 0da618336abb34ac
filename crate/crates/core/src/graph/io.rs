//! Plain-text edge lists and DOT export.
//!
//! Text format: a header `p <num_vertices> <num_edges>`, then one `u v` pair
//! per line with ids in `1..=num_vertices`. Lines starting with `#` are comments.

use std::fmt::Write as _;

use super::{Graph, GraphError, Vertex};

pub fn parse_text(input: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::new();
    let mut seen_edges = 0usize;
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| GraphError::Parse { line: line_no, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 3 || fields[0] != "p" {
                    return Err(err("expected header `p <num_vertices> <num_edges>`".into()));
                }
                let n: usize = fields[1].parse().map_err(|_| err("bad vertex count".into()))?;
                let m: usize = fields[2].parse().map_err(|_| err("bad edge count".into()))?;
                for v in 1..=n {
                    g.add_vertex(v as Vertex);
                }
                header = Some((n, m));
            }
            Some((n, _)) => {
                if fields.len() != 2 {
                    return Err(err("expected `u v`".into()));
                }
                let mut ends = [0 as Vertex; 2];
                for (slot, f) in ends.iter_mut().zip(&fields) {
                    let v: Vertex = f.parse().map_err(|_| err(format!("bad vertex id `{f}`")))?;
                    if v == 0 || v as usize > n {
                        return Err(err(format!("vertex {v} outside 1..={n}")));
                    }
                    *slot = v;
                }
                if ends[0] == ends[1] {
                    return Err(err(format!("loop at vertex {}", ends[0])));
                }
                if !g.add_edge(ends[0], ends[1]) {
                    return Err(err(format!("duplicate edge {} {}", ends[0], ends[1])));
                }
                seen_edges += 1;
            }
        }
    }
    match header {
        None => Err(GraphError::Parse { line: 0, message: "missing header".into() }),
        Some((_, m)) if m != seen_edges => {
            Err(GraphError::Parse { line: 0, message: format!("header declares {m} edges, found {seen_edges}") })
        }
        Some(_) => Ok(g),
    }
}

/// Writes the text format. Vertex ids must be exactly `1..=n`.
pub fn write_text(g: &Graph) -> Result<String, GraphError> {
    let n = g.vertex_count();
    if let Some(v) = g.vertices().zip(1..).find(|(v, i)| v != i).map(|(v, _)| v) {
        return Err(GraphError::Parameter(format!("text format needs ids 1..={n}; found vertex {v}")));
    }
    let mut out = format!("p {} {}\n", n, g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    Ok(out)
}

/// Relabels the vertices to `1..=n` in increasing order; returns the graph and the old ids.
pub fn compact(g: &Graph) -> (Graph, Vec<Vertex>) {
    let ids: Vec<Vertex> = g.vertices().collect();
    let pos = |v: Vertex| ids.binary_search(&v).unwrap() as Vertex + 1;
    let mut h = Graph::new();
    for i in 1..=ids.len() as Vertex {
        h.add_vertex(i);
    }
    for e in g.edges() {
        h.add_edge(pos(e.u()), pos(e.v()));
    }
    (h, ids)
}

pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {v} [label=\"{v}\"];");
    }
    for e in g.edges() {
        let _ = writeln!(out, "  {} -- {};", e.u(), e.v());
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn text_round_trip() {
        let g = generators::grid(3).unwrap();
        let text = write_text(&g).unwrap();
        assert!(text.starts_with("p 9 12\n"));
        assert_eq!(parse_text(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_isolated() {
        let g = parse_text("# two edges\np 4 2\n1 2\n\n# mid\n2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.isolated_vertices(), vec![4]);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_text("").is_err());
        assert!(parse_text("p 3 1\n1 1\n").is_err());
        assert!(parse_text("p 3 1\n1 4\n").is_err());
        assert!(parse_text("p 3 2\n1 2\n").is_err());
        assert!(parse_text("p 3 2\n1 2\n2 1\n").is_err());
        assert!(matches!(parse_text("p 3 1\n1 x\n"), Err(GraphError::Parse { line: 2, .. })));
    }

    #[test]
    fn writer_needs_compact_ids() {
        let g = Graph::from_edges([(2, 5)]);
        assert!(write_text(&g).is_err());
        let (h, ids) = compact(&g);
        assert_eq!(ids, vec![2, 5]);
        assert_eq!(write_text(&h).unwrap(), "p 2 1\n1 2\n");
    }

    #[test]
    fn dot_lists_everything() {
        let dot = to_dot(&generators::path(3).unwrap(), "g");
        assert!(dot.contains("1 -- 2;"));
        assert!(dot.contains("3 [label=\"3\"];"));
    }
}
