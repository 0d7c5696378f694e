//! Graphviz export.

use std::fmt::Write;

use crate::embedding::{EdgeId, PlanarGraph};
use crate::trees::HSubgraph;

/// Undirected DOT graph. Tree edges are drawn bold, H-edges carry their rule tags.
pub fn to_dot(g: &PlanarGraph, tree: Option<&[EdgeId]>, h: Option<&HSubgraph>) -> String {
    let mut in_tree = vec![false; g.edge_count()];
    for &e in tree.unwrap_or(&[]) {
        in_tree[e] = true;
    }
    let roots = g.roots();
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.vertex_count() {
        let role = if v == roots.v1 {
            " xlabel=\"v1\""
        } else if v == roots.v2 {
            " xlabel=\"v2\""
        } else if v == roots.vn {
            " xlabel=\"vn\""
        } else {
            ""
        };
        let _ = writeln!(s, "  {v} [label=\"{v}\"{role}];");
    }
    for e in 0..g.edge_count() {
        let (a, b) = g.endpoints(e);
        let mut attrs = Vec::new();
        if in_tree[e] {
            attrs.push("style=bold".to_string());
            attrs.push("penwidth=2.5".to_string());
        }
        if let Some(h) = h.filter(|h| h.contains(e)) {
            attrs.push(format!("label=\"{}\"", h.tag_names(e).join(",")));
        }
        if attrs.is_empty() {
            let _ = writeln!(s, "  {a} -- {b};");
        } else {
            let _ = writeln!(s, "  {a} -- {b} [{}];", attrs.join(" "));
        }
    }
    s.push_str("}\n");
    s
}
