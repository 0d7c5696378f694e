//! Seeded corruptions of pipeline outputs, each paired with the checker that
//! has to reject it.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::dual_order::verify_label_correspondence;
use crate::embedding::{twin, EdgeId, PlanarGraph, Vertex};
use crate::order::{
    check_face_orientation, enumerate_vertices, label_edges, validate_canonical_ordering,
    CanonicalOrdering, Label,
};
use crate::pipeline::Pipeline;
use crate::report::ValidationReport;
use crate::verify::{check_annotation, check_five_tree, verify_spanning_tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Swap singleton groups `k`, `k+1` where `z_{k+1}` needs `z_k` as one of exactly two earlier neighbours.
    DependentSwap,
    ReverseChain,
    SwapFirstPair,
    MergeSingletons,
    FlipEdge,
    Relabel,
    Reparent,
    DropTreeEdge,
    NonHTreeEdge,
    DualDependentSwap,
}

impl Mutation {
    pub const ALL: [Mutation; 10] = [
        Mutation::DependentSwap,
        Mutation::ReverseChain,
        Mutation::SwapFirstPair,
        Mutation::MergeSingletons,
        Mutation::FlipEdge,
        Mutation::Relabel,
        Mutation::Reparent,
        Mutation::DropTreeEdge,
        Mutation::NonHTreeEdge,
        Mutation::DualDependentSwap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::DependentSwap => "dependent-swap",
            Mutation::ReverseChain => "reverse-chain",
            Mutation::SwapFirstPair => "swap-first-pair",
            Mutation::MergeSingletons => "merge-singletons",
            Mutation::FlipEdge => "flip-edge",
            Mutation::Relabel => "relabel",
            Mutation::Reparent => "reparent",
            Mutation::DropTreeEdge => "drop-tree-edge",
            Mutation::NonHTreeEdge => "non-h-tree-edge",
            Mutation::DualDependentSwap => "dual-dependent-swap",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of one mutation: `None` when the mutation does not apply to this graph.
pub fn apply_and_check<R: Rng>(
    g: &PlanarGraph,
    p: &Pipeline,
    m: Mutation,
    rng: &mut R,
) -> Option<ValidationReport> {
    match m {
        Mutation::DependentSwap => {
            let co = dependent_swap(g, &p.ordering, rng)?;
            Some(validate_canonical_ordering(g, &co))
        }
        Mutation::DualDependentSwap => {
            let gs = p.dual.graph();
            let co = dependent_swap(gs, &p.dual_ordering.ordering, rng)?;
            let mut rep = validate_canonical_ordering(gs, &co);
            let dann = label_edges(gs, &co, &enumerate_vertices(gs, &co));
            rep.extend(verify_label_correspondence(
                g,
                &p.annotation,
                &p.dual,
                &dann,
            ));
            Some(rep)
        }
        Mutation::ReverseChain => {
            let ks: Vec<usize> = (1..p.ordering.len())
                .filter(|&k| p.ordering.groups[k].len() > 1)
                .collect();
            let &k = ks.choose(rng)?;
            let mut co = p.ordering.clone();
            co.groups[k].reverse();
            Some(validate_canonical_ordering(g, &co))
        }
        Mutation::SwapFirstPair => {
            let mut co = p.ordering.clone();
            co.groups[0].reverse();
            Some(validate_canonical_ordering(g, &co))
        }
        Mutation::MergeSingletons => {
            let co = &p.ordering;
            let ks: Vec<usize> = (1..co.len() - 1)
                .filter(|&k| co.groups[k].len() == 1 && co.groups[k + 1].len() == 1)
                .collect();
            let &k = ks.choose(rng)?;
            let mut groups = co.groups.clone();
            let z = groups.remove(k + 1);
            groups[k].extend(z);
            Some(validate_canonical_ordering(
                g,
                &CanonicalOrdering::from_groups(groups),
            ))
        }
        Mutation::FlipEdge => {
            let e = rng.gen_range(0..g.edge_count());
            let mut ann = p.annotation.clone();
            let (a, b) = g.endpoints(e);
            ann.edge_tail[e] = if ann.edge_tail[e] == a { b } else { a };
            let mut rep = check_annotation(g, &p.ordering, &ann);
            rep.extend(check_face_orientation(g, &ann));
            Some(rep)
        }
        Mutation::Relabel => {
            let d = rng.gen_range(0..g.dart_count());
            let mut ann = p.annotation.clone();
            let others: Vec<Label> = Label::ALL
                .into_iter()
                .filter(|&l| Some(l) != ann.label[d])
                .collect();
            ann.label[d] = others.choose(rng).copied();
            Some(check_annotation(g, &p.ordering, &ann))
        }
        Mutation::Reparent => {
            let ann = &p.annotation;
            let choices: Vec<(Vertex, usize)> = (0..g.vertex_count())
                .flat_map(|v| {
                    g.rotation(v)
                        .filter(move |&d| !ann.is_out(g, d))
                        .map(move |d| (v, twin(d)))
                        .filter(move |&(v, d)| ann.parent[v] != Some(d) && ann.parent[v].is_some())
                })
                .collect();
            let &(v, d) = choices.choose(rng)?;
            let mut ann = ann.clone();
            ann.parent[v] = Some(d);
            Some(check_annotation(g, &p.ordering, &ann))
        }
        Mutation::DropTreeEdge => {
            let mut t = p.five.tree_edges.clone();
            let i = rng.gen_range(0..t.len());
            t.remove(i);
            Some(verify_spanning_tree(g, &t))
        }
        Mutation::NonHTreeEdge => {
            let outside: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| !p.h.contains(e)).collect();
            let &f = outside.choose(rng)?;
            let (a, b) = g.endpoints(f);
            let path = tree_path(g, &p.five.tree_edges, a, b);
            let mut tree = p.five.clone();
            tree.tree_edges.retain(|&e| e != path[0]);
            tree.tree_edges.push(f);
            tree.cotree_edges.retain(|&e| e != f);
            tree.cotree_edges.push(path[0]);
            Some(check_five_tree(g, &tree, &p.h, &p.hstar, &p.h0))
        }
    }
}

fn dependent_swap<R: Rng>(
    g: &PlanarGraph,
    co: &CanonicalOrdering,
    rng: &mut R,
) -> Option<CanonicalOrdering> {
    let group = co.group_of(g.vertex_count());
    let ks: Vec<usize> = (1..co.len() - 1)
        .filter(|&k| {
            let (a, b) = (&co.groups[k], &co.groups[k + 1]);
            a.len() == 1
                && b.len() == 1
                && g.dart_between(a[0], b[0]).is_some()
                && g.neighbours(b[0]).filter(|&w| group[w] <= k).count() == 2
        })
        .collect();
    let &k = ks.choose(rng)?;
    let mut out = co.clone();
    out.groups.swap(k, k + 1);
    out.kinds.swap(k, k + 1);
    Some(out)
}

/// Tree edges on the path from `a` to `b`.
fn tree_path(g: &PlanarGraph, tree: &[EdgeId], a: Vertex, b: Vertex) -> Vec<EdgeId> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for &e in tree {
        let (x, y) = g.endpoints(e);
        adj[x].push((y, e));
        adj[y].push((x, e));
    }
    let mut via = vec![None; g.vertex_count()];
    let mut stack = vec![a];
    let mut seen = vec![false; g.vertex_count()];
    seen[a] = true;
    while let Some(x) = stack.pop() {
        for &(y, e) in &adj[x] {
            if !std::mem::replace(&mut seen[y], true) {
                via[y] = Some((x, e));
                stack.push(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut x = b;
    while let Some((y, e)) = via[x] {
        path.push(e);
        x = y;
    }
    path
}
