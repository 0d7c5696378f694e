//! Independent checkers used by the tests, the CLI and the acceptance suite.

pub mod mutate;
pub mod oracle;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::embedding::{twin, Dart, EdgeId, PlanarGraph, Roots, Vertex};
use crate::order::{CanonicalOrdering, EdgeAnnotation, Label};
use crate::report::ValidationReport;
use crate::trees::{
    cotree_degrees, tree_degrees, ConstrainedTree, HSubgraph, HZeroForest, SpanningTreePair, Walk,
};

pub use oracle::{
    best_degree_pair, enumerate_spanning_trees, matrix_tree_count, DegreePair, OracleError,
    SpanningTrees, ORACLE_GATE,
};

pub fn verify_spanning_tree(g: &PlanarGraph, edges: &[EdgeId]) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let n = g.vertex_count();
    if edges.len() + 1 != n {
        rep.push(
            "tree-size",
            "T",
            format!("{} edges, expected {}", edges.len(), n.saturating_sub(1)),
        );
    }
    let mut seen = vec![false; g.edge_count()];
    let mut uf = UnionFind::<usize>::new(n);
    let mut parts = n;
    for &e in edges {
        if e >= g.edge_count() {
            rep.push("tree-edge", format!("e={e}"), "edge id out of range");
            continue;
        }
        if std::mem::replace(&mut seen[e], true) {
            rep.push("tree-edge", format!("e={e}"), "edge listed twice");
            continue;
        }
        let (a, b) = g.endpoints(e);
        if uf.union(a, b) {
            parts -= 1;
        } else {
            rep.push(
                "tree-cycle",
                format!("e={e}"),
                format!("edge ({a}, {b}) closes a cycle"),
            );
        }
    }
    if parts > 1 {
        rep.push("tree-spanning", "T", format!("{parts} components"));
    }
    rep
}

/// Same checks for a set of dual edges over `G*`.
pub fn verify_spanning_cotree(g: &PlanarGraph, dual_edges: &[EdgeId]) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let f = g.face_count();
    if dual_edges.len() + 1 != f {
        rep.push(
            "cotree-size",
            "T*",
            format!(
                "{} edges, expected {}",
                dual_edges.len(),
                f.saturating_sub(1)
            ),
        );
    }
    let mut uf = UnionFind::<usize>::new(f);
    let mut parts = f;
    for &e in dual_edges {
        if uf.union(g.left_face(2 * e), g.right_face(2 * e)) {
            parts -= 1;
        } else {
            rep.push(
                "cotree-cycle",
                format!("e*={e}"),
                "dual edge closes a cycle",
            );
        }
    }
    if parts > 1 {
        rep.push("cotree-spanning", "T*", format!("{parts} components"));
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub max: usize,
    /// `histogram[d]` vertices of degree `d`, for `d` in `0..=max`.
    pub histogram: Vec<usize>,
}

pub fn degree_profile(g: &PlanarGraph, edges: &[EdgeId]) -> DegreeProfile {
    profile(&tree_degrees(g, edges))
}

pub fn cotree_degree_profile(g: &PlanarGraph, dual_edges: &[EdgeId]) -> DegreeProfile {
    profile(&cotree_degrees(g, dual_edges))
}

fn profile(deg: &[usize]) -> DegreeProfile {
    let max = deg.iter().copied().max().unwrap_or(0);
    let mut histogram = vec![0; max + 1];
    for &d in deg {
        histogram[d] += 1;
    }
    DegreeProfile { max, histogram }
}

/// Recomputes the enumeration, orientation, parent-edges, first and last
/// outgoing darts and all labels from `co`, and reports every disagreement with `ann`.
pub fn check_annotation(
    g: &PlanarGraph,
    co: &CanonicalOrdering,
    ann: &EdgeAnnotation,
) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let n = g.vertex_count();
    let Roots { v1, v2, vn } = g.roots();
    let group = co.group_of(n);

    let mut idx = vec![0usize; n];
    let mut s = 0;
    for (k, grp) in co.groups.iter().enumerate() {
        let attach = |z: Vertex| {
            g.neighbours(z)
                .filter(|&w| group[w] < k)
                .map(|w| idx[w])
                .max()
                .unwrap_or(0)
        };
        let forward = k == 0 || grp.len() == 1 || attach(grp[0]) > attach(grp[grp.len() - 1]);
        for j in 0..grp.len() {
            let z = if forward {
                grp[j]
            } else {
                grp[grp.len() - 1 - j]
            };
            idx[z] = s + j + 1;
        }
        s += grp.len();
    }
    if ann.idx != idx {
        let v = (0..n)
            .find(|&v| ann.idx.get(v) != Some(&idx[v]))
            .unwrap_or(0);
        rep.push(
            "idx",
            format!("v={v}"),
            format!("index {:?}, expected {}", ann.idx.get(v), idx[v]),
        );
    }

    let out = |d: Dart| {
        let (t, h) = (g.tail(d), g.head(d));
        if (t, h) == (vn, v1) {
            true
        } else if (t, h) == (v1, vn) {
            false
        } else {
            idx[t] < idx[h]
        }
    };
    for e in 0..g.edge_count() {
        let want = if out(2 * e) {
            g.tail(2 * e)
        } else {
            g.head(2 * e)
        };
        if ann.edge_tail[e] != want {
            let (a, b) = g.endpoints(e);
            rep.push(
                "direction",
                format!("e={e} ({a},{b})"),
                format!("tail {}, expected {want}", ann.edge_tail[e]),
            );
        }
    }

    for v in 0..n {
        let rot: Vec<Dart> = g.rotation(v).collect();
        let r = rot.len();
        let want_parent = rot
            .iter()
            .filter(|&&d| !out(d) && !(v == v1 && g.head(d) == vn))
            .max_by_key(|&&d| idx[g.head(d)])
            .map(|&d| twin(d));
        if ann.parent[v] != want_parent {
            rep.push(
                "parent",
                format!("v={v}"),
                format!("parent dart {:?}, expected {want_parent:?}", ann.parent[v]),
            );
        }
        let first = (0..r)
            .find(|&i| out(rot[i]) && !out(rot[(i + r - 1) % r]))
            .map(|i| rot[i]);
        let last = (0..r)
            .find(|&i| out(rot[i]) && !out(rot[(i + 1) % r]))
            .map(|i| rot[i]);
        if first != Some(ann.first_out[v]) || last != Some(ann.last_out[v]) {
            rep.push(
                "first-last-out",
                format!("v={v}"),
                "first or last outgoing dart differs",
            );
        }
    }

    let mut want: Vec<Option<Label>> = vec![None; g.dart_count()];
    let kk = co.groups.len();
    for (k, grp) in co.groups.iter().enumerate().skip(1) {
        if grp.len() == 1 {
            let z = grp[0];
            let rot: Vec<Dart> = g.rotation(z).collect();
            let r = rot.len();
            let Some(start) = (0..r).find(|&i| !out(rot[i]) && out(rot[(i + r - 1) % r])) else {
                continue;
            };
            let incoming: Vec<Dart> = (0..r)
                .map(|j| rot[(start + j) % r])
                .take_while(|&d| !out(d))
                .collect();
            for (j, &d) in incoming.iter().enumerate() {
                want[d] = Some(match j {
                    _ if j + 1 == incoming.len() => Label::SW,
                    0 => Label::SE,
                    _ => Label::S,
                });
            }
        } else if k + 1 < kk {
            for (j, &z) in grp.iter().enumerate() {
                for d in g.rotation(z) {
                    let w = g.head(d);
                    if group[w] < k && j == 0 {
                        want[d] = Some(Label::SW);
                    } else if group[w] < k && j + 1 == grp.len() {
                        want[d] = Some(Label::SE);
                    } else if group[w] == k {
                        let jw = grp.iter().position(|&x| x == w).unwrap_or(usize::MAX);
                        want[d] = Some(if jw == j + 1 { Label::E } else { Label::W });
                    }
                }
            }
        }
    }
    for (a, b, l) in [(v1, v2, Label::E), (v2, v1, Label::W), (v1, vn, Label::S)] {
        if let Some(d) = g.dart_between(a, b) {
            want[d] = Some(l);
        }
    }
    for d in 0..g.dart_count() {
        if group[g.tail(d)] != group[g.head(d)] && out(d) {
            let m = match want[twin(d)] {
                Some(Label::SE) => Some(Label::NW),
                Some(Label::S) => Some(Label::N),
                Some(Label::SW) => Some(Label::NE),
                _ => None,
            };
            if m.is_some() {
                want[d] = m;
            }
        }
    }
    for d in 0..g.dart_count() {
        if ann.label[d] != want[d] {
            rep.push(
                "label",
                format!("{}->{}", g.tail(d), g.head(d)),
                format!(
                    "label {:?} at {}, expected {:?}",
                    ann.label[d],
                    g.tail(d),
                    want[d]
                ),
            );
        }
    }
    rep
}

/// Clockwise label pattern `S* SW? W? NW* N? NE* E? SE?` at every vertex, no
/// vertex with both W and SW or both E and SE, every dart labelled, and
/// intra-edges exactly the edges labelled E at one end and W at the other.
pub fn check_label_grammar(g: &PlanarGraph, ann: &EdgeAnnotation) -> ValidationReport {
    let mut rep = ValidationReport::new();
    for v in 0..g.vertex_count() {
        let loc = format!("v={v}");
        let labels: Vec<Option<Label>> = g.rotation(v).map(|d| ann.label[d]).collect();
        if labels.iter().any(Option::is_none) {
            rep.push("unlabelled", &loc, "dart without a label");
            continue;
        }
        let ls: Vec<Label> = labels.into_iter().flatten().collect();
        let r = ls.len();
        let descents = (0..r)
            .filter(|&i| ls[i].rank() > ls[(i + 1) % r].rank())
            .count();
        if descents > 1 {
            rep.push(
                "grammar-order",
                &loc,
                format!("labels {ls:?} are not in clockwise pattern order"),
            );
        }
        let count = |l: Label| ls.iter().filter(|&&x| x == l).count();
        for l in [Label::SW, Label::W, Label::N, Label::E, Label::SE] {
            if count(l) > 1 {
                rep.push(
                    "grammar-count",
                    &loc,
                    format!("{} edges labelled {l}", count(l)),
                );
            }
        }
        if count(Label::W) > 0 && count(Label::SW) > 0 {
            rep.push("grammar-w-sw", &loc, "both W and SW present");
        }
        if count(Label::E) > 0 && count(Label::SE) > 0 {
            rep.push("grammar-e-se", &loc, "both E and SE present");
        }
    }
    for e in 0..g.edge_count() {
        let ew = matches!(
            (ann.label[2 * e], ann.label[2 * e + 1]),
            (Some(Label::E), Some(Label::W)) | (Some(Label::W), Some(Label::E))
        );
        if ew != ann.is_intra(g, e) {
            rep.push(
                "intra-ew",
                format!("e={e}"),
                "intra-edge status disagrees with E/W labels",
            );
        }
    }
    rep
}

/// Every parent-edge is the first outgoing dart of its tail labelled W, NW or
/// N there, or the last outgoing dart labelled E, NE or N.
pub fn check_parent_lemma(g: &PlanarGraph, ann: &EdgeAnnotation) -> ValidationReport {
    let mut rep = ValidationReport::new();
    for d in ann.parent.iter().flatten().copied() {
        let v = g.tail(d);
        let l = ann.label[d];
        let first = d == ann.first_out[v] && matches!(l, Some(Label::W | Label::NW | Label::N));
        let last = d == ann.last_out[v] && matches!(l, Some(Label::E | Label::NE | Label::N));
        if !first && !last {
            rep.push(
                "parent-lemma",
                format!("{}->{}", v, g.head(d)),
                format!("parent-edge labelled {l:?}"),
            );
        }
    }
    rep
}

pub fn check_barnette(
    g: &PlanarGraph,
    ann: &EdgeAnnotation,
    pair: &SpanningTreePair,
) -> ValidationReport {
    let mut rep = verify_spanning_tree(g, &pair.tree_edges);
    let mut want: Vec<EdgeId> = ann.parent.iter().flatten().map(|&d| d >> 1).collect();
    want.sort_unstable();
    let mut got = pair.tree_edges.clone();
    got.sort_unstable();
    if got != want {
        rep.push("barnette-edges", "T", "tree is not the set of parent-edges");
    }
    let p = degree_profile(g, &pair.tree_edges);
    if p.max > 3 {
        rep.push("barnette-degree", "T", format!("max degree {}", p.max));
    }
    rep
}

pub fn check_constrained(
    g: &PlanarGraph,
    u: Vertex,
    w: Vertex,
    ct: &ConstrainedTree,
) -> ValidationReport {
    let mut rep = verify_spanning_tree(g, &ct.pair.tree_edges);
    let deg = tree_degrees(g, &ct.pair.tree_edges);
    for x in [u, w] {
        if deg[x] != 1 {
            rep.push(
                "constrained-end",
                format!("v={x}"),
                format!("degree {}, expected 1", deg[x]),
            );
        }
    }
    for &x in &ct.face {
        if x != u && x != w && deg[x] > 2 {
            rep.push(
                "constrained-face",
                format!("v={x}"),
                format!("face vertex has degree {}", deg[x]),
            );
        }
    }
    if let Some(x) = (0..g.vertex_count()).find(|&x| deg[x] > 3) {
        rep.push(
            "constrained-degree",
            format!("v={x}"),
            format!("degree {}", deg[x]),
        );
    }
    rep
}

/// H(G) connected with maximum degree 5, and every edge outside H(G) has its
/// dual in H(G*).
pub fn check_h_lemmas(g: &PlanarGraph, h: &HSubgraph, hstar: &HSubgraph) -> ValidationReport {
    let mut rep = ValidationReport::new();
    if !h.is_connected(g) {
        rep.push("h-connected", "H(G)", "H(G) is not connected");
    }
    let p = degree_profile(g, &h.edges());
    if p.max > 5 {
        rep.push("h-degree", "H(G)", format!("max degree {}", p.max));
    }
    for e in 0..g.edge_count() {
        if !h.contains(e) && !hstar.contains(e) {
            let (a, b) = g.endpoints(e);
            rep.push(
                "h-complement",
                format!("e={e} ({a},{b})"),
                "neither e nor e* is an H-edge",
            );
        }
    }
    rep
}

pub fn check_five_tree(
    g: &PlanarGraph,
    pair: &SpanningTreePair,
    h: &HSubgraph,
    hstar: &HSubgraph,
    h0: &HZeroForest,
) -> ValidationReport {
    let mut rep = verify_spanning_tree(g, &pair.tree_edges);
    rep.extend(verify_spanning_cotree(g, &pair.cotree_edges));
    let dt = degree_profile(g, &pair.tree_edges).max;
    let dc = cotree_degree_profile(g, &pair.cotree_edges).max;
    if dt > 5 {
        rep.push("five-degree", "T", format!("max degree {dt}"));
    }
    if dc > 5 {
        rep.push("five-degree", "T*", format!("max degree {dc}"));
    }
    let mut in_tree = vec![false; g.edge_count()];
    for &e in &pair.tree_edges {
        if e < in_tree.len() {
            in_tree[e] = true;
        }
    }
    for &e in &h0.edges {
        if !in_tree[e] {
            rep.push("five-h0", format!("e={e}"), "H0 edge missing from T");
        }
    }
    for &e in &pair.tree_edges {
        if e < in_tree.len() && !h.contains(e) {
            rep.push("five-in-h", format!("e={e}"), "tree edge outside H(G)");
        }
    }
    for (e, &t) in in_tree.iter().enumerate() {
        if !t && !hstar.contains(e) {
            rep.push(
                "five-in-hstar",
                format!("e*={e}"),
                "co-tree edge outside H(G*)",
            );
        }
    }
    rep
}

/// Closed walk that uses each tree edge twice, visit counts that match the
/// walk, and both visit bounds at most 5.
pub fn check_walk(g: &PlanarGraph, tree_edges: &[EdgeId], walk: &Walk) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let vs = &walk.vertices;
    if vs.first() != vs.last() || vs.first() != Some(&g.roots().v1) {
        rep.push("walk-closed", "walk", "walk does not start and end at v1");
    }
    let mut used = vec![0usize; g.edge_count()];
    for w in vs.windows(2) {
        match g.dart_between(w[0], w[1]) {
            Some(d) => used[d >> 1] += 1,
            None => rep.push(
                "walk-step",
                format!("{}->{}", w[0], w[1]),
                "consecutive walk vertices are not adjacent",
            ),
        }
    }
    let mut in_tree = vec![false; g.edge_count()];
    for &e in tree_edges {
        in_tree[e] = true;
    }
    for e in 0..g.edge_count() {
        let want = if in_tree[e] { 2 } else { 0 };
        if used[e] != want {
            rep.push(
                "walk-edge",
                format!("e={e}"),
                format!("traversed {} times, expected {want}", used[e]),
            );
        }
    }
    let mut visits = vec![0usize; g.vertex_count()];
    for &v in &vs[..vs.len().saturating_sub(1)] {
        visits[v] += 1;
    }
    if visits != walk.vertex_visits {
        rep.push(
            "walk-visits",
            "walk",
            "vertex visit counts do not match the walk",
        );
    }
    if walk.max_vertex_visits() > 5 {
        rep.push(
            "walk-vertex-bound",
            "walk",
            format!("a vertex is visited {} times", walk.max_vertex_visits()),
        );
    }
    if walk.max_face_visits() > 5 {
        rep.push(
            "walk-face-bound",
            "walk",
            format!("a face is visited {} times", walk.max_face_visits()),
        );
    }
    rep
}


/// Summary of a full verification run on one graph.
#[derive(Debug, Clone, Serialize)]
pub struct GraphVerdict {
    pub n: usize,
    pub m: usize,
    pub f: usize,
    pub primal_k: usize,
    pub dual_k: usize,
    pub barnette_max_deg: usize,
    pub barnette_cotree_max_deg: usize,
    pub five_max_deg_tree: usize,
    pub five_max_deg_cotree: usize,
    pub h_max_deg: usize,
    pub h0_edges: usize,
    pub walk_max_vertex_visits: usize,
    pub walk_max_face_visits: usize,
    pub report: ValidationReport,
}

/// Runs the whole pipeline on `g` and every checker on its outputs.
pub fn verify_graph(g: &PlanarGraph) -> Result<GraphVerdict, crate::pipeline::PipelineError> {
    use crate::dual_order::verify_label_correspondence;
    use crate::order::{check_face_orientation, validate_canonical_ordering};
    use crate::trees::{barnette_tree, contour};

    let p = crate::pipeline::Pipeline::run(g)?;
    let gs = p.dual.graph();
    let mut rep = validate_canonical_ordering(g, &p.ordering);
    rep.extend(check_annotation(g, &p.ordering, &p.annotation));
    rep.extend(check_face_orientation(g, &p.annotation));
    rep.extend(check_label_grammar(g, &p.annotation));
    rep.extend(check_parent_lemma(g, &p.annotation));
    let mut dual_rep = validate_canonical_ordering(gs, &p.dual_ordering.ordering);
    dual_rep.extend(check_annotation(
        gs,
        &p.dual_ordering.ordering,
        &p.dual_annotation,
    ));
    dual_rep.extend(check_face_orientation(gs, &p.dual_annotation));
    dual_rep.extend(check_label_grammar(gs, &p.dual_annotation));
    for mut f in dual_rep.findings {
        f.location = format!("dual {}", f.location);
        rep.findings.push(f);
    }
    rep.extend(verify_label_correspondence(
        g,
        &p.annotation,
        &p.dual,
        &p.dual_annotation,
    ));
    let bt = barnette_tree(g, &p.annotation).map_err(crate::pipeline::PipelineError::from)?;
    rep.extend(check_barnette(g, &p.annotation, &bt));
    rep.extend(check_h_lemmas(g, &p.h, &p.hstar));
    rep.extend(check_five_tree(g, &p.five, &p.h, &p.hstar, &p.h0));
    let walk = contour(g, &p.five.tree_edges);
    rep.extend(check_walk(g, &p.five.tree_edges, &walk));
    Ok(GraphVerdict {
        n: g.vertex_count(),
        m: g.edge_count(),
        f: g.face_count(),
        primal_k: p.ordering.len(),
        dual_k: p.dual_ordering.dual_groups(),
        barnette_max_deg: bt.max_deg_tree,
        barnette_cotree_max_deg: bt.max_deg_cotree,
        five_max_deg_tree: p.five.max_deg_tree,
        five_max_deg_cotree: p.five.max_deg_cotree,
        h_max_deg: degree_profile(g, &p.h.edges()).max,
        h0_edges: p.h0.edges.len(),
        walk_max_vertex_visits: walk.max_vertex_visits(),
        walk_max_face_visits: walk.max_face_visits(),
        report: rep,
    })
}
