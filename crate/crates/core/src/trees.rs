//! Spanning trees read from a canonical ordering: the parent-edge 3-tree, its
//! constrained variant, the H-edge subgraphs, and the 5-tree / 5-co-tree pair.

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::{is_three_connected, DEFAULT_BRUTE_BOUND};
use crate::embedding::{edge_of, twin, Dart, EdgeId, FaceId, PlanarGraph, Vertex};
use crate::order::{
    compute_canonical_ordering, enumerate_vertices, label_edges, EdgeAnnotation, Label,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("edge set is not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error("vertices {0} and {1} do not share a face")]
    NotOnCommonFace(Vertex, Vertex),
    #[error("vertices {0} and {1} are already adjacent")]
    AlreadyAdjacent(Vertex, Vertex),
    #[error("the graph with the added edge is not 3-connected")]
    AugmentationNotThreeConnected,
    #[error("walk needs tree and co-tree degree at most 5, got {tree} and {cotree}")]
    PreconditionDegree { tree: usize, cotree: usize },
}

/// A spanning tree `T` of `G` and its co-tree `T*` in `G*`. Dual edge ids
/// coincide with primal edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTreePair {
    pub tree_edges: Vec<EdgeId>,
    pub cotree_edges: Vec<EdgeId>,
    pub max_deg_tree: usize,
    pub max_deg_cotree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub tree: Vec<[usize; 2]>,
    pub cotree: Vec<[usize; 2]>,
    pub max_deg_tree: usize,
    pub max_deg_cotree: usize,
}

impl SpanningTreePair {
    /// Pairs `tree_edges` with its co-tree, checking both span.
    pub fn from_tree(g: &PlanarGraph, mut tree_edges: Vec<EdgeId>) -> Result<Self, TreeError> {
        tree_edges.sort_unstable();
        let cotree_edges = co_tree(g, &tree_edges)?;
        Ok(SpanningTreePair {
            max_deg_tree: max_degree(&tree_degrees(g, &tree_edges)),
            max_deg_cotree: max_degree(&cotree_degrees(g, &cotree_edges)),
            tree_edges,
            cotree_edges,
        })
    }

    pub fn to_json(&self, g: &PlanarGraph) -> TreeJson {
        let pair = |e: EdgeId, (a, b): (usize, usize)| {
            let _ = e;
            [a.min(b), a.max(b)]
        };
        TreeJson {
            tree: self
                .tree_edges
                .iter()
                .map(|&e| pair(e, g.endpoints(e)))
                .collect(),
            cotree: self
                .cotree_edges
                .iter()
                .map(|&e| pair(e, (g.left_face(2 * e), g.right_face(2 * e))))
                .collect(),
            max_deg_tree: self.max_deg_tree,
            max_deg_cotree: self.max_deg_cotree,
        }
    }
}

pub fn tree_degrees(g: &PlanarGraph, edges: &[EdgeId]) -> Vec<usize> {
    let mut deg = vec![0; g.vertex_count()];
    for &e in edges {
        let (a, b) = g.endpoints(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    deg
}

/// Degrees in `G*` of the dual edges `edges`.
pub fn cotree_degrees(g: &PlanarGraph, edges: &[EdgeId]) -> Vec<usize> {
    let mut deg = vec![0; g.face_count()];
    for &e in edges {
        deg[g.left_face(2 * e)] += 1;
        deg[g.right_face(2 * e)] += 1;
    }
    deg
}

fn max_degree(deg: &[usize]) -> usize {
    deg.iter().copied().max().unwrap_or(0)
}

/// Duals of the non-tree edges, checked to form a spanning tree of `G*`.
pub fn co_tree(g: &PlanarGraph, tree_edges: &[EdgeId]) -> Result<Vec<EdgeId>, TreeError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if tree_edges.len() + 1 != n {
        return Err(TreeError::NotASpanningTree(format!(
            "{} edges for {n} vertices",
            tree_edges.len()
        )));
    }
    let mut in_tree = vec![false; m];
    let mut uf = UnionFind::<usize>::new(n);
    for &e in tree_edges {
        if e >= m || std::mem::replace(&mut in_tree[e], true) {
            return Err(TreeError::NotASpanningTree(format!(
                "edge {e} repeated or out of range"
            )));
        }
        let (a, b) = g.endpoints(e);
        if !uf.union(a, b) {
            return Err(TreeError::NotASpanningTree(format!(
                "edge {e} closes a cycle"
            )));
        }
    }
    let cotree: Vec<EdgeId> = (0..m).filter(|&e| !in_tree[e]).collect();
    let mut duf = UnionFind::<usize>::new(g.face_count());
    for &e in &cotree {
        if !duf.union(g.left_face(2 * e), g.right_face(2 * e)) {
            return Err(TreeError::InternalInvariantBroken(format!(
                "dual edge {e} closes a cycle in the co-tree"
            )));
        }
    }
    Ok(cotree)
}

/// Parent-edge tree.
pub fn barnette_tree(g: &PlanarGraph, ann: &EdgeAnnotation) -> Result<SpanningTreePair, TreeError> {
    let edges: Vec<EdgeId> = ann.parent.iter().flatten().map(|&d| edge_of(d)).collect();
    SpanningTreePair::from_tree(g, edges)
}

/// Parent-edge tree of `g + (u, w)` ordered with `v1 = u`, `vn = w`, and the
/// face of `g` that held the new edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedTree {
    pub pair: SpanningTreePair,
    pub face: Vec<Vertex>,
}

/// Spanning 3-tree of `g` with `deg(u) = deg(w) = 1` and degree at most 2 at
/// every other vertex of a face containing both `u` and `w`.
pub fn constrained_barnette(
    g: &PlanarGraph,
    u: Vertex,
    w: Vertex,
) -> Result<ConstrainedTree, TreeError> {
    if g.dart_between(u, w).is_some() {
        return Err(TreeError::AlreadyAdjacent(u, w));
    }
    let (f, du, dw) = g
        .rotation(u)
        .find_map(|d| {
            let f = g.face_of(d);
            let dw = g
                .faces()
                .darts(f)
                .iter()
                .copied()
                .find(|&x| g.tail(x) == w)?;
            Some((f, d, dw))
        })
        .ok_or(TreeError::NotOnCommonFace(u, w))?;

    // The dart entering the corner at each endpoint inside face f.
    let before = |d: Dart| g.head(g.cw_prev(d));
    let mut rot = g.rotations();
    let insert_after = |list: &mut Vec<Vertex>, after: Vertex, x: Vertex| {
        let p = list
            .iter()
            .position(|&y| y == after)
            .expect("neighbour in rotation");
        list.insert(p + 1, x);
    };
    insert_after(&mut rot[u], before(du), w);
    insert_after(&mut rot[w], before(dw), u);
    let plus = PlanarGraph::build_rooted(&rot, u, w)
        .map_err(|_| TreeError::AugmentationNotThreeConnected)?;
    if plus.vertex_count() <= DEFAULT_BRUTE_BOUND
        && !is_three_connected(&plus, DEFAULT_BRUTE_BOUND, false).unwrap_or(false)
    {
        return Err(TreeError::AugmentationNotThreeConnected);
    }
    let co =
        compute_canonical_ordering(&plus).map_err(|_| TreeError::AugmentationNotThreeConnected)?;
    let ann = label_edges(&plus, &co, &enumerate_vertices(&plus, &co));
    let mut edges = Vec::new();
    for d in ann.parent.iter().flatten() {
        let (a, b) = (plus.tail(*d), plus.head(*d));
        if (a, b) == (u, w) || (a, b) == (w, u) {
            return Err(TreeError::InternalInvariantBroken(
                "the added edge became a parent-edge".into(),
            ));
        }
        edges.push(edge_of(
            g.dart_between(a, b).expect("edge of the original graph"),
        ));
    }
    let face = g.faces().darts(f).iter().map(|&d| g.tail(d)).collect();
    Ok(ConstrainedTree {
        pair: SpanningTreePair::from_tree(g, edges)?,
        face,
    })
}

pub const H1: u8 = 1;
pub const H2: u8 = 2;
pub const H3: u8 = 4;
pub const H4: u8 = 8;

/// H-edges with the rules each one satisfies, as a bit set per edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSubgraph {
    pub tags: Vec<u8>,
}

impl HSubgraph {
    pub fn contains(&self, e: EdgeId) -> bool {
        self.tags[e] != 0
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        (0..self.tags.len())
            .filter(|&e| self.tags[e] != 0)
            .collect()
    }

    pub fn tag_names(&self, e: EdgeId) -> Vec<&'static str> {
        [(H1, "H1"), (H2, "H2"), (H3, "H3"), (H4, "H4")]
            .into_iter()
            .filter(|&(b, _)| self.tags[e] & b != 0)
            .map(|(_, s)| s)
            .collect()
    }

    pub fn is_connected(&self, g: &PlanarGraph) -> bool {
        let mut uf = UnionFind::<usize>::new(g.vertex_count());
        let mut parts = g.vertex_count();
        for e in self.edges() {
            let (a, b) = g.endpoints(e);
            if uf.union(a, b) {
                parts -= 1;
            }
        }
        parts <= 1
    }
}

/// Edges satisfying (H1) intra-edge, (H2) NNW-edge of its tail, (H3) NNE-edge
/// of its tail, or (H4) parent-edge of its head and N-edge of its tail.
pub fn h_edges(g: &PlanarGraph, ann: &EdgeAnnotation) -> HSubgraph {
    let mut tags = vec![0u8; g.edge_count()];
    for (e, t) in tags.iter_mut().enumerate() {
        if ann.is_intra(g, e) {
            *t |= H1;
        }
        let d = ann.directed(g, e);
        if ann.label[d] == Some(Label::N) && ann.parent[g.head(d)] == Some(d) {
            *t |= H4;
        }
    }
    for v in 0..g.vertex_count() {
        if let Some(d) = ann.nnw(g, v) {
            if ann.is_out(g, d) {
                tags[edge_of(d)] |= H2;
            }
        }
        if let Some(d) = ann.nne(g, v) {
            if ann.is_out(g, d) {
                tags[edge_of(d)] |= H3;
            }
        }
    }
    HSubgraph { tags }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HZeroForest {
    pub edges: Vec<EdgeId>,
}

/// `H0 = {e in H(G) : e* not in H(G*)}`, checked to be acyclic.
pub fn h_zero(g: &PlanarGraph, h: &HSubgraph, hstar: &HSubgraph) -> Result<HZeroForest, TreeError> {
    let edges: Vec<EdgeId> = (0..g.edge_count())
        .filter(|&e| h.contains(e) && !hstar.contains(e))
        .collect();
    let mut uf = UnionFind::<usize>::new(g.vertex_count());
    for &e in &edges {
        let (a, b) = g.endpoints(e);
        if !uf.union(a, b) {
            return Err(TreeError::InternalInvariantBroken(format!(
                "H0 edge {e} closes a cycle"
            )));
        }
    }
    Ok(HZeroForest { edges })
}

/// Minimum spanning tree with weight 0 on `H0`, 1 on the rest of `H(G)`, and
/// all other edges excluded; Prim from `v1` with one stack per weight.
pub fn five_tree_from(
    g: &PlanarGraph,
    h: &HSubgraph,
    h0: &HZeroForest,
) -> Result<SpanningTreePair, TreeError> {
    let n = g.vertex_count();
    let mut zero = vec![false; g.edge_count()];
    for &e in &h0.edges {
        zero[e] = true;
    }
    let mut in_tree = vec![false; n];
    let mut buckets: [Vec<Dart>; 2] = [Vec::new(), Vec::new()];
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    let grow = |v: Vertex, in_tree: &mut Vec<bool>, buckets: &mut [Vec<Dart>; 2]| {
        in_tree[v] = true;
        for d in g.rotation(v) {
            let e = edge_of(d);
            if h.contains(e) && !in_tree[g.head(d)] {
                buckets[usize::from(!zero[e])].push(d);
            }
        }
    };
    grow(g.roots().v1, &mut in_tree, &mut buckets);
    while let Some(d) = buckets[0].pop().or_else(|| buckets[1].pop()) {
        let v = g.head(d);
        if in_tree[v] {
            continue;
        }
        tree.push(edge_of(d));
        grow(v, &mut in_tree, &mut buckets);
    }
    if tree.len() + 1 != n {
        return Err(TreeError::InternalInvariantBroken(
            "H(G) is not connected".into(),
        ));
    }
    SpanningTreePair::from_tree(g, tree)
}

/// Closed walk around a spanning tree, turning clockwise at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    /// Vertex sequence; first and last entries are both `v1`.
    pub vertices: Vec<Vertex>,
    pub vertex_visits: Vec<usize>,
    /// Maximal cyclic runs of consecutive corners of each face along the walk.
    pub face_visits: Vec<usize>,
}

impl Walk {
    pub fn max_vertex_visits(&self) -> usize {
        max_degree(&self.vertex_visits)
    }

    pub fn max_face_visits(&self) -> usize {
        max_degree(&self.face_visits)
    }
}

pub fn tree_to_walk(g: &PlanarGraph, tree_edges: &[EdgeId]) -> Result<Walk, TreeError> {
    let pair = SpanningTreePair::from_tree(g, tree_edges.to_vec())?;
    if pair.max_deg_tree > 5 || pair.max_deg_cotree > 5 {
        return Err(TreeError::PreconditionDegree {
            tree: pair.max_deg_tree,
            cotree: pair.max_deg_cotree,
        });
    }
    Ok(contour(g, tree_edges))
}

/// The walk itself, without degree preconditions.
pub fn contour(g: &PlanarGraph, tree_edges: &[EdgeId]) -> Walk {
    let n = g.vertex_count();
    let mut in_tree = vec![false; g.edge_count()];
    for &e in tree_edges {
        in_tree[e] = true;
    }
    let v1 = g.roots().v1;
    let mut vertices = Vec::with_capacity(2 * n);
    let mut vertex_visits = vec![0; n];
    let mut corners: Vec<FaceId> = Vec::with_capacity(2 * g.edge_count());
    if let Some(start) = g.rotation(v1).find(|&d| in_tree[edge_of(d)]) {
        let mut d = start;
        loop {
            vertices.push(g.tail(d));
            vertex_visits[g.tail(d)] += 1;
            let mut x = twin(d);
            loop {
                let y = g.cw_next(x);
                corners.push(g.face_of(y));
                if in_tree[edge_of(y)] {
                    d = y;
                    break;
                }
                x = y;
            }
            if d == start {
                break;
            }
        }
    } else {
        vertex_visits[v1] = 1;
    }
    vertices.push(v1);
    let mut face_visits = vec![0; g.face_count()];
    let len = corners.len();
    for i in 0..len {
        if corners[i] != corners[(i + len - 1) % len] {
            face_visits[corners[i]] += 1;
        }
    }
    Walk {
        vertices,
        vertex_visits,
        face_visits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::dual;
    use crate::dual_order::dual_canonical_ordering;
    use crate::generate;

    fn annotate(g: &PlanarGraph) -> EdgeAnnotation {
        let co = compute_canonical_ordering(g).unwrap();
        label_edges(g, &co, &enumerate_vertices(g, &co))
    }

    fn k4_path() -> (PlanarGraph, Vec<EdgeId>) {
        let g = generate::tetrahedron();
        let edges = [(0, 1), (1, 3), (3, 2)]
            .iter()
            .map(|&(a, b)| edge_of(g.dart_between(a, b).unwrap()))
            .collect();
        (g, edges)
    }

    #[test]
    fn k4_barnette_is_path() {
        let g = generate::tetrahedron();
        let t = barnette_tree(&g, &annotate(&g)).unwrap();
        let (_, path) = k4_path();
        let mut path = path;
        path.sort_unstable();
        assert_eq!(t.tree_edges, path);
        assert_eq!(t.max_deg_tree, 2);
    }

    #[test]
    fn k4_path_cotree() {
        let (g, path) = k4_path();
        let ct = co_tree(&g, &path).unwrap();
        assert_eq!(ct.len(), 3);
        assert_eq!(ct.len(), g.face_count() - 1);
        let mut rest: Vec<_> = (0..6).filter(|e| !path.contains(e)).collect();
        rest.sort_unstable();
        assert_eq!(ct, rest);
    }

    #[test]
    fn co_tree_rejects_cycles() {
        let g = generate::tetrahedron();
        let tri: Vec<_> = [(0, 1), (1, 2), (2, 0)]
            .iter()
            .map(|&(a, b)| edge_of(g.dart_between(a, b).unwrap()))
            .collect();
        assert!(matches!(
            co_tree(&g, &tri),
            Err(TreeError::NotASpanningTree(_))
        ));
    }

    #[test]
    fn k4_walk() {
        let (g, path) = k4_path();
        let w = tree_to_walk(&g, &path).unwrap();
        assert_eq!(w.vertices.len(), 7);
        assert_eq!(w.vertices.first(), w.vertices.last());
        assert!(w.vertex_visits.iter().all(|&c| c <= 2));
        let ct = co_tree(&g, &path).unwrap();
        assert_eq!(w.face_visits, cotree_degrees(&g, &ct));
    }

    #[test]
    fn cube_constrained() {
        let g = generate::cube();
        // 0 and 2 are opposite corners of the outer square.
        let ct = constrained_barnette(&g, 0, 2).unwrap();
        let deg = tree_degrees(&g, &ct.pair.tree_edges);
        assert_eq!((deg[0], deg[2]), (1, 1));
        assert!(ct
            .face
            .iter()
            .filter(|&&x| x != 0 && x != 2)
            .all(|&x| deg[x] <= 2));
        assert!(ct.pair.max_deg_tree <= 3);
    }

    #[test]
    fn constrained_errors() {
        let g = generate::cube();
        assert_eq!(
            constrained_barnette(&g, 0, 1),
            Err(TreeError::AlreadyAdjacent(0, 1))
        );
        // 0 is on the outer square, 6 on the inner square opposite to it.
        assert_eq!(
            constrained_barnette(&g, 0, 6),
            Err(TreeError::NotOnCommonFace(0, 6))
        );
    }

    #[test]
    fn k4_h_edges_by_rule() {
        let g = generate::tetrahedron();
        let ann = annotate(&g);
        let h = h_edges(&g, &ann);
        let tag = |a: Vertex, b: Vertex| h.tags[edge_of(g.dart_between(a, b).unwrap())];
        // v1 -> v2 is the only intra-edge.
        assert_eq!(tag(0, 1) & H1, H1);
        // At b = 1: NW-edges 1->3 and 1->2 clockwise, last is 1->2.
        assert_eq!(tag(1, 2) & H2, H2);
        assert_eq!(tag(1, 3) & H2, 0);
        // At a = 0: NE-edge 0->3 is the first NE.
        assert_eq!(tag(0, 3) & H3, H3);
        // c = 3 -> d = 2 is NE at c and the parent-edge of d, but not an N-edge.
        assert_eq!(tag(3, 2) & (H3 | H4), H3);
        assert_eq!(tag(2, 0), 0);
        assert!(h.is_connected(&g));
    }

    #[test]
    fn five_tree_on_small_graphs() {
        for g in [
            generate::tetrahedron(),
            generate::cube(),
            generate::dodecahedron(),
            generate::wheel(8),
        ] {
            let co = compute_canonical_ordering(&g).unwrap();
            let ann = label_edges(&g, &co, &enumerate_vertices(&g, &co));
            let dg = dual(&g);
            let dco = dual_canonical_ordering(&g, &co, &dg).unwrap();
            let gs = dg.graph();
            let dann = label_edges(gs, &dco.ordering, &enumerate_vertices(gs, &dco.ordering));
            let h = h_edges(&g, &ann);
            let hs = h_edges(gs, &dann);
            let h0 = h_zero(&g, &h, &hs).unwrap();
            let t = five_tree_from(&g, &h, &h0).unwrap();
            assert!(t.max_deg_tree <= 5 && t.max_deg_cotree <= 5);
            assert!(h0.edges.iter().all(|e| t.tree_edges.contains(e)));
            assert!(t.tree_edges.iter().all(|&e| h.contains(e)));
            assert!(t.cotree_edges.iter().all(|&e| hs.contains(e)));
        }
    }
}
