//! Geometric dual of an embedded graph.

use crate::embedding::{twin, Dart, EdgeId, FaceId, PlanarGraph, Roots};

/// The dual `G*` of a rooted embedded graph.
///
/// Dual vertex `f` is face `f` of the primal. The dual edge of primal edge `e`
/// has the same id `e`, and dual dart `d` runs from `left_face(d)` to
/// `right_face(d)`, i.e. it crosses primal dart `d` from left to right. The dual
/// rotation around `f*` is clockwise, and its outer face is the dual face of
/// `v1`, rooted at `(f1*, f2*, f_phi*)`: the primal outer face, the interior
/// face at `(v1, vn)` and the interior face at `(v1, v2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    graph: PlanarGraph,
}

impl DualGraph {
    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }

    pub fn into_graph(self) -> PlanarGraph {
        self.graph
    }

    /// Dual edge of primal edge `e`.
    #[inline]
    pub fn dual_edge(&self, e: EdgeId) -> EdgeId {
        e
    }

    /// Primal edge of dual edge `e_star`.
    #[inline]
    pub fn primal_edge(&self, e_star: EdgeId) -> EdgeId {
        e_star
    }

    /// Dual dart crossing primal dart `d` from its left face to its right face.
    #[inline]
    pub fn dual_dart(&self, d: Dart) -> Dart {
        d
    }
}

/// Builds `G*` with the dual rotation induced by walking the faces of `g`.
pub fn dual(g: &PlanarGraph) -> DualGraph {
    let nd = g.dart_count();
    let head: Vec<FaceId> = (0..nd).map(|d| g.right_face(d)).collect();
    // Clockwise around f* is the reverse of the counter-clockwise face walk.
    let cw_next: Vec<Dart> = (0..nd).map(|d| twin(g.cw_prev(d))).collect();
    let first: Vec<Dart> = g.faces().iter().map(|darts| darts[0]).collect();

    let root = g.root_dart();
    let Roots { v1, v2, .. } = g.roots();
    let f1 = g.outer_face();
    let f2 = g.right_face(root);
    let v1v2 = g.dart_between(v1, v2).expect("v2 is adjacent to v1");
    let f_phi = g.left_face(v1v2);

    // The dual face around v1 contains the dual dart of vn -> v1.
    let outer_dart = twin(root);
    let graph = PlanarGraph::from_parts(
        g.face_count(),
        head,
        cw_next,
        first,
        outer_dart,
        Roots {
            v1: f1,
            v2: f2,
            vn: f_phi,
        },
    );
    DualGraph { graph }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cube, tetrahedron};

    #[test]
    fn tetrahedron_is_self_dual_by_counts() {
        let g = tetrahedron();
        let d = dual(&g);
        let gs = d.graph();
        assert_eq!(gs.vertex_count(), 4);
        assert_eq!(gs.edge_count(), 6);
        assert!((0..4).all(|v| gs.degree(v) == 3));
    }

    #[test]
    fn cube_dual_is_octahedron() {
        let g = cube();
        let d = dual(&g);
        let gs = d.graph();
        assert_eq!(gs.vertex_count(), 6);
        assert_eq!(gs.face_count(), 8);
        // Face-adjacency oracle: two faces are adjacent iff they share an edge.
        for f in 0..g.face_count() {
            let mut nbrs: Vec<_> = g
                .faces()
                .darts(f)
                .iter()
                .map(|&x| g.right_face(x))
                .collect();
            nbrs.sort_unstable();
            let mut got: Vec<_> = gs.neighbours(f).collect();
            got.sort_unstable();
            assert_eq!(nbrs, got);
            assert_eq!(got.len(), 4);
        }
    }

    #[test]
    fn dual_dart_crosses_left_to_right() {
        let g = cube();
        let d = dual(&g);
        let gs = d.graph();
        for x in 0..g.dart_count() {
            assert_eq!(gs.tail(x), g.left_face(x));
            assert_eq!(gs.head(x), g.right_face(x));
        }
        let degsum: usize = (0..gs.vertex_count()).map(|v| gs.degree(v)).sum();
        assert_eq!(degsum, 2 * g.edge_count());
    }

    #[test]
    fn double_dual_faces_match_vertices() {
        let g = cube();
        let d = dual(&g);
        // Each face of G* is the set of darts entering one primal vertex.
        let gs = d.graph();
        let mut hit = vec![0; g.vertex_count()];
        for f in 0..gs.face_count() {
            let darts = gs.faces().darts(f);
            let v = g.head(darts[0]);
            assert!(darts.iter().all(|&x| g.head(x) == v));
            assert_eq!(darts.len(), g.degree(v));
            hit[v] += 1;
        }
        assert!(hit.iter().all(|&h| h == 1));
        let dd = dual(gs);
        let gg = dd.graph();
        assert_eq!(gg.edge_count(), g.edge_count());
        assert_eq!(gg.vertex_count(), g.vertex_count());
        assert_eq!(gg.face_count(), g.face_count());
    }

    #[test]
    fn dual_roots_sit_on_the_dual_outer_face() {
        for g in [tetrahedron(), cube(), crate::generate::dodecahedron()] {
            let d = dual(&g);
            d.graph().check_roots().unwrap();
            let Roots { v1, v2, vn } = d.graph().roots();
            assert_eq!(v1, g.outer_face());
            assert_ne!(v2, vn);
        }
    }
}
