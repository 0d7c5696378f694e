//! Half-edge (dart) representation of an embedded planar graph.
//!
//! Edge `e` owns the two darts `2e` and `2e + 1`; the twin of dart `d` is
//! `d ^ 1`. Around every vertex the darts form a cycle under `cw_next`
//! (clockwise rotation). Faces are traced with `face_next(d) = cw_next(twin(d))`,
//! which walks each face with the face on the left of every dart. Bounded faces
//! are therefore traversed counter-clockwise and the outer face clockwise.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;
pub type Dart = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> EdgeId {
    d >> 1
}

/// The rooted 2-path `vn - v1 - v2` on the outer face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Roots {
    pub v1: Vertex,
    pub v2: Vertex,
    pub vn: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex id {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("adjacency is not symmetric: {0} lists {1} but {1} does not list {0}")]
    NonSymmetricAdjacency(Vertex, Vertex),
    #[error("self-loop or parallel edge at vertex {0}")]
    ParallelOrLoopEdge(Vertex),
    #[error("face trace violates Euler's formula: n={n}, m={m}, f={f} (expected f = m - n + 2)")]
    EulerViolation { n: usize, m: usize, f: usize },
    #[error("no face matches the outer-face witness")]
    OuterFaceNotFound,
    #[error("bad roots: {0}")]
    BadRoots(String),
}

/// Faces of an embedding as dart cycles, plus the left face of every dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    offsets: Vec<usize>,
    darts: Vec<Dart>,
    face_of: Vec<FaceId>,
}

impl FaceSet {
    /// Traces faces in order of their smallest dart id, so face ids are
    /// deterministic for a given dart structure.
    fn trace(cw_next: &[Dart]) -> Self {
        let nd = cw_next.len();
        let mut face_of = vec![usize::MAX; nd];
        let mut offsets = vec![0];
        let mut darts = Vec::with_capacity(nd);
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let f = offsets.len() - 1;
            let mut d = start;
            loop {
                face_of[d] = f;
                darts.push(d);
                d = cw_next[twin(d)];
                if d == start {
                    break;
                }
            }
            offsets.push(darts.len());
        }
        FaceSet {
            offsets,
            darts,
            face_of,
        }
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Darts of face `f` in traversal order (face on the left).
    pub fn darts(&self, f: FaceId) -> &[Dart] {
        &self.darts[self.offsets[f]..self.offsets[f + 1]]
    }

    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[d]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Dart]> + '_ {
        (0..self.len()).map(move |f| self.darts(f))
    }
}

/// Wire format for embedded graphs. Rotations are clockwise, `outer` lists the
/// outer face counter-clockwise (so `outer[0] = v1`, `outer[1] = v2` and the
/// last entry is `vn` when exported), and `roots` is `[v1, v2, vn]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub rotations: Vec<Vec<Vertex>>,
    pub outer: Vec<Vertex>,
    pub roots: [Vertex; 3],
}

/// An embedded, connected, simple planar graph with a designated outer face
/// and root path `vn - v1 - v2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarGraph {
    n: usize,
    head: Vec<Vertex>,
    cw_next: Vec<Dart>,
    cw_prev: Vec<Dart>,
    first: Vec<Dart>,
    faces: FaceSet,
    outer: FaceId,
    roots: Roots,
}

struct Embedding {
    n: usize,
    head: Vec<Vertex>,
    cw_next: Vec<Dart>,
    cw_prev: Vec<Dart>,
    first: Vec<Dart>,
    faces: FaceSet,
}

impl Embedding {
    fn from_rotations(rotations: &[Vec<Vertex>]) -> Result<Self, GraphError> {
        let n = rotations.len();
        for (u, rot) in rotations.iter().enumerate() {
            let mut seen = rot.clone();
            seen.sort_unstable();
            for w in seen.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::ParallelOrLoopEdge(u));
                }
            }
            for &v in rot {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange(v));
                }
                if v == u {
                    return Err(GraphError::ParallelOrLoopEdge(u));
                }
            }
        }

        // Edge ids follow the first appearance of (u, v) with u < v.
        let mut index: HashMap<(Vertex, Vertex), Dart> = HashMap::new();
        let mut head = Vec::new();
        for (u, rot) in rotations.iter().enumerate() {
            for &v in rot {
                if u < v {
                    let d = head.len();
                    head.push(v);
                    head.push(u);
                    index.insert((u, v), d);
                    index.insert((v, u), d + 1);
                }
            }
        }

        let nd = head.len();
        let mut placed = vec![false; nd];
        let mut cw_next = vec![0; nd];
        let mut cw_prev = vec![0; nd];
        let mut first = vec![usize::MAX; n];
        for (u, rot) in rotations.iter().enumerate() {
            let darts = rot
                .iter()
                .map(|&v| {
                    index
                        .get(&(u, v))
                        .copied()
                        .ok_or(GraphError::NonSymmetricAdjacency(v, u))
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (i, &d) in darts.iter().enumerate() {
                placed[d] = true;
                let nxt = darts[(i + 1) % darts.len()];
                cw_next[d] = nxt;
                cw_prev[nxt] = d;
            }
            if let Some(&d) = darts.first() {
                first[u] = d;
            }
        }
        if let Some(d) = placed.iter().position(|p| !p) {
            return Err(GraphError::NonSymmetricAdjacency(head[twin(d)], head[d]));
        }

        let faces = FaceSet::trace(&cw_next);
        let m = nd / 2;
        if n + faces.len() != m + 2 {
            return Err(GraphError::EulerViolation {
                n,
                m,
                f: faces.len(),
            });
        }
        Ok(Embedding {
            n,
            head,
            cw_next,
            cw_prev,
            first,
            faces,
        })
    }

    fn into_graph(self, outer: FaceId, roots: Roots) -> Result<PlanarGraph, GraphError> {
        let g = PlanarGraph {
            n: self.n,
            head: self.head,
            cw_next: self.cw_next,
            cw_prev: self.cw_prev,
            first: self.first,
            faces: self.faces,
            outer,
            roots,
        };
        g.check_roots()?;
        Ok(g)
    }
}

impl PlanarGraph {
    /// Builds and validates a graph from clockwise rotation lists, an outer-face
    /// witness listed counter-clockwise (any cyclic shift), and the roots.
    pub fn build(
        rotations: &[Vec<Vertex>],
        outer_witness: &[Vertex],
        roots: Roots,
    ) -> Result<Self, GraphError> {
        let emb = Embedding::from_rotations(rotations)?;
        let outer = find_witness_face(&emb, outer_witness).ok_or(GraphError::OuterFaceNotFound)?;
        emb.into_graph(outer, roots)
    }

    /// Builds a graph whose outer face is the face to the left of the dart
    /// `v1 -> vn`; `v2` is the vertex preceding `v1` on that face.
    pub fn build_rooted(
        rotations: &[Vec<Vertex>],
        v1: Vertex,
        vn: Vertex,
    ) -> Result<Self, GraphError> {
        let emb = Embedding::from_rotations(rotations)?;
        if v1 >= emb.n || vn >= emb.n {
            return Err(GraphError::VertexOutOfRange(v1.max(vn)));
        }
        let d = rotation_of(&emb.cw_next, emb.first[v1])
            .find(|&d| emb.head[d] == vn)
            .ok_or_else(|| GraphError::BadRoots(format!("{vn} is not a neighbour of {v1}")))?;
        let outer = emb.faces.face_of(d);
        let into_v1 = twin(emb.cw_prev[d]);
        let v2 = emb.head[twin(into_v1)];
        emb.into_graph(outer, Roots { v1, v2, vn })
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        if json.rotations.len() != json.n {
            return Err(GraphError::VertexOutOfRange(
                json.rotations.len().max(json.n),
            ));
        }
        let [v1, v2, vn] = json.roots;
        PlanarGraph::build(&json.rotations, &json.outer, Roots { v1, v2, vn })
    }

    pub fn to_json(&self) -> GraphJson {
        let r = self.roots;
        GraphJson {
            n: self.n,
            rotations: self.rotations(),
            outer: self.outer_boundary_ccw(),
            roots: [r.v1, r.v2, r.vn],
        }
    }

    pub(crate) fn check_roots(&self) -> Result<(), GraphError> {
        let Roots { v1, v2, vn } = self.roots;
        if v1 >= self.n || v2 >= self.n || vn >= self.n {
            return Err(GraphError::VertexOutOfRange(v1.max(v2).max(vn)));
        }
        if v1 == v2 || v1 == vn || v2 == vn {
            return Err(GraphError::BadRoots("roots must be distinct".into()));
        }
        let outer = self.outer;
        let ok = self.rotation(v1).any(|d| {
            self.head[d] == vn
                && self.face_of(d) == outer
                && self.tail(twin(self.cw_prev[d])) == v2
                && self.face_of(twin(self.cw_prev[d])) == outer
        });
        if ok {
            Ok(())
        } else {
            Err(GraphError::BadRoots(format!(
                "expected {v2} and {vn} to be the counter-clockwise and clockwise outer-face neighbours of {v1}"
            )))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.head.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.head.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn roots(&self) -> Roots {
        self.roots
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    #[inline]
    pub fn head(&self, d: Dart) -> Vertex {
        self.head[d]
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> Vertex {
        self.head[twin(d)]
    }

    #[inline]
    pub fn cw_next(&self, d: Dart) -> Dart {
        self.cw_next[d]
    }

    #[inline]
    pub fn cw_prev(&self, d: Dart) -> Dart {
        self.cw_prev[d]
    }

    /// Next dart along the left face of `d`.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        self.cw_next[twin(d)]
    }

    #[inline]
    pub fn face_of(&self, d: Dart) -> FaceId {
        self.faces.face_of(d)
    }

    #[inline]
    pub fn left_face(&self, d: Dart) -> FaceId {
        self.faces.face_of(d)
    }

    #[inline]
    pub fn right_face(&self, d: Dart) -> FaceId {
        self.faces.face_of(twin(d))
    }

    /// Endpoints of edge `e` as `(tail(2e), head(2e))`.
    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        (self.head[2 * e + 1], self.head[2 * e])
    }

    pub fn first_dart(&self, v: Vertex) -> Dart {
        self.first[v]
    }

    /// Darts leaving `v` in clockwise order, starting at the first listed one.
    pub fn rotation(&self, v: Vertex) -> impl Iterator<Item = Dart> + '_ {
        rotation_of(&self.cw_next, self.first[v])
    }

    /// Darts leaving `v` in clockwise order starting at `start`.
    pub fn rotation_from(&self, start: Dart) -> impl Iterator<Item = Dart> + '_ {
        rotation_of(&self.cw_next, start)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation(v).count()
    }

    pub fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.rotation(v).map(move |d| self.head[d])
    }

    pub fn dart_between(&self, u: Vertex, v: Vertex) -> Option<Dart> {
        self.rotation(u).find(|&d| self.head[d] == v)
    }

    /// Clockwise rotation lists, each starting at the vertex's first dart.
    pub fn rotations(&self) -> Vec<Vec<Vertex>> {
        (0..self.n).map(|v| self.neighbours(v).collect()).collect()
    }

    /// Dart `v1 -> vn`, which lies on the outer face.
    pub fn root_dart(&self) -> Dart {
        let Roots { v1, vn, .. } = self.roots;
        self.rotation(v1)
            .find(|&d| self.head[d] == vn && self.face_of(d) == self.outer)
            .expect("roots are validated at construction")
    }

    /// Outer face vertices counter-clockwise, starting `v1, v2, ..., vn`.
    pub fn outer_boundary_ccw(&self) -> Vec<Vertex> {
        let start = self.root_dart();
        let mut tails = Vec::new();
        let mut d = start;
        loop {
            tails.push(self.tail(d));
            d = self.face_next(d);
            if d == start {
                break;
            }
        }
        let mut out = vec![tails[0]];
        out.extend(tails[1..].iter().rev());
        out
    }

    /// Edge list `(u, v)` with `u < v` indexed by edge id.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.edge_count())
            .map(|e| {
                let (a, b) = self.endpoints(e);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub(crate) fn from_parts(
        n: usize,
        head: Vec<Vertex>,
        cw_next: Vec<Dart>,
        first: Vec<Dart>,
        outer_dart: Dart,
        roots: Roots,
    ) -> Self {
        let mut cw_prev = vec![0; cw_next.len()];
        for (d, &nx) in cw_next.iter().enumerate() {
            cw_prev[nx] = d;
        }
        let faces = FaceSet::trace(&cw_next);
        let outer = faces.face_of(outer_dart);
        PlanarGraph {
            n,
            head,
            cw_next,
            cw_prev,
            first,
            faces,
            outer,
            roots,
        }
    }
}

fn rotation_of(cw_next: &[Dart], start: Dart) -> impl Iterator<Item = Dart> + '_ {
    let mut cur = Some(start).filter(|&s| s != usize::MAX);
    std::iter::from_fn(move || {
        let d = cur?;
        let nx = cw_next[d];
        cur = if nx == start { None } else { Some(nx) };
        Some(d)
    })
}

fn find_witness_face(emb: &Embedding, witness: &[Vertex]) -> Option<FaceId> {
    let k = witness.len();
    if k < 3 || witness.iter().any(|&v| v >= emb.n) {
        return None;
    }
    // The face is traversed clockwise, i.e. opposite to the witness order.
    let (w0, wlast) = (witness[0], witness[k - 1]);
    let d0 = rotation_of(&emb.cw_next, emb.first[w0]).find(|&d| emb.head[d] == wlast)?;
    let f = emb.faces.face_of(d0);
    if emb.faces.darts(f).len() != k {
        return None;
    }
    let mut d = d0;
    for i in 0..k {
        let expect_tail = witness[(k - i) % k];
        if emb.head[twin(d)] != expect_tail {
            return None;
        }
        d = emb.cw_next[twin(d)];
    }
    Some(f)
}
