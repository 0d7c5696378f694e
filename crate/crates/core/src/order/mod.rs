//! Canonical orderings: computation by reverse peeling, definition-level
//! validation, and the derived enumeration, orientation and labels.

mod annotate;
mod validate;

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{Dart, FaceId, PlanarGraph, Roots, Vertex};

pub use annotate::{
    check_face_orientation, enumerate_vertices, label_edges, orient_edges, EdgeAnnotation, Label,
    LabelRecord, VertexEnumeration,
};
pub use validate::validate_canonical_ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Singleton,
    Chain,
}

impl GroupKind {
    pub fn for_len(len: usize) -> Self {
        if len == 1 {
            GroupKind::Singleton
        } else {
            GroupKind::Chain
        }
    }
}

/// Ordered partition `V_1, ..., V_K`. Chain groups list their vertices in
/// clockwise order around the outer face of the prefix graph they complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalOrdering {
    pub groups: Vec<Vec<Vertex>>,
    pub kinds: Vec<GroupKind>,
}

impl CanonicalOrdering {
    /// Builds an ordering with kinds derived from the group sizes
    /// (the first group is always a chain).
    pub fn from_groups(groups: Vec<Vec<Vertex>>) -> Self {
        let kinds = groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if i == 0 {
                    GroupKind::Chain
                } else {
                    GroupKind::for_len(g.len())
                }
            })
            .collect();
        CanonicalOrdering { groups, kinds }
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Group index (0-based) of every vertex; `usize::MAX` for vertices in no group.
    pub fn group_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (k, g) in self.groups.iter().enumerate() {
            for &v in g {
                if v < n {
                    out[v] = k;
                }
            }
        }
        out
    }

    pub fn to_json(&self, idx: Option<&[usize]>) -> OrderingJson {
        OrderingJson {
            groups: self.groups.clone(),
            kinds: self.kinds.clone(),
            idx: idx.map(|i| i.to_vec()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingJson {
    pub groups: Vec<Vec<Vertex>>,
    pub kinds: Vec<GroupKind>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub idx: Option<Vec<usize>>,
}

impl From<OrderingJson> for CanonicalOrdering {
    fn from(j: OrderingJson) -> Self {
        CanonicalOrdering {
            groups: j.groups,
            kinds: j.kinds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("peeling got stuck with {remaining} vertices left; the graph is not 3-connected")]
    NotThreeConnected { remaining: usize },
}

const NONE: usize = usize::MAX;

struct Peeler<'a> {
    g: &'a PlanarGraph,
    roots: Roots,
    removed: Vec<bool>,
    on_c: Vec<bool>,
    deg: Vec<u32>,
    // Neighbours on the outer cycle; more than two means a chord.
    cn_c: Vec<u32>,
    // Live faces at the vertex that see a second, non-adjacent stretch of the outer cycle.
    bad: Vec<u32>,
    bad_bit: Vec<bool>,
    alive: Vec<bool>,
    outv: Vec<u32>,
    corners: Vec<[Dart; 4]>,
    deg2: Vec<bool>,
    deg2c: Vec<u32>,
    min2: Vec<Vertex>,
    heap: BinaryHeap<Reverse<(Vertex, u8, usize)>>,
    touched: Vec<Vertex>,
    touched_faces: Vec<FaceId>,
}

const SINGLETON: u8 = 0;
const CHAIN: u8 = 1;

impl<'a> Peeler<'a> {
    fn new(g: &'a PlanarGraph) -> Self {
        let n = g.vertex_count();
        let nf = g.face_count();
        let mut p = Peeler {
            g,
            roots: g.roots(),
            removed: vec![false; n],
            on_c: vec![false; n],
            deg: (0..n).map(|v| g.degree(v) as u32).collect(),
            cn_c: vec![0; n],
            bad: vec![0; n],
            bad_bit: vec![false; g.dart_count()],
            alive: vec![true; nf],
            outv: vec![0; nf],
            corners: vec![[NONE; 4]; nf],
            deg2: vec![false; n],
            deg2c: vec![0; nf],
            min2: vec![NONE; nf],
            heap: BinaryHeap::new(),
            touched: Vec::new(),
            touched_faces: Vec::new(),
        };
        p.alive[g.outer_face()] = false;
        for v in g.outer_boundary_ccw() {
            p.join(v);
        }
        p.touched.clear();
        p.touched_faces.clear();
        p
    }

    fn is_root(&self, v: Vertex) -> bool {
        v == self.roots.v1 || v == self.roots.v2
    }

    fn join(&mut self, w: Vertex) {
        let g = self.g;
        self.on_c[w] = true;
        for d in g.rotation(w) {
            let x = g.head(d);
            if !self.removed[x] && self.on_c[x] && x != w {
                self.cn_c[w] += 1;
                self.cn_c[x] += 1;
                self.touched.push(x);
            }
        }
        for d in g.rotation(w) {
            let f = g.face_of(d);
            if !self.alive[f] {
                continue;
            }
            let k = self.outv[f] as usize;
            self.outv[f] += 1;
            self.touched_faces.push(f);
            if k >= 4 {
                self.bad_bit[d] = true;
                self.bad[w] += 1;
            } else {
                self.corners[f][k] = d;
                self.recompute(f);
            }
        }
        self.touched.push(w);
    }

    /// Refreshes the bad bits of a face's outer-cycle corners.
    fn recompute(&mut self, f: FaceId) {
        let g = self.g;
        let k = (self.outv[f] as usize).min(4);
        let cs = self.corners[f];
        for i in 0..k {
            let c = cs[i];
            let v = g.tail(c);
            let now_bad = k >= 4
                || (0..k).any(|j| {
                    let w = g.tail(cs[j]);
                    j != i && g.head(c) != w && g.head(cs[j]) != v
                });
            if now_bad != self.bad_bit[c] {
                self.bad_bit[c] = now_bad;
                if now_bad {
                    self.bad[v] += 1;
                } else {
                    self.bad[v] -= 1;
                }
                self.touched.push(v);
            }
        }
    }

    fn kill(&mut self, f: FaceId) {
        let g = self.g;
        self.alive[f] = false;
        for &x in g.faces().darts(f) {
            self.touched.push(g.tail(x));
            if self.bad_bit[x] {
                self.bad_bit[x] = false;
                self.bad[g.tail(x)] -= 1;
            }
        }
    }

    fn remove_group(&mut self, group: &[Vertex]) {
        let g = self.g;
        for &r in group {
            self.removed[r] = true;
        }
        for &r in group {
            for d in g.rotation(r) {
                let f = g.face_of(d);
                if self.alive[f] {
                    self.kill(f);
                }
                let w = g.head(d);
                if !self.removed[w] {
                    self.deg[w] -= 1;
                    if self.on_c[w] {
                        self.cn_c[w] -= 1;
                    }
                    self.touched.push(w);
                }
            }
        }
        for &r in group {
            self.on_c[r] = false;
        }
        let mut i = 0;
        while i < self.touched.len() {
            let w = self.touched[i];
            if !self.removed[w] && !self.on_c[w] {
                self.join(w);
            }
            i += 1;
        }
        let touched = std::mem::take(&mut self.touched);
        for &w in &touched {
            if !self.removed[w]
                && self.on_c[w]
                && self.deg[w] == 2
                && !self.deg2[w]
                && !self.is_root(w)
            {
                self.deg2[w] = true;
                if let Some(f) = g.rotation(w).map(|d| g.face_of(d)).find(|&f| self.alive[f]) {
                    self.deg2c[f] += 1;
                    self.min2[f] = self.min2[f].min(w);
                    self.touched_faces.push(f);
                }
            }
        }
        for &w in &touched {
            if self.singleton_ok(w) {
                self.heap.push(Reverse((w, SINGLETON, w)));
            }
        }
        let faces = std::mem::take(&mut self.touched_faces);
        for &f in &faces {
            if self.chain_ok(f) {
                self.heap.push(Reverse((self.min2[f], CHAIN, f)));
            }
        }
        self.touched = touched;
        self.touched.clear();
        self.touched_faces = faces;
        self.touched_faces.clear();
    }

    fn singleton_ok(&self, v: Vertex) -> bool {
        !self.removed[v]
            && self.on_c[v]
            && !self.is_root(v)
            && self.deg[v] >= 3
            && (self.deg[v] as usize) < self.g.degree(v)
            && self.cn_c[v] == 2
            && self.bad[v] == 0
    }

    fn chain_ok(&self, f: FaceId) -> bool {
        self.alive[f] && self.deg2c[f] >= 1 && self.outv[f] == self.deg2c[f] + 2
    }

    /// The degree-2 run on face `f`, clockwise around the outer cycle.
    fn chain_of(&self, f: FaceId) -> Vec<Vertex> {
        let g = self.g;
        let darts = g.faces().darts(f);
        let in_run = |d: Dart| self.deg2[g.tail(d)] && !self.removed[g.tail(d)];
        let len = darts.len();
        let start = (0..len)
            .find(|&i| in_run(darts[i]) && !in_run(darts[(i + len - 1) % len]))
            .expect("chain face has a run start");
        let mut run: Vec<Vertex> = (0..len)
            .map(|j| darts[(start + j) % len])
            .take_while(|&d| in_run(d))
            .map(|d| g.tail(d))
            .collect();
        run.reverse();
        run
    }
}

/// Computes a canonical ordering by repeatedly peeling a removable singleton
/// or maximal chain off the outer cycle, preferring the candidate with the
/// smallest vertex id.
pub fn compute_canonical_ordering(g: &PlanarGraph) -> Result<CanonicalOrdering, OrderError> {
    let n = g.vertex_count();
    let Roots { v1, v2, vn } = g.roots();
    let mut p = Peeler::new(g);
    let mut rev_groups = vec![vec![vn]];
    p.remove_group(&[vn]);
    let mut remaining = n - 1;
    while remaining > 2 {
        let Some(Reverse((_, kind, id))) = p.heap.pop() else {
            return Err(OrderError::NotThreeConnected { remaining });
        };
        let group = if kind == SINGLETON {
            if !p.singleton_ok(id) {
                continue;
            }
            vec![id]
        } else {
            if !p.chain_ok(id) {
                continue;
            }
            p.chain_of(id)
        };
        p.remove_group(&group);
        remaining -= group.len();
        rev_groups.push(group);
    }
    rev_groups.push(vec![v1, v2]);
    rev_groups.reverse();
    Ok(CanonicalOrdering::from_groups(rev_groups))
}
