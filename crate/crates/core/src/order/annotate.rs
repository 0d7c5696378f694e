use std::fmt;

use serde::{Deserialize, Serialize};

use crate::embedding::{edge_of, twin, Dart, EdgeId, PlanarGraph, Roots, Vertex};
use crate::report::ValidationReport;

use super::CanonicalOrdering;

const NONE: usize = usize::MAX;

/// `idx[v]` is the 1-based position of `v`; `order[i - 1]` is the vertex with index `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexEnumeration {
    pub idx: Vec<usize>,
    pub order: Vec<Vertex>,
}

/// Chains are numbered starting from the end whose earlier neighbour has the
/// higher index, so that the first chain vertex gets a higher-indexed parent.
pub fn enumerate_vertices(g: &PlanarGraph, co: &CanonicalOrdering) -> VertexEnumeration {
    let n = g.vertex_count();
    let group = co.group_of(n);
    let mut idx = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for (k, grp) in co.groups.iter().enumerate() {
        let reversed = k > 0 && grp.len() > 1 && {
            let pred = |z: Vertex| {
                g.neighbours(z)
                    .filter(|&w| group[w] < k)
                    .map(|w| idx[w])
                    .max()
                    .unwrap_or(0)
            };
            pred(grp[0]) < pred(grp[grp.len() - 1])
        };
        let it: Box<dyn Iterator<Item = &Vertex>> = if reversed {
            Box::new(grp.iter().rev())
        } else {
            Box::new(grp.iter())
        };
        for &z in it {
            order.push(z);
            idx[z] = order.len();
        }
    }
    VertexEnumeration { idx, order }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    S,
    SW,
    W,
    NW,
    N,
    NE,
    E,
    SE,
}

impl Label {
    pub const ALL: [Label; 8] = [
        Label::S,
        Label::SW,
        Label::W,
        Label::NW,
        Label::N,
        Label::NE,
        Label::E,
        Label::SE,
    ];

    /// Position in the clockwise pattern `S* SW? W? NW* N? NE* E? SE?`.
    pub fn rank(self) -> u8 {
        self as u8
    }

    /// Label at the tail of an inter-edge labelled `self` at its head.
    pub fn mirror(self) -> Option<Label> {
        match self {
            Label::SE => Some(Label::NW),
            Label::S => Some(Label::N),
            Label::SW => Some(Label::NE),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::S => "S",
            Label::SW => "SW",
            Label::W => "W",
            Label::NW => "NW",
            Label::N => "N",
            Label::NE => "NE",
            Label::E => "E",
            Label::SE => "SE",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Orientation, parent-edges and labels derived from a canonical ordering.
/// Darts are directed `tail -> head`; `label[d]` is the label of `d`'s edge at `tail(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeAnnotation {
    pub idx: Vec<usize>,
    pub group: Vec<usize>,
    /// Oriented tail of each edge.
    pub edge_tail: Vec<Vertex>,
    /// Dart `parent -> v` for every vertex except `v1`.
    pub parent: Vec<Option<Dart>>,
    pub first_out: Vec<Dart>,
    pub last_out: Vec<Dart>,
    pub label: Vec<Option<Label>>,
}

impl EdgeAnnotation {
    /// `true` iff `d` points along its edge's orientation.
    #[inline]
    pub fn is_out(&self, g: &PlanarGraph, d: Dart) -> bool {
        self.edge_tail[edge_of(d)] == g.tail(d)
    }

    /// The dart of edge `e` in its oriented direction.
    pub fn directed(&self, g: &PlanarGraph, e: EdgeId) -> Dart {
        if g.tail(2 * e) == self.edge_tail[e] {
            2 * e
        } else {
            2 * e + 1
        }
    }

    pub fn is_intra(&self, g: &PlanarGraph, e: EdgeId) -> bool {
        let (a, b) = g.endpoints(e);
        self.group[a] == self.group[b]
    }

    pub fn is_parent_edge(&self, g: &PlanarGraph, e: EdgeId) -> bool {
        let d = self.directed(g, e);
        self.parent[g.head(d)] == Some(d)
    }

    pub fn label_at(&self, d: Dart) -> Option<Label> {
        self.label[d]
    }

    /// Label of the edge at its oriented head.
    pub fn head_label(&self, g: &PlanarGraph, e: EdgeId) -> Option<Label> {
        self.label[twin(self.directed(g, e))]
    }

    /// Label of the edge at its oriented tail.
    pub fn tail_label(&self, g: &PlanarGraph, e: EdgeId) -> Option<Label> {
        self.label[self.directed(g, e)]
    }

    /// `true` iff edge `e` is labelled `l` at one of its endpoints.
    pub fn is_l_edge(&self, e: EdgeId, l: Label) -> bool {
        self.label[2 * e] == Some(l) || self.label[2 * e + 1] == Some(l)
    }

    /// Last NW-labelled dart clockwise around `v`.
    pub fn nnw(&self, g: &PlanarGraph, v: Vertex) -> Option<Dart> {
        g.rotation(v).find(|&d| {
            self.label[d] == Some(Label::NW) && self.label[g.cw_next(d)] != Some(Label::NW)
        })
    }

    /// First NE-labelled dart clockwise around `v`.
    pub fn nne(&self, g: &PlanarGraph, v: Vertex) -> Option<Dart> {
        g.rotation(v).find(|&d| {
            self.label[d] == Some(Label::NE) && self.label[g.cw_prev(d)] != Some(Label::NE)
        })
    }

    pub fn records(&self, g: &PlanarGraph) -> Vec<LabelRecord> {
        (0..g.edge_count())
            .map(|e| {
                let d = self.directed(g, e);
                let (u, v) = (g.tail(d), g.head(d));
                LabelRecord {
                    u,
                    v,
                    dir: format!("{u}->{v}"),
                    label_at_u: self.label[d],
                    label_at_v: self.label[twin(d)],
                    parent_of: (self.parent[v] == Some(d)).then_some(v),
                }
            })
            .collect()
    }
}

/// Per-edge labels export. `u` is the oriented tail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelRecord {
    pub u: Vertex,
    pub v: Vertex,
    pub dir: String,
    pub label_at_u: Option<Label>,
    pub label_at_v: Option<Label>,
    pub parent_of: Option<Vertex>,
}

/// Directions, parent-edges and first/last outgoing darts. Labels are left empty.
pub fn orient_edges(g: &PlanarGraph, en: &VertexEnumeration) -> EdgeAnnotation {
    let n = g.vertex_count();
    let m = g.edge_count();
    let Roots { v1, vn, .. } = g.roots();
    let idx = &en.idx;
    let edge_tail: Vec<Vertex> = (0..m)
        .map(|e| {
            let (a, b) = g.endpoints(e);
            let (lo, hi) = if idx[a] < idx[b] { (a, b) } else { (b, a) };
            if lo == v1 && hi == vn {
                vn
            } else {
                lo
            }
        })
        .collect();
    let mut ann = EdgeAnnotation {
        idx: idx.clone(),
        group: Vec::new(),
        edge_tail,
        parent: vec![None; n],
        first_out: vec![NONE; n],
        last_out: vec![NONE; n],
        label: vec![None; g.dart_count()],
    };
    for v in 0..n {
        let mut best: Option<Dart> = None;
        for d in g.rotation(v) {
            let out = ann.is_out(g, d);
            let nx = g.cw_next(d);
            let nx_out = ann.is_out(g, nx);
            if !out && nx_out && ann.first_out[v] == NONE {
                ann.first_out[v] = nx;
            }
            if out && !nx_out && ann.last_out[v] == NONE {
                ann.last_out[v] = d;
            }
            if !out
                && !(v == v1 && g.head(d) == vn)
                && best.is_none_or(|b| idx[g.head(d)] > idx[g.head(b)])
            {
                best = Some(d);
            }
        }
        ann.parent[v] = best.map(twin);
    }
    ann
}

/// Full labelling of the edge-vertex incidences.
pub fn label_edges(
    g: &PlanarGraph,
    co: &CanonicalOrdering,
    en: &VertexEnumeration,
) -> EdgeAnnotation {
    let mut ann = orient_edges(g, en);
    let n = g.vertex_count();
    let Roots { v1, v2, vn } = g.roots();
    ann.group = co.group_of(n);
    let kk = co.groups.len();
    let set = |d: Option<Dart>, l: Label, label: &mut Vec<Option<Label>>| {
        if let Some(d) = d {
            label[d] = Some(l);
        }
    };
    for (k, grp) in co.groups.iter().enumerate().skip(1) {
        if grp.len() == 1 {
            let z = grp[0];
            let lo = ann.last_out[z];
            if lo == NONE {
                continue;
            }
            let incoming: Vec<Dart> = g
                .rotation_from(g.cw_next(lo))
                .take_while(|&d| !ann.is_out(g, d))
                .collect();
            let r = incoming.len();
            for (i, &d) in incoming.iter().enumerate() {
                let l = if i + 1 == r {
                    Label::SW
                } else if i == 0 {
                    Label::SE
                } else {
                    Label::S
                };
                ann.label[d] = Some(l);
            }
        } else if k + 1 < kk {
            let l = grp.len();
            let inter = |z: Vertex| g.rotation(z).find(|&d| ann.group[g.head(d)] < k);
            set(inter(grp[0]), Label::SW, &mut ann.label);
            set(inter(grp[l - 1]), Label::SE, &mut ann.label);
            for w in grp.windows(2) {
                set(g.dart_between(w[0], w[1]), Label::E, &mut ann.label);
                set(g.dart_between(w[1], w[0]), Label::W, &mut ann.label);
            }
        }
    }
    set(g.dart_between(v1, v2), Label::E, &mut ann.label);
    set(g.dart_between(v2, v1), Label::W, &mut ann.label);
    set(g.dart_between(v1, vn), Label::S, &mut ann.label);
    for d in 0..g.dart_count() {
        let inter = ann.group[g.tail(d)] != ann.group[g.head(d)];
        if inter && !ann.is_out(g, d) {
            if let Some(m) = ann.label[d].and_then(Label::mirror) {
                ann.label[twin(d)] = Some(m);
            }
        }
    }
    ann
}

/// Checks that the two faces at `(v1, vn)` are directed cycles, that every
/// other face is bounded by exactly two directed paths, and that every vertex
/// sees one non-empty interval of incoming darts followed by one of outgoing darts.
pub fn check_face_orientation(g: &PlanarGraph, ann: &EdgeAnnotation) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let Roots { v1, vn, .. } = g.roots();
    let root = g.dart_between(v1, vn);
    let root_faces: Vec<_> = root
        .iter()
        .flat_map(|&d| [g.left_face(d), g.right_face(d)])
        .collect();
    for (f, darts) in g.faces().iter().enumerate() {
        let fw: Vec<bool> = darts.iter().map(|&d| ann.is_out(g, d)).collect();
        let switches = (0..fw.len())
            .filter(|&i| fw[i] != fw[(i + 1) % fw.len()])
            .count();
        if root_faces.contains(&f) {
            if switches != 0 {
                rep.push(
                    "face-cycle",
                    format!("face={f}"),
                    "face at (v1, vn) is not a directed cycle",
                );
            }
        } else if switches != 2 {
            rep.push(
                "face-paths",
                format!("face={f}"),
                format!("boundary splits into {switches} directed runs, expected 2"),
            );
        }
    }
    for v in 0..g.vertex_count() {
        let dirs: Vec<bool> = g.rotation(v).map(|d| ann.is_out(g, d)).collect();
        let switches = (0..dirs.len())
            .filter(|&i| dirs[i] != dirs[(i + 1) % dirs.len()])
            .count();
        if switches != 2 {
            rep.push(
                "vertex-interval",
                format!("v={v}"),
                "incoming and outgoing darts do not form two non-empty intervals",
            );
        }
    }
    rep
}
