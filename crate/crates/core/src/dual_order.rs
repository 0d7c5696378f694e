//! The canonical ordering of `G*` induced by a canonical ordering of `G`, and
//! the edge-by-edge label correspondence between the two.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dual::DualGraph;
use crate::embedding::{twin, Dart, FaceId, PlanarGraph};
use crate::order::{
    enumerate_vertices, orient_edges, CanonicalOrdering, EdgeAnnotation, Label, OrderingJson,
};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualOrderError {
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
}

/// Canonical ordering of the dual graph. `provenance[j]` is the 1-based primal
/// group that induced dual group `j + 1` (`None` for the first dual group).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCanonicalOrdering {
    pub ordering: CanonicalOrdering,
    pub provenance: Vec<Option<usize>>,
    pub primal_groups: usize,
}

impl DualCanonicalOrdering {
    pub fn dual_groups(&self) -> usize {
        self.ordering.groups.len()
    }

    pub fn to_json(&self, idx: Option<&[usize]>) -> DualOrderingJson {
        DualOrderingJson {
            dual: self.ordering.to_json(idx),
            provenance: self.provenance.clone(),
            primal_k: self.primal_groups,
            dual_k: self.dual_groups(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualOrderingJson {
    pub dual: OrderingJson,
    pub provenance: Vec<Option<usize>>,
    pub primal_k: usize,
    pub dual_k: usize,
}

/// Faces completed by primal group `k` (0-based), clockwise around a singleton.
/// For the last group the two faces at `(v1, vn)` are left out.
fn completed_faces(
    g: &PlanarGraph,
    co: &CanonicalOrdering,
    ann: &EdgeAnnotation,
    k: usize,
) -> Vec<FaceId> {
    let grp = &co.groups[k];
    if grp.len() == 1 {
        let z = grp[0];
        let incoming: Vec<Dart> = g
            .rotation_from(g.cw_next(ann.last_out[z]))
            .take_while(|&d| !ann.is_out(g, d))
            .collect();
        incoming.iter().skip(1).map(|&d| g.face_of(d)).collect()
    } else {
        let d = g
            .dart_between(grp[0], grp[1])
            .expect("chain vertices are adjacent");
        vec![g.right_face(d)]
    }
}

/// Builds `F_1, ..., F_K*` with `F_1 = [f1, f2]`, the faces completed by the
/// last primal group (minus `f2`) as `F_2`, and in general the faces completed
/// by primal group `k` as dual group `K - k + 2`.
pub fn dual_canonical_ordering(
    g: &PlanarGraph,
    co: &CanonicalOrdering,
    dualg: &DualGraph,
) -> Result<DualCanonicalOrdering, DualOrderError> {
    let en = enumerate_vertices(g, co);
    let ann = orient_edges(g, &en);
    let kk = co.groups.len();
    let root = g.root_dart();
    let f1 = g.outer_face();
    let f2 = g.right_face(root);
    let droots = dualg.graph().roots();
    if (droots.v1, droots.v2) != (f1, f2) {
        return Err(DualOrderError::InternalInvariantBroken(
            "dual roots disagree with the primal root faces".into(),
        ));
    }

    let mut groups = vec![vec![f1, f2]];
    let mut provenance = vec![None];
    for k in (1..kk).rev() {
        let faces = completed_faces(g, co, &ann, k);
        if faces.is_empty() {
            return Err(DualOrderError::InternalInvariantBroken(format!(
                "primal group {} completes no face",
                k + 1
            )));
        }
        groups.push(faces);
        provenance.push(Some(k + 1));
    }

    let f_phi = droots.vn;
    if groups.last() != Some(&vec![f_phi]) {
        return Err(DualOrderError::InternalInvariantBroken(format!(
            "faces completed by V_2 are {:?}, expected [{f_phi}]",
            groups.last()
        )));
    }
    let mut seen = vec![false; g.face_count()];
    for &f in groups.iter().flatten() {
        if std::mem::replace(&mut seen[f], true) {
            return Err(DualOrderError::InternalInvariantBroken(format!(
                "face {f} completed twice"
            )));
        }
    }
    if let Some(f) = seen.iter().position(|s| !s) {
        return Err(DualOrderError::InternalInvariantBroken(format!(
            "face {f} is never completed"
        )));
    }

    Ok(DualCanonicalOrdering {
        ordering: CanonicalOrdering::from_groups(groups),
        provenance,
        primal_groups: kk,
    })
}

/// Checks, for every primal edge `e`: intra-edge => `e*` is an S-edge;
/// S-edge => `e*` is an intra-edge; SW-edge => `e*` is an SE-edge directed
/// from the left to the right face of `e`; SE-edge => `e*` is an SW-edge
/// directed from the right to the left face of `e`.
pub fn verify_label_correspondence(
    g: &PlanarGraph,
    ann: &EdgeAnnotation,
    dualg: &DualGraph,
    dual_ann: &EdgeAnnotation,
) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let gs = dualg.graph();
    for e in 0..g.edge_count() {
        let es = dualg.dual_edge(e);
        let d = ann.directed(g, e);
        let loc = format!("e={e} ({}->{})", g.tail(d), g.head(d));
        if ann.is_intra(g, e) && !dual_ann.is_l_edge(es, Label::S) {
            rep.push("intra-to-S", &loc, "dual of an intra-edge is not an S-edge");
        }
        if ann.is_l_edge(e, Label::S) && !dual_ann.is_intra(gs, es) {
            rep.push("S-to-intra", &loc, "dual of an S-edge is not an intra-edge");
        }
        let ds = dual_ann.directed(gs, es);
        let left_to_right = ds == dualg.dual_dart(d);
        let right_to_left = ds == dualg.dual_dart(twin(d));
        if ann.is_l_edge(e, Label::SW) {
            if !dual_ann.is_l_edge(es, Label::SE) {
                rep.push("SW-to-SE", &loc, "dual of an SW-edge is not an SE-edge");
            }
            if !left_to_right {
                rep.push(
                    "SW-direction",
                    &loc,
                    "dual of an SW-edge is not directed left face to right face",
                );
            }
        }
        if ann.is_l_edge(e, Label::SE) {
            if !dual_ann.is_l_edge(es, Label::SW) {
                rep.push("SE-to-SW", &loc, "dual of an SE-edge is not an SW-edge");
            }
            if !right_to_left {
                rep.push(
                    "SE-direction",
                    &loc,
                    "dual of an SE-edge is not directed right face to left face",
                );
            }
        }
    }
    rep
}
