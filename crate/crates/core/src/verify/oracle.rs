//! Exhaustive oracles for tiny graphs.

use serde::Serialize;
use thiserror::Error;

use crate::embedding::{EdgeId, PlanarGraph};

/// Vertex bound for exhaustive enumeration.
pub const ORACLE_GATE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the enumeration gate of {gate}")]
    TooLarge { n: usize, gate: usize },
}

fn gate(g: &PlanarGraph, limit: usize) -> Result<(), OracleError> {
    let n = g.vertex_count();
    if n > limit {
        Err(OracleError::TooLarge { n, gate: limit })
    } else {
        Ok(())
    }
}

fn find(comp: &[usize], mut x: usize) -> usize {
    while comp[x] != x {
        x = comp[x];
    }
    x
}

struct State {
    next: usize,
    chosen: Vec<EdgeId>,
    comp: Vec<usize>,
}

/// Every spanning tree exactly once, by deletion/contraction on the edge list.
pub struct SpanningTrees {
    ends: Vec<(usize, usize)>,
    n: usize,
    stack: Vec<State>,
}

impl SpanningTrees {
    /// Connectivity of the chosen forest plus edges `from..`.
    fn connected_with_tail(&self, comp: &[usize], from: usize) -> bool {
        let mut c = comp.to_vec();
        let mut parts = (0..self.n).filter(|&v| c[v] == v).count();
        for &(a, b) in &self.ends[from..] {
            let (ra, rb) = (find(&c, a), find(&c, b));
            if ra != rb {
                c[ra] = rb;
                parts -= 1;
            }
        }
        parts == 1
    }
}

impl Iterator for SpanningTrees {
    type Item = Vec<EdgeId>;

    fn next(&mut self) -> Option<Vec<EdgeId>> {
        while let Some(mut s) = self.stack.pop() {
            if s.chosen.len() + 1 == self.n {
                return Some(s.chosen);
            }
            let m = self.ends.len();
            if s.next == m || m - s.next < self.n - 1 - s.chosen.len() {
                continue;
            }
            let (a, b) = self.ends[s.next];
            if self.connected_with_tail(&s.comp, s.next + 1) {
                self.stack.push(State {
                    next: s.next + 1,
                    chosen: s.chosen.clone(),
                    comp: s.comp.clone(),
                });
            }
            let (ra, rb) = (find(&s.comp, a), find(&s.comp, b));
            if ra != rb {
                s.comp[ra] = rb;
                s.chosen.push(s.next);
                s.next += 1;
                self.stack.push(s);
            }
        }
        None
    }
}

pub fn enumerate_spanning_trees(g: &PlanarGraph) -> Result<SpanningTrees, OracleError> {
    gate(g, ORACLE_GATE)?;
    let n = g.vertex_count();
    let ends = (0..g.edge_count()).map(|e| g.endpoints(e)).collect();
    let stack = if n == 0 {
        Vec::new()
    } else {
        vec![State {
            next: 0,
            chosen: Vec::new(),
            comp: (0..n).collect(),
        }]
    };
    Ok(SpanningTrees { ends, n, stack })
}

/// Kirchhoff's count: any cofactor of the Laplacian, by fraction-free
/// Gaussian elimination in exact integers.
pub fn matrix_tree_count(g: &PlanarGraph) -> i128 {
    let n = g.vertex_count();
    if n <= 1 {
        return 1;
    }
    let mut lap = vec![vec![0i128; n]; n];
    for e in 0..g.edge_count() {
        let (a, b) = g.endpoints(e);
        lap[a][a] += 1;
        lap[b][b] += 1;
        lap[a][b] -= 1;
        lap[b][a] -= 1;
    }
    let mut a: Vec<Vec<i128>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    bareiss_det(&mut a)
}

fn bareiss_det(a: &mut [Vec<i128>]) -> i128 {
    let k = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..k {
        if a[i][i] == 0 {
            match (i + 1..k).find(|&r| a[r][i] != 0) {
                Some(r) => {
                    a.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev;
            }
            a[r][i] = 0;
        }
        prev = a[i][i];
    }
    sign * a[k - 1][k - 1]
}

/// Best `(max degree of T, max degree of T*)` over all spanning trees, minimal
/// by the larger of the two and then by their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreePair {
    pub tree: usize,
    pub cotree: usize,
    pub tree_edges: Vec<EdgeId>,
    pub trees_seen: u64,
}

impl DegreePair {
    fn key(&self) -> (usize, usize) {
        (self.tree.max(self.cotree), self.tree + self.cotree)
    }
}

pub fn best_degree_pair(g: &PlanarGraph) -> Result<DegreePair, OracleError> {
    let face_len: Vec<usize> = g.faces().iter().map(<[_]>::len).collect();
    let mut best: Option<DegreePair> = None;
    let mut seen = 0u64;
    let mut deg = vec![0usize; g.vertex_count()];
    let mut on_face = vec![0usize; g.face_count()];
    for t in enumerate_spanning_trees(g)? {
        seen += 1;
        deg.iter_mut().for_each(|x| *x = 0);
        on_face.iter_mut().for_each(|x| *x = 0);
        for &e in &t {
            let (a, b) = g.endpoints(e);
            deg[a] += 1;
            deg[b] += 1;
            on_face[g.left_face(2 * e)] += 1;
            on_face[g.right_face(2 * e)] += 1;
        }
        let dt = deg.iter().copied().max().unwrap_or(0);
        let dc = face_len
            .iter()
            .zip(&on_face)
            .map(|(l, t)| l - t)
            .max()
            .unwrap_or(0);
        let cand = DegreePair {
            tree: dt,
            cotree: dc,
            tree_edges: t,
            trees_seen: 0,
        };
        if best.as_ref().is_none_or(|b| cand.key() < b.key()) {
            best = Some(cand);
        }
    }
    let mut best = best.expect("a connected graph has a spanning tree");
    best.trees_seen = seen;
    Ok(best)
}
