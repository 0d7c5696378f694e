//! Seeded generators of 3-connected embedded planar graphs.
//!
//! Random generators draw from `ChaCha8Rng::seed_from_u64(seed)` on stream 0;
//! batch drivers split further work onto streams `1, 2, ...` of the same seed.
//! Geometric families are drawn as Schlegel diagrams and their rotations read
//! off by angle, with the outer ring `0, 1, ..., k-1` counter-clockwise and
//! roots `(v1, v2, vn) = (0, 1, k-1)`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dual::dual;
use crate::embedding::{PlanarGraph, Roots, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad generator parameters: {0}")]
    BadParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    Wheel,
    Prism,
    Triangulation,
    Tetrahedron,
    Cube,
    Dodecahedron,
    /// Dual of a random stacked triangulation: 3-regular, large faces.
    Cubic,
}

impl GenKind {
    pub const ALL: [GenKind; 7] = [
        GenKind::Wheel,
        GenKind::Prism,
        GenKind::Triangulation,
        GenKind::Tetrahedron,
        GenKind::Cube,
        GenKind::Dodecahedron,
        GenKind::Cubic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Wheel => "wheel",
            GenKind::Prism => "prism",
            GenKind::Triangulation => "triangulation",
            GenKind::Tetrahedron => "tetrahedron",
            GenKind::Cube => "cube",
            GenKind::Dodecahedron => "dodecahedron",
            GenKind::Cubic => "cubic",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GenError::BadParams(format!("unknown generator kind '{s}'")))
    }
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Generates a graph of the given kind. `n` is the vertex count; it is ignored
/// by the fixed polyhedra and must be even for prisms and cubic graphs.
pub fn generate(kind: GenKind, n: usize, seed: u64) -> Result<PlanarGraph, GenError> {
    match kind {
        GenKind::Tetrahedron => Ok(tetrahedron()),
        GenKind::Cube => Ok(cube()),
        GenKind::Dodecahedron => Ok(dodecahedron()),
        GenKind::Wheel => {
            if n < 4 {
                return Err(GenError::BadParams("wheel needs n >= 4".into()));
            }
            Ok(wheel(n))
        }
        GenKind::Prism => {
            if n < 6 || n % 2 != 0 {
                return Err(GenError::BadParams("prism needs even n >= 6".into()));
            }
            Ok(prism(n / 2))
        }
        GenKind::Triangulation => {
            if n < 4 {
                return Err(GenError::BadParams("triangulation needs n >= 4".into()));
            }
            Ok(triangulation(n, &mut rng_for(seed, 0)))
        }
        GenKind::Cubic => {
            if n < 4 || n % 2 != 0 {
                return Err(GenError::BadParams("cubic graphs need even n >= 4".into()));
            }
            Ok(cubic(n, &mut rng_for(seed, 0)))
        }
    }
}

/// Rotation system of a straight-line drawing: neighbours by decreasing angle.
pub(crate) fn rotations_from_drawing(
    points: &[(f64, f64)],
    edges: &[(Vertex, Vertex)],
) -> Vec<Vec<Vertex>> {
    let mut adj = vec![Vec::new(); points.len()];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for (u, nb) in adj.iter_mut().enumerate() {
        let (x, y) = points[u];
        let angle = |v: &Vertex| (points[*v].1 - y).atan2(points[*v].0 - x);
        nb.sort_by(|a, b| angle(b).total_cmp(&angle(a)));
    }
    adj
}

pub(crate) fn ring(k: usize, radius: f64, phase: f64) -> impl Iterator<Item = (f64, f64)> {
    (0..k).map(move |i| {
        let t = phase + 2.0 * PI * i as f64 / k as f64;
        (radius * t.cos(), radius * t.sin())
    })
}

fn from_drawing(
    points: &[(f64, f64)],
    edges: &[(Vertex, Vertex)],
    outer_ring: usize,
) -> PlanarGraph {
    let rot = rotations_from_drawing(points, edges);
    let outer: Vec<Vertex> = (0..outer_ring).collect();
    PlanarGraph::build(
        &rot,
        &outer,
        Roots {
            v1: 0,
            v2: 1,
            vn: outer_ring - 1,
        },
    )
    .expect("drawing is a valid planar embedding")
}

pub fn tetrahedron() -> PlanarGraph {
    let mut pts: Vec<_> = ring(3, 2.0, -PI / 2.0).collect();
    pts.push((0.0, 0.0));
    let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
    from_drawing(&pts, &edges, 3)
}

/// Prism over a `k`-gon (`2k` vertices). `prism(4)` is the cube.
pub fn prism(k: usize) -> PlanarGraph {
    assert!(k >= 3);
    let mut pts: Vec<_> = ring(k, 2.0, -PI / 2.0).collect();
    pts.extend(ring(k, 1.0, -PI / 2.0));
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    from_drawing(&pts, &edges, k)
}

pub fn cube() -> PlanarGraph {
    prism(4)
}

/// Wheel with `n` vertices in total: rim `0..n-1`, hub `n-1`.
pub fn wheel(n: usize) -> PlanarGraph {
    assert!(n >= 4);
    let k = n - 1;
    let mut pts: Vec<_> = ring(k, 2.0, -PI / 2.0).collect();
    pts.push((0.0, 0.0));
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((i, k));
    }
    from_drawing(&pts, &edges, k)
}

pub fn dodecahedron() -> PlanarGraph {
    let phase = -PI / 2.0;
    let half = PI / 5.0;
    let mut pts: Vec<_> = ring(5, 4.0, phase).collect();
    pts.extend(ring(5, 3.0, phase));
    pts.extend(ring(5, 2.0, phase + half));
    pts.extend(ring(5, 1.0, phase + half));
    let mut edges = Vec::new();
    for i in 0..5 {
        let j = (i + 1) % 5;
        edges.push((i, j));
        edges.push((i, 5 + i));
        edges.push((5 + i, 10 + i));
        edges.push((5 + j, 10 + i));
        edges.push((10 + i, 15 + i));
        edges.push((15 + i, 15 + j));
    }
    from_drawing(&pts, &edges, 5)
}

/// Stacked triangulation: start from a triangle (two faces) and repeatedly put
/// a new vertex into a uniformly chosen face. Roots follow the generator rule
/// `v1 = 0`, `vn` = smallest neighbour of 0, outer face left of `v1 -> vn`.
pub fn triangulation(n: usize, rng: &mut impl Rng) -> PlanarGraph {
    assert!(n >= 3);
    // Faces as (a, b, c) with the face on the left of a->b, b->c, c->a.
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[i];
        faces[i] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    let rot = rotations_from_triangles(n, &faces);
    rooted_at_zero(&rot)
}

fn rotations_from_triangles(n: usize, faces: &[[Vertex; 3]]) -> Vec<Vec<Vertex>> {
    // Face a->b->c means the dart after b->a clockwise around b is b->c.
    let mut succ: Vec<HashMap<Vertex, Vertex>> = vec![HashMap::new(); n];
    for &[a, b, c] in faces {
        succ[b].insert(a, c);
        succ[c].insert(b, a);
        succ[a].insert(c, b);
    }
    succ.iter()
        .map(|s| {
            let Some(&start) = s.keys().min() else {
                return Vec::new();
            };
            let mut out = vec![start];
            let mut cur = s[&start];
            while cur != start {
                out.push(cur);
                cur = s[&cur];
            }
            out
        })
        .collect()
}

fn rooted_at_zero(rot: &[Vec<Vertex>]) -> PlanarGraph {
    let vn = *rot[0].iter().min().expect("vertex 0 has neighbours");
    PlanarGraph::build_rooted(rot, 0, vn).expect("generator output is a valid embedding")
}

/// 3-regular 3-connected planar graph on `n` vertices: the dual of a stacked
/// triangulation on `n/2 + 2` vertices, re-rooted by the generator rule.
pub fn cubic(n: usize, rng: &mut impl Rng) -> PlanarGraph {
    let t = triangulation(n / 2 + 2, rng);
    let rot = dual(&t).graph().rotations();
    rooted_at_zero(&rot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_three_connected_brute;

    #[test]
    fn named_polyhedra_counts() {
        let t = tetrahedron();
        assert_eq!(
            (t.vertex_count(), t.edge_count(), t.face_count()),
            (4, 6, 4)
        );
        let c = cube();
        assert_eq!(
            (c.vertex_count(), c.edge_count(), c.face_count()),
            (8, 12, 6)
        );
        let d = dodecahedron();
        assert_eq!(
            (d.vertex_count(), d.edge_count(), d.face_count()),
            (20, 30, 12)
        );
        assert!((0..20).all(|v| d.degree(v) == 3));
        assert!(d.faces().iter().all(|f| f.len() == 5));
        let w = wheel(6);
        assert_eq!(w.degree(5), 5);
        let p = prism(5);
        assert_eq!(
            (p.vertex_count(), p.edge_count(), p.face_count()),
            (10, 15, 7)
        );
    }

    #[test]
    fn triangulation_edge_count() {
        let g = generate(GenKind::Triangulation, 100, 1).unwrap();
        assert_eq!(g.edge_count(), 294);
        assert!(g.faces().iter().all(|f| f.len() == 3));
        assert_eq!(g.roots().v1, 0);
    }

    #[test]
    fn generators_are_three_connected() {
        for kind in GenKind::ALL {
            for n in [4usize, 6, 8, 12] {
                let Ok(g) = generate(kind, n, 5) else {
                    continue;
                };
                assert!(is_three_connected_brute(&g), "{kind} n={n}");
            }
        }
    }

    #[test]
    fn cubic_is_three_regular() {
        let g = generate(GenKind::Cubic, 40, 9).unwrap();
        assert_eq!(g.vertex_count(), 40);
        assert!((0..40).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn seed_determines_output() {
        let a = generate(GenKind::Triangulation, 50, 3).unwrap();
        let b = generate(GenKind::Triangulation, 50, 3).unwrap();
        let c = generate(GenKind::Triangulation, 50, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn bad_params() {
        assert!(generate(GenKind::Wheel, 3, 0).is_err());
        assert!(generate(GenKind::Prism, 7, 0).is_err());
        assert!(generate(GenKind::Triangulation, 3, 0).is_err());
        assert!("hexagon".parse::<GenKind>().is_err());
        assert_eq!("cube".parse::<GenKind>(), Ok(GenKind::Cube));
    }
}
