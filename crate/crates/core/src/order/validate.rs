use crate::connectivity::is_biconnected;
use crate::embedding::{twin, Dart, PlanarGraph, Roots, Vertex};
use crate::report::ValidationReport;

use super::{CanonicalOrdering, GroupKind};

/// Checks `co` clause by clause against the definition of a canonical ordering.
/// Findings are tagged with the 1-based group index `k`.
pub fn validate_canonical_ordering(g: &PlanarGraph, co: &CanonicalOrdering) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let n = g.vertex_count();
    let Roots { v1, v2, vn } = g.roots();

    let mut seen = vec![0u32; n];
    for (k, grp) in co.groups.iter().enumerate() {
        if grp.is_empty() {
            rep.push("partition", format!("k={}", k + 1), "empty group");
        }
        for &v in grp {
            if v >= n {
                rep.push(
                    "partition",
                    format!("k={}", k + 1),
                    format!("vertex {v} out of range"),
                );
            } else {
                seen[v] += 1;
            }
        }
    }
    for (v, &c) in seen.iter().enumerate() {
        if c != 1 {
            rep.push(
                "partition",
                format!("v={v}"),
                format!("vertex appears {c} times"),
            );
        }
    }
    if co.kinds.len() != co.groups.len() {
        rep.push("partition", "kinds", "kinds and groups differ in length");
    }
    if !rep.passed() || co.groups.len() < 2 {
        if co.groups.len() < 2 {
            rep.push("partition", "K", "fewer than two groups");
        }
        return rep;
    }
    let kk = co.groups.len();

    if co.groups[0] != [v1, v2] {
        rep.push(
            "first-group",
            "k=1",
            format!("expected [{v1}, {v2}], got {:?}", co.groups[0]),
        );
    }
    if co.groups[kk - 1] != [vn] {
        rep.push(
            "last-group",
            format!("k={kk}"),
            format!("expected [{vn}], got {:?}", co.groups[kk - 1]),
        );
    }
    if g.dart_between(v1, v2).is_none() {
        rep.push("edge-v1v2", "k=1", "v1 and v2 are not adjacent");
    }
    for (k, (grp, kind)) in co.groups.iter().zip(&co.kinds).enumerate().skip(1) {
        if *kind != GroupKind::for_len(grp.len()) {
            rep.push(
                "kind",
                format!("k={}", k + 1),
                format!("{kind:?} group of size {}", grp.len()),
            );
        }
    }

    let group = co.group_of(n);
    let adj = g.rotations();
    let mut alive = vec![false; n];
    for &v in &co.groups[0] {
        alive[v] = true;
    }
    for k in 1..kk {
        let loc = format!("k={}", k + 1);
        let grp = &co.groups[k];
        for &v in grp {
            alive[v] = true;
        }
        if !is_biconnected(&adj, &alive) {
            rep.push("prefix-2conn", &loc, "prefix graph is not 2-connected");
        }
        let outer = prefix_outer_walk(g, &alive);
        for &v in grp {
            if !outer.contains(&v) {
                rep.push(
                    "outer-face",
                    &loc,
                    format!("vertex {v} is not on the outer face of the prefix"),
                );
            }
        }

        let earlier = |v: Vertex| g.neighbours(v).filter(|&w| group[w] < k).count();
        let later = |v: Vertex| g.neighbours(v).filter(|&w| group[w] > k).count();
        if k == kk - 1 {
            continue;
        }
        if grp.len() == 1 {
            let z = grp[0];
            if earlier(z) < 2 {
                rep.push(
                    "singleton",
                    &loc,
                    format!("vertex {z} has {} earlier neighbours", earlier(z)),
                );
            }
            if later(z) < 1 {
                rep.push(
                    "singleton",
                    &loc,
                    format!("vertex {z} has no later neighbour"),
                );
            }
            continue;
        }
        let l = grp.len();
        let inner_edges: usize = grp
            .iter()
            .map(|&v| g.neighbours(v).filter(|&w| group[w] == k).count())
            .sum();
        let is_path = inner_edges == 2 * (l - 1)
            && grp.windows(2).all(|w| g.dart_between(w[0], w[1]).is_some());
        if !is_path {
            rep.push("chain", &loc, "group does not induce the listed path");
        }
        for (i, &z) in grp.iter().enumerate() {
            let want = if i == 0 || i == l - 1 { 1 } else { 0 };
            if earlier(z) != want {
                rep.push(
                    "chain",
                    &loc,
                    format!(
                        "vertex {z} has {} earlier neighbours, expected {want}",
                        earlier(z)
                    ),
                );
            }
            if later(z) < 1 {
                rep.push("chain", &loc, format!("vertex {z} has no later neighbour"));
            }
        }
        if !appears_in_cycle(&outer, grp) {
            rep.push(
                "chain-clockwise",
                &loc,
                "chain is not listed clockwise along the prefix outer face",
            );
        }
    }
    rep
}

/// Tails of the outer-face walk of the induced subgraph on `alive`, clockwise,
/// starting from the dart `v2 -> v1`.
pub(crate) fn prefix_outer_walk(g: &PlanarGraph, alive: &[bool]) -> Vec<Vertex> {
    let Roots { v1, v2, .. } = g.roots();
    let Some(start) = g.dart_between(v2, v1) else {
        return Vec::new();
    };
    if !alive[v1] || !alive[v2] {
        return Vec::new();
    }
    let next_alive = |x: Dart| -> Dart {
        let mut y = g.cw_next(x);
        while !alive[g.head(y)] {
            y = g.cw_next(y);
        }
        y
    };
    let mut out = Vec::new();
    let mut d = start;
    for _ in 0..g.dart_count() {
        out.push(g.tail(d));
        d = next_alive(twin(d));
        if d == start {
            break;
        }
    }
    out
}

fn appears_in_cycle(cycle: &[Vertex], seq: &[Vertex]) -> bool {
    let len = cycle.len();
    if seq.len() > len {
        return false;
    }
    (0..len).any(|s| {
        seq.iter()
            .enumerate()
            .all(|(j, &v)| cycle[(s + j) % len] == v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_biconnected_brute;
    use crate::generate;

    fn k4() -> PlanarGraph {
        generate::tetrahedron()
    }

    #[test]
    fn k4_valid_ordering_passes() {
        let co = CanonicalOrdering::from_groups(vec![vec![0, 1], vec![3], vec![2]]);
        assert!(validate_canonical_ordering(&k4(), &co).passed());
    }

    #[test]
    fn k4_swapped_ordering_fails() {
        let co = CanonicalOrdering::from_groups(vec![vec![0, 1], vec![2], vec![3]]);
        let rep = validate_canonical_ordering(&k4(), &co);
        assert!(!rep.passed());
        assert!(rep.has("last-group"));
    }

    /// Every ordered partition of K4 (every vertex sequence, every cut): only one is accepted.
    #[test]
    fn k4_exhaustive_partitions() {
        let g = k4();
        let mut accepted = Vec::new();
        let mut perm = vec![0, 1, 2, 3];
        for_each_perm(&mut perm, 0, &mut |p| {
            for cuts in 0u32..8 {
                let mut groups = vec![vec![p[0]]];
                for i in 1..4 {
                    if cuts & (1 << (i - 1)) != 0 {
                        groups.push(Vec::new());
                    }
                    groups.last_mut().unwrap().push(p[i]);
                }
                let co = CanonicalOrdering::from_groups(groups.clone());
                if validate_canonical_ordering(&g, &co).passed() {
                    accepted.push(groups);
                }
            }
        });
        assert_eq!(accepted, vec![vec![vec![0, 1], vec![3], vec![2]]]);
    }

    fn for_each_perm(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            for_each_perm(p, i + 1, f);
            p.swap(i, j);
        }
    }

    #[test]
    fn prefix_walk_of_full_graph_is_outer_face() {
        let g = generate::cube();
        let walk = prefix_outer_walk(&g, &vec![true; 8]);
        let mut ccw = g.outer_boundary_ccw();
        // Clockwise from v2: v2, v1, vn, ...
        ccw.reverse();
        let pos = ccw.iter().position(|&v| v == g.roots().v2).unwrap();
        ccw.rotate_left(pos);
        assert_eq!(walk, ccw);
    }

    #[test]
    fn lowpoint_matches_brute_on_prefixes() {
        let g = generate::dodecahedron();
        let co = super::super::compute_canonical_ordering(&g).unwrap();
        let adj = g.rotations();
        let mut alive = vec![false; 20];
        for grp in &co.groups {
            for &v in grp {
                alive[v] = true;
            }
            assert_eq!(
                is_biconnected(&adj, &alive),
                is_biconnected_brute(&adj, &alive)
            );
        }
    }
}
