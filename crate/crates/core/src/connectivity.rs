//! Connectivity checks on small and medium graphs.

use thiserror::Error;

use crate::embedding::PlanarGraph;

/// Default vertex bound for the pair-removal 3-connectivity check.
pub const DEFAULT_BRUTE_BOUND: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("graph has {n} vertices, above the brute-force bound of {bound}")]
    TooLargeForBruteCheck { n: usize, bound: usize },
}

/// `true` iff `g` has at least 4 vertices and stays connected after removing
/// any two vertices. Graphs above `bound` vertices are refused unless `force`.
pub fn is_three_connected(
    g: &PlanarGraph,
    bound: usize,
    force: bool,
) -> Result<bool, ConnectivityError> {
    let n = g.vertex_count();
    if n > bound && !force {
        return Err(ConnectivityError::TooLargeForBruteCheck { n, bound });
    }
    if n < 4 {
        return Ok(false);
    }
    let adj = g.rotations();
    let mut alive = vec![true; n];
    for u in 0..n {
        alive[u] = false;
        let ok = is_biconnected(&adj, &alive);
        alive[u] = true;
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pair-removal reference check, quadratic in the number of vertex pairs.
pub fn is_three_connected_brute(g: &PlanarGraph) -> bool {
    let n = g.vertex_count();
    if n < 4 {
        return false;
    }
    let adj = g.rotations();
    let mut alive = vec![true; n];
    for u in 0..n {
        for v in u + 1..n {
            alive[u] = false;
            alive[v] = false;
            let ok = is_connected(&adj, &alive);
            alive[u] = true;
            alive[v] = true;
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Connectivity of the subgraph induced by `alive`. Empty subgraphs count as connected.
pub fn is_connected(adj: &[Vec<usize>], alive: &[bool]) -> bool {
    let Some(start) = alive.iter().position(|&a| a) else {
        return true;
    };
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if alive[v] && !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == alive.iter().filter(|&&a| a).count()
}

/// Brute 2-connectivity: connected, and connected after deleting any one vertex.
/// A single edge (two adjacent vertices) counts as 2-connected.
pub fn is_biconnected_brute(adj: &[Vec<usize>], alive: &[bool]) -> bool {
    if !is_connected(adj, alive) {
        return false;
    }
    let mut mask = alive.to_vec();
    for u in 0..adj.len() {
        if !alive[u] {
            continue;
        }
        mask[u] = false;
        let ok = is_connected(adj, &mask);
        mask[u] = true;
        if !ok {
            return false;
        }
    }
    true
}

/// Lowpoint DFS 2-connectivity test of the subgraph induced by `alive`.
/// Agrees with [`is_biconnected_brute`] and runs in linear time.
pub fn is_biconnected(adj: &[Vec<usize>], alive: &[bool]) -> bool {
    let n = adj.len();
    let Some(root) = alive.iter().position(|&a| a) else {
        return true;
    };
    let total = alive.iter().filter(|&&a| a).count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    // (vertex, parent, next neighbour position)
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    disc[root] = time;
    low[root] = time;
    time += 1;
    let mut root_children = 0;
    while let Some(top) = stack.last_mut() {
        let (u, parent) = (top.0, top.1);
        if top.2 < adj[u].len() {
            let v = adj[u][top.2];
            top.2 += 1;
            if !alive[v] || v == parent {
                continue;
            }
            if disc[v] == usize::MAX {
                disc[v] = time;
                low[v] = time;
                time += 1;
                if u == root {
                    root_children += 1;
                }
                stack.push((v, u, 0));
            } else {
                low[u] = low[u].min(disc[v]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if p != root && low[u] >= disc[p] {
                    return false;
                }
            }
        }
    }
    time == total && root_children <= 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Roots;
    use crate::generate::{cube, tetrahedron};

    #[test]
    fn k4_and_cube_are_three_connected() {
        assert!(is_three_connected(&tetrahedron(), DEFAULT_BRUTE_BOUND, false).unwrap());
        assert!(is_three_connected(&cube(), DEFAULT_BRUTE_BOUND, false).unwrap());
        assert!(is_three_connected_brute(&cube()));
    }

    #[test]
    fn four_cycle_with_chord_is_not() {
        // 0-1-2-3 square with chord 0-2 drawn inside.
        let rot = vec![vec![3, 2, 1], vec![0, 2], vec![1, 0, 3], vec![2, 0]];
        let g = PlanarGraph::build(
            &rot,
            &[0, 1, 2, 3],
            Roots {
                v1: 0,
                v2: 1,
                vn: 3,
            },
        )
        .unwrap();
        assert!(!is_three_connected_brute(&g));
        assert!(!is_three_connected(&g, DEFAULT_BRUTE_BOUND, false).unwrap());
    }

    #[test]
    fn size_gate() {
        let g = cube();
        assert_eq!(
            is_three_connected(&g, 5, false),
            Err(ConnectivityError::TooLargeForBruteCheck { n: 8, bound: 5 })
        );
        assert_eq!(is_three_connected(&g, 5, true), Ok(true));
    }

    #[test]
    fn lowpoint_agrees_with_brute_on_subsets() {
        let g = cube();
        let adj = g.rotations();
        for mask in 0u32..256 {
            let alive: Vec<bool> = (0..8).map(|i| mask & (1 << i) != 0).collect();
            assert_eq!(
                is_biconnected(&adj, &alive),
                is_biconnected_brute(&adj, &alive),
                "mask {mask:08b}"
            );
        }
    }
}
