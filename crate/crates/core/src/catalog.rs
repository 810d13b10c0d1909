//! Named small graphs and the exhaustive catalog of connected graphs on up
//! to a few vertices, one representative per isomorphism class.
//!
//! The catalog backs the test corpus: every connected graph on at most five
//! vertices, plus the six- and eight-cycles. Enumeration is brute force —
//! all labeled graphs, canonicalized by minimizing the edge bitmask over
//! all vertex permutations — which is exactly as fast as it needs to be at
//! this scale.

use crate::graph::{Graph, UnionFind};

/// The complete graph `K_n`, edges in lexicographic order.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).expect("complete graph is simple")
}

/// The cycle `C_n` (`n ≥ 3`), edges in cycle order, closing edge last.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|v| (v, v + 1)).collect();
    edges.push((0, n - 1));
    Graph::new(n, edges).expect("cycle is simple")
}

/// The path on `n` vertices, edges in path order.
pub fn path(n: usize) -> Graph {
    let edges = (0..n.saturating_sub(1)).map(|v| (v, v + 1)).collect();
    Graph::new(n, edges).expect("path is simple")
}

/// The star with `leaves` leaves around vertex 0.
pub fn star(leaves: usize) -> Graph {
    let edges = (1..=leaves).map(|v| (0, v)).collect();
    Graph::new(leaves + 1, edges).expect("star is simple")
}

/// The paw: a triangle `0,1,2` with a pendant edge `2–3`. The smallest
/// graph whose BC family contains a full diamond.
pub fn paw() -> Graph {
    Graph::new(4, vec![(0, 1), (0, 2), (1, 2), (2, 3)]).expect("paw is simple")
}

/// The bowtie: two triangles sharing vertex 0.
pub fn bowtie() -> Graph {
    Graph::new(5, vec![(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
        .expect("bowtie is simple")
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    pairs
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    fn recurse(remaining: &[usize]) -> Vec<Vec<usize>> {
        if remaining.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &first) in remaining.iter().enumerate() {
            let rest: Vec<usize> = remaining
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &v)| v)
                .collect();
            for mut tail in recurse(&rest) {
                tail.insert(0, first);
                out.push(tail);
            }
        }
        out
    }
    recurse(&(0..n).collect::<Vec<_>>())
}

/// Every connected graph on exactly `n` labeled-then-canonicalized
/// vertices, one per isomorphism class, in a deterministic order
/// (edge count, then canonical bitmask). Brute force; intended for `n ≤ 6`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let pairs = pair_index(n);
    // bit_maps[perm][bit] = the bit the edge moves to under the relabeling.
    let bit_maps: Vec<Vec<usize>> = permutations_of(n)
        .iter()
        .map(|perm| {
            pairs
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                    pairs.iter().position(|&p| p == (a, b)).unwrap()
                })
                .collect()
        })
        .collect();
    let mut seen: Vec<u64> = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        // Connectivity over all n vertices.
        let mut dsu = UnionFind::new(n);
        let mut parts = n;
        for (bit, &(u, v)) in pairs.iter().enumerate() {
            if mask & (1 << bit) != 0 && dsu.union(u, v) {
                parts -= 1;
            }
        }
        if parts != 1 {
            continue;
        }
        // Canonical form: minimum relabeled bitmask over all permutations.
        // Keep a mask only if it is its own canonical form, so each
        // isomorphism class surfaces exactly once.
        let canonical = bit_maps
            .iter()
            .map(|map| {
                let mut relabeled = 0u64;
                for (bit, &target) in map.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        relabeled |= 1 << target;
                    }
                }
                relabeled
            })
            .min()
            .unwrap();
        if canonical == mask {
            seen.push(canonical);
        }
    }
    seen.sort_by_key(|&mask| (mask.count_ones(), mask));
    seen.into_iter()
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &p)| p)
                .collect();
            Graph::new(n, edges).expect("canonical representative is simple")
        })
        .collect()
}

/// The named test corpus: all connected graphs on at most five vertices
/// (31 of them, including `K_5` and the bowtie), plus `C_6` and `C_8`.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for (index, g) in connected_graphs(n).into_iter().enumerate() {
            out.push((format!("g{n}_{index:02}"), g));
        }
    }
    out.push(("c6".to_string(), cycle(6)));
    out.push(("c8".to_string(), cycle(8)));
    out
}
