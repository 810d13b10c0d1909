//! Broken circuits, NBC states, and the acyclic matching on the rest.
//!
//! Fix a graph with its edge order. A *broken circuit* is a cycle minus its
//! largest edge; a state is *NBC* if it contains no broken circuit, and `BC`
//! is the complement in `2^E`. An equivalent working characterization drives
//! everything here: `S` contains a broken circuit exactly when some edge `e`
//! (inside `S` or not) has its endpoints connected by a path in `S` using
//! only edges smaller than `e` — the path *is* the broken circuit, and the
//! cycle it closes has `e` as its largest edge.
//!
//! Pairing each `BC` state with the same state toggled at the largest such
//! pivot edge produces a matching on the Hasse diagram of `2^E` whose pairs
//! preserve the vertex partition and whose arrow-reversed cover digraph is
//! acyclic. That matching is what licenses dropping every `BC` state from
//! the chain complex without changing homology.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::graph::{EdgeSubset, Graph, UnionFind};

/// Errors from matching certification.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NbcError {
    #[error("sequence is not a linear extension: {subset} is a subset of {superset} but appears after it")]
    NotLinearExtension {
        subset: EdgeSubset,
        superset: EdgeSubset,
    },
    #[error("matching is not perfect on BC: {witness}")]
    NotPerfect { witness: String },
    #[error("matched pair ({lower}, {upper}) changes the vertex partition")]
    PartitionChanged {
        lower: EdgeSubset,
        upper: EdgeSubset,
    },
    #[error("reversed cover digraph on BC contains a directed cycle through {witness}")]
    DirectedCycle { witness: EdgeSubset },
    #[error("matched component map for pair ({lower}, {upper}) is not an identity")]
    NotIsomorphism {
        lower: EdgeSubset,
        upper: EdgeSubset,
    },
}

/// The pivot edge of a `BC` state: the largest edge `e` whose endpoints are
/// connected in `s` restricted to edges strictly smaller than `e`. Returns
/// `None` exactly when `s` is NBC.
///
/// Note `e` itself may or may not lie in `s`; only the path below it must.
pub fn pivot_edge(g: &Graph, s: EdgeSubset) -> Option<usize> {
    for e in (0..g.n_edges()).rev() {
        let (u, v) = g.edge(e);
        let mut dsu = UnionFind::new(g.n_vertices());
        for f in s.below(e).iter() {
            let (a, b) = g.edge(f);
            dsu.union(a, b);
        }
        if dsu.connected(u, v) {
            return Some(e);
        }
    }
    None
}

/// Whether `s` contains no broken circuit.
pub fn is_nbc(g: &Graph, s: EdgeSubset) -> bool {
    pivot_edge(g, s).is_none()
}

/// The matching involution on `BC`: toggles the pivot edge.
///
/// Toggling the pivot never changes which edge is the pivot, so applying
/// this twice gives back `s`.
///
/// # Panics
/// If `s` is NBC (the involution is only defined on `BC`).
pub fn involution(g: &Graph, s: EdgeSubset) -> EdgeSubset {
    let e = pivot_edge(g, s).expect("involution is only defined on BC states");
    s.toggled(e)
}

/// A set of matched cover pairs `(S, S ∪ {e})` on the Boolean lattice.
///
/// [`build_matching`] produces the canonical pivot matching; arbitrary pair
/// sets can be assembled with [`Matching::from_pairs`] so that the
/// certification routines have something to reject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(EdgeSubset, EdgeSubset)>,
}

impl Matching {
    /// Wraps raw pairs without validation. Each pair should be a cover
    /// relation `(S, S ∪ {e})`; nothing else is assumed, and the
    /// `verify_*` routines exist precisely to check the rest.
    pub fn from_pairs(mut pairs: Vec<(EdgeSubset, EdgeSubset)>) -> Self {
        pairs.sort_by(pair_order);
        Matching { pairs }
    }

    /// Pairs ordered by (cardinality of the lower end ascending, then lower
    /// end lexicographically descending) — the order the linear extension
    /// interleaves.
    pub fn pairs(&self) -> &[(EdgeSubset, EdgeSubset)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn pair_order(
    a: &(EdgeSubset, EdgeSubset),
    b: &(EdgeSubset, EdgeSubset),
) -> std::cmp::Ordering {
    a.0.len()
        .cmp(&b.0.len())
        .then_with(|| a.0.lex_cmp(&b.0).reverse())
}

/// Builds the pivot matching on `BC`: the orbit pairs of [`involution`].
///
/// Every `BC` state appears in exactly one pair, and each pair has the form
/// `(S, S ∪ {pivot})` where the pivot completes a cycle in `S` — so both
/// ends have the same vertex partition.
///
/// Enumerates all `2^m` states; meant for desk-scale edge counts.
pub fn build_matching(g: &Graph) -> Matching {
    let mut pairs = Vec::new();
    for s in g.all_subsets() {
        if let Some(e) = pivot_edge(g, s) {
            if !s.contains(e) {
                pairs.push((s, s.with(e)));
            }
        }
    }
    Matching::from_pairs(pairs)
}

/// All `BC` states, in ascending bitmask order. Exponential scan.
pub fn bc_sets(g: &Graph) -> Vec<EdgeSubset> {
    g.all_subsets().filter(|&s| !is_nbc(g, s)).collect()
}

/// Certifies that `m` covers `BC` perfectly: the pairs are disjoint cover
/// relations whose ends are exactly the `BC` states, each used once.
pub fn verify_perfect(g: &Graph, m: &Matching) -> Result<(), NbcError> {
    let mut seen: HashSet<EdgeSubset> = HashSet::new();
    for &(s, t) in m.pairs() {
        if !(s.is_subset_of(&t) && t.len() == s.len() + 1) {
            return Err(NbcError::NotPerfect {
                witness: format!("pair ({s}, {t}) is not a cover relation"),
            });
        }
        for state in [s, t] {
            if is_nbc(g, state) {
                return Err(NbcError::NotPerfect {
                    witness: format!("matched state {state} is NBC"),
                });
            }
            if !seen.insert(state) {
                return Err(NbcError::NotPerfect {
                    witness: format!("state {state} appears in two pairs"),
                });
            }
        }
    }
    let bc = bc_sets(g);
    if seen.len() != bc.len() {
        return Err(NbcError::NotPerfect {
            witness: format!("{} matched states, but |BC| = {}", seen.len(), bc.len()),
        });
    }
    Ok(())
}

/// Certifies that every matched pair preserves the vertex partition (and so
/// the size partition): the toggled edge must complete a cycle.
pub fn verify_partition_preserved(g: &Graph, m: &Matching) -> Result<(), NbcError> {
    for &(s, t) in m.pairs() {
        if g.components(s) != g.components(t) {
            return Err(NbcError::PartitionChanged { lower: s, upper: t });
        }
    }
    Ok(())
}

/// Certifies acyclicity of the matching.
///
/// The cover digraph on the `BC` states has an arrow `S → T` for every
/// cover relation `S ⋖ T` inside `BC`; matched arrows are reversed. The
/// matching is acyclic when the result has no directed cycle.
pub fn verify_acyclic(g: &Graph, m: &Matching) -> Result<(), NbcError> {
    let states = bc_sets(g);
    let mut index: HashMap<EdgeSubset, usize> = HashMap::new();
    for (i, &s) in states.iter().enumerate() {
        index.insert(s, i);
    }
    let matched: HashSet<(EdgeSubset, EdgeSubset)> = m.pairs().iter().copied().collect();
    let mut arrows: Vec<Vec<usize>> = vec![Vec::new(); states.len()];
    for (i, &s) in states.iter().enumerate() {
        for e in 0..g.n_edges() {
            if s.contains(e) {
                continue;
            }
            let t = s.with(e);
            let Some(&j) = index.get(&t) else { continue };
            if matched.contains(&(s, t)) {
                arrows[j].push(i);
            } else {
                arrows[i].push(j);
            }
        }
    }
    // Iterative three-color depth-first search for a directed cycle.
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color = vec![Color::White; states.len()];
    for root in 0..states.len() {
        if color[root] != Color::White {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        color[root] = Color::Gray;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next < arrows[node].len() {
                let target = arrows[node][*next];
                *next += 1;
                match color[target] {
                    Color::Gray => {
                        return Err(NbcError::DirectedCycle {
                            witness: states[target],
                        })
                    }
                    Color::White => {
                        color[target] = Color::Gray;
                        stack.push((target, 0));
                    }
                    Color::Black => {}
                }
            } else {
                color[node] = Color::Black;
                stack.pop();
            }
        }
    }
    Ok(())
}

/// The certified linear extension witnessing acyclicity.
///
/// Lower ends are ordered by cardinality and then lexicographically
/// descending; the sequence interleaves each upper end directly after its
/// lower end: `S_1, T_1, S_2, T_2, ...`. The result is checked exhaustively
/// to be a linear extension of inclusion on `BC`: whenever both `U ⊂ V`
/// appear, `U` appears first. A violation is reported with the offending
/// pair.
pub fn linear_extension(m: &Matching) -> Result<Vec<EdgeSubset>, NbcError> {
    let mut sequence = Vec::with_capacity(2 * m.len());
    let mut pairs = m.pairs().to_vec();
    pairs.sort_by(pair_order);
    for (s, t) in pairs {
        sequence.push(s);
        sequence.push(t);
    }
    // Nothing may strictly contain an element that appears after it.
    for a in 0..sequence.len() {
        for b in (a + 1)..sequence.len() {
            if sequence[b] != sequence[a] && sequence[b].is_subset_of(&sequence[a]) {
                return Err(NbcError::NotLinearExtension {
                    subset: sequence[b],
                    superset: sequence[a],
                });
            }
        }
    }
    Ok(sequence)
}

/// Streams the NBC states of `g`, each exactly once.
///
/// Depth-first over edge indices in increasing order, taking the
/// include-branch before the exclude-branch; a branch is pruned as soon as
/// its partial state contains a broken circuit, which is sound because NBC
/// is a lower order ideal. The order is deterministic and the iterator is
/// freely restartable via [`nbc_sets`].
#[derive(Clone)]
pub struct NbcSets<'a> {
    graph: &'a Graph,
    stack: Vec<(EdgeSubset, usize)>,
}

impl<'a> Iterator for NbcSets<'a> {
    type Item = EdgeSubset;

    fn next(&mut self) -> Option<EdgeSubset> {
        let m = self.graph.n_edges();
        while let Some((state, depth)) = self.stack.pop() {
            if depth == m {
                return Some(state);
            }
            // Exclude-branch is pushed first so the include-branch pops first.
            self.stack.push((state, depth + 1));
            let with_edge = state.with(depth);
            if is_nbc(self.graph, with_edge) {
                self.stack.push((with_edge, depth + 1));
            }
        }
        None
    }
}

/// Iterator over the NBC states. See [`NbcSets`] for the order.
pub fn nbc_sets(g: &Graph) -> NbcSets<'_> {
    NbcSets {
        graph: g,
        stack: vec![(g.empty_subset(), 0)],
    }
}

/// `|NBC|`, by streaming.
pub fn nbc_count(g: &Graph) -> usize {
    nbc_sets(g).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn k3() -> Graph {
        Graph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    /// Independent oracle: pivot via explicit cycle enumeration. The pivot
    /// is the largest edge `e` such that some cycle with largest edge `e`
    /// has all its other edges inside `s`.
    fn pivot_by_cycle_enumeration(g: &Graph, s: EdgeSubset) -> Option<usize> {
        crate::verify::all_cycles(g)
            .into_iter()
            .filter_map(|cycle| {
                let max = cycle.iter().max().unwrap();
                let broken = cycle.without(max);
                broken.is_subset_of(&s).then_some(max)
            })
            .max()
    }

    #[test]
    fn pivot_on_triangle() {
        let g = k3();
        let s = EdgeSubset::from_indices(3, &[0, 1]);
        assert_eq!(pivot_edge(&g, s), Some(2));
        assert_eq!(pivot_by_cycle_enumeration(&g, s), Some(2));
        let s = EdgeSubset::from_indices(3, &[1, 2]);
        assert_eq!(pivot_edge(&g, s), None);
        assert_eq!(pivot_by_cycle_enumeration(&g, s), None);
        assert_eq!(pivot_edge(&g, g.empty_subset()), None);
    }

    #[test]
    fn pivot_matches_cycle_oracle_on_small_corpus() {
        for g in [
            k3(),
            catalog::cycle(4),
            catalog::complete(4),
            catalog::paw(),
            catalog::bowtie(),
        ] {
            for s in g.all_subsets() {
                assert_eq!(
                    pivot_edge(&g, s),
                    pivot_by_cycle_enumeration(&g, s),
                    "graph {g:?}, subset {s}"
                );
            }
        }
    }

    #[test]
    fn nbc_membership_on_triangle() {
        let g = k3();
        assert!(!is_nbc(&g, EdgeSubset::from_indices(3, &[0, 1])));
        assert!(is_nbc(&g, EdgeSubset::from_indices(3, &[0, 2])));
    }

    #[test]
    fn involution_toggles_pivot() {
        let g = k3();
        let s = EdgeSubset::from_indices(3, &[0, 1]);
        assert_eq!(involution(&g, s), g.full_subset());
        assert_eq!(involution(&g, g.full_subset()), s);

        let c4 = catalog::cycle(4);
        let s = EdgeSubset::from_indices(4, &[0, 1, 2]);
        assert_eq!(involution(&c4, s), c4.full_subset());
    }

    #[test]
    fn involution_is_an_involution() {
        for g in [k3(), catalog::cycle(4), catalog::complete(4), catalog::paw()] {
            for s in bc_sets(&g) {
                let t = involution(&g, s);
                assert!(!is_nbc(&g, t));
                assert_eq!(involution(&g, t), s);
                assert_eq!((s ^ t).len(), 1);
                assert_eq!(g.components(s), g.components(t));
            }
        }
    }

    #[test]
    fn matching_on_triangle() {
        let g = k3();
        let m = build_matching(&g);
        assert_eq!(
            m.pairs(),
            &[(EdgeSubset::from_indices(3, &[0, 1]), g.full_subset())]
        );
        assert_eq!(verify_perfect(&g, &m), Ok(()));
        assert_eq!(verify_partition_preserved(&g, &m), Ok(()));
        assert_eq!(verify_acyclic(&g, &m), Ok(()));
    }

    #[test]
    fn matching_on_trees_is_empty() {
        let p4 = catalog::path(4);
        assert!(build_matching(&p4).is_empty());
        assert_eq!(nbc_count(&p4), 8);
    }

    #[test]
    fn matching_is_perfect_on_small_corpus() {
        for g in [catalog::cycle(4), catalog::complete(4), catalog::bowtie()] {
            let m = build_matching(&g);
            let bc = bc_sets(&g);
            assert_eq!(2 * m.len(), bc.len());
            assert_eq!(verify_perfect(&g, &m), Ok(()));
            assert_eq!(verify_partition_preserved(&g, &m), Ok(()));
            assert_eq!(verify_acyclic(&g, &m), Ok(()));
        }
    }

    #[test]
    fn cyclic_fixture_is_rejected() {
        // Paw graph: triangle 0-1-2 plus a pendant edge. BC contains a full
        // diamond over {e0,e1}; wiring its covers into a directed 4-cycle
        // (via a deliberately overlapping pair set) must be caught.
        let g = catalog::paw();
        let s = EdgeSubset::from_indices(4, &[0, 1]);
        let m = Matching::from_pairs(vec![(s, s.with(3)), (s.with(3), s.with(3).with(2))]);
        assert!(matches!(
            verify_acyclic(&g, &m),
            Err(NbcError::DirectedCycle { .. })
        ));
    }

    #[test]
    fn linear_extension_on_triangle() {
        let g = k3();
        let m = build_matching(&g);
        let seq = linear_extension(&m).unwrap();
        assert_eq!(
            seq,
            vec![EdgeSubset::from_indices(3, &[0, 1]), g.full_subset()]
        );
    }

    #[test]
    fn linear_extension_on_small_corpus() {
        for g in [
            catalog::cycle(4),
            catalog::complete(4),
            catalog::paw(),
            catalog::bowtie(),
            catalog::cycle(6),
        ] {
            let m = build_matching(&g);
            let seq = linear_extension(&m).unwrap();
            assert_eq!(seq.len(), 2 * m.len());
        }
    }

    #[test]
    fn linear_extension_rejects_bad_order() {
        // Hand-built cover pairs whose sorted interleaving puts {0} after
        // {0,1} even though {0} ⊂ {0,1}: lower ends {1} and {0} have equal
        // size and {1} sorts first in descending lex order.
        let m = Matching::from_pairs(vec![
            (
                EdgeSubset::from_indices(3, &[1]),
                EdgeSubset::from_indices(3, &[0, 1]),
            ),
            (
                EdgeSubset::from_indices(3, &[0]),
                EdgeSubset::from_indices(3, &[0, 2]),
            ),
        ]);
        assert_eq!(
            linear_extension(&m),
            Err(NbcError::NotLinearExtension {
                subset: EdgeSubset::from_indices(3, &[0]),
                superset: EdgeSubset::from_indices(3, &[0, 1]),
            })
        );
    }

    #[test]
    fn nbc_sets_on_triangle() {
        let g = k3();
        let mut got: Vec<EdgeSubset> = nbc_sets(&g).collect();
        got.sort();
        let mut want = vec![
            g.empty_subset(),
            EdgeSubset::from_indices(3, &[0]),
            EdgeSubset::from_indices(3, &[1]),
            EdgeSubset::from_indices(3, &[2]),
            EdgeSubset::from_indices(3, &[0, 2]),
            EdgeSubset::from_indices(3, &[1, 2]),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn nbc_sets_match_filter_and_are_deterministic() {
        for g in [catalog::cycle(4), catalog::complete(4), catalog::paw()] {
            let mut streamed: Vec<EdgeSubset> = nbc_sets(&g).collect();
            let restreamed: Vec<EdgeSubset> = nbc_sets(&g).collect();
            assert_eq!(streamed, restreamed);
            streamed.sort();
            let mut filtered: Vec<EdgeSubset> =
                g.all_subsets().filter(|&s| is_nbc(&g, s)).collect();
            filtered.sort();
            assert_eq!(streamed, filtered);
        }
    }

    #[test]
    fn nbc_counts() {
        assert_eq!(nbc_count(&k3()), 6);
        let edgeless = Graph::new(4, vec![]).unwrap();
        assert_eq!(nbc_sets(&edgeless).collect::<Vec<_>>(), vec![edgeless.empty_subset()]);
        assert_eq!(nbc_count(&catalog::complete(4)), 24);
        assert_eq!(nbc_count(&catalog::complete(5)), 120);
    }
}
