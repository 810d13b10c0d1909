//! The chromatic cochain complex of a graph over a graded algebra, built on
//! the full Boolean lattice of spanning subgraphs or on its NBC ideal.
//!
//! Every state `S` carries the tensor power `A^{⊗k(S)}` with one factor per
//! connected component, factors ordered by the component's minimum vertex.
//! A cover relation `S ⋖ S ∪ {e}` carries the identity when `e` closes a
//! cycle and the factor-merging multiplication when `e` joins two
//! components, multiplied by the balanced-coloring sign
//! `(-1)^{#{f ∈ S : f < e}}`. Homological degree is `|S|`; the internal
//! degree of the algebra grading is preserved by every map, so the
//! differential splits into independent `(i, j)` blocks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{self, GradedAlgebra, TensorBasis};
use crate::graph::{EdgeSubset, Graph, VertexPartition};
use crate::matrix::{IntMat, SparseMat};
use crate::nbc::{self, Matching, NbcError};
use crate::poly::LaurentPoly;

/// Which poset underlies the complex.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// All `2^m` spanning subgraphs.
    Full,
    /// Only the NBC states; exponentially smaller, same homology.
    Nbc,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Full => "full",
            Model::Nbc => "nbc",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Errors from complex construction and its structural certifications.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("balanced coloring violated on the diamond over {state} with edges {e} and {f}")]
    NotBalanced { state: EdgeSubset, e: usize, f: usize },
    #[error("edge maps do not commute on the diamond over {state} with edges {e} and {f}")]
    DiamondNotCommutative { state: EdgeSubset, e: usize, f: usize },
    #[error("d∘d ≠ 0 from bidegree ({i}, {j})")]
    DSquaredNonzero { i: usize, j: usize },
}

/// A ±1 label on a cover relation of the Boolean lattice.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn from_parity(count: u32) -> Sign {
        if count % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// The balanced coloring of the Boolean lattice:
/// `c(S ⋖ S + e) = (-1)^{#{f ∈ S : f < e}}`.
///
/// # Panics
/// If `e ∈ s`.
pub fn coloring_sign(s: EdgeSubset, e: usize) -> Sign {
    assert!(!s.contains(e), "not a cover relation: edge {e} already present");
    Sign::from_parity(s.below(e).len() as u32)
}

fn balanced_with<F: Fn(EdgeSubset, usize) -> Sign>(
    g: &Graph,
    sign: F,
) -> Result<(), ComplexError> {
    let m = g.n_edges();
    for s in g.all_subsets() {
        for e in 0..m {
            if s.contains(e) {
                continue;
            }
            for f in (e + 1)..m {
                if s.contains(f) {
                    continue;
                }
                let product = sign(s, e) * sign(s, f) * sign(s.with(e), f) * sign(s.with(f), e);
                if product != Sign::Minus {
                    return Err(ComplexError::NotBalanced { state: s, e, f });
                }
            }
        }
    }
    Ok(())
}

/// Checks that every diamond of the Boolean lattice carries an odd number
/// of `-1` signs — the condition that makes `d∘d = 0`. Exhaustive over all
/// `2^m` diamonds.
pub fn verify_balanced(g: &Graph) -> Result<(), ComplexError> {
    balanced_with(g, coloring_sign)
}

/// The per-edge map of the chromatic functor on the cover `S ⋖ S ∪ {e}`,
/// as an unsigned matrix from the tensor basis of `A^{⊗k(S)}` to that of
/// `A^{⊗k(S ∪ {e})}`.
///
/// If `e` closes a cycle the partition is unchanged and the map is
/// literally the identity; otherwise it multiplies the factors of the two
/// components being joined, product at the smaller position.
pub fn edge_map(g: &Graph, a: &GradedAlgebra, s: EdgeSubset, e: usize) -> IntMat {
    let partition = g.components(s);
    let (u, v) = g.edge(e);
    let (p, q) = (partition.block_of(u), partition.block_of(v));
    let k = partition.block_count();
    if p == q {
        // The merged partition is unchanged, so the min-vertex factor order
        // is unchanged and the identity is literal.
        assert_eq!(
            partition,
            g.components(s.with(e)),
            "cycle-closing edge changed the partition"
        );
        IntMat::identity(a.dim().pow(k as u32))
    } else {
        algebra::multiplication_matrix(a, k, p, q)
    }
}

/// One step of the functor applied to a linear combination of tensor basis
/// tuples, without sign. Used for diamond checks so composition happens at
/// tuple level instead of via full matrix products.
fn apply_cover(
    g: &Graph,
    a: &GradedAlgebra,
    s: EdgeSubset,
    e: usize,
    input: &BTreeMap<Vec<usize>, i64>,
) -> BTreeMap<Vec<usize>, i64> {
    let partition = g.components(s);
    let (u, v) = g.edge(e);
    let (p, q) = (partition.block_of(u), partition.block_of(v));
    if p == q {
        return input.clone();
    }
    let (lo, hi) = (p.min(q), p.max(q));
    let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for (tuple, &coeff) in input {
        for &(product, c) in a.product(tuple[p], tuple[q]) {
            let mut target = Vec::with_capacity(tuple.len() - 1);
            for (slot, &f) in tuple.iter().enumerate() {
                if slot == hi {
                    continue;
                }
                target.push(if slot == lo { product } else { f });
            }
            *out.entry(target).or_insert(0) += coeff * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Checks that the unsigned per-edge maps commute on every diamond
/// `{S, S+e, S+f, S+e+f}`. Exhaustive; reports the first violation.
pub fn verify_diamond_commutativity(g: &Graph, a: &GradedAlgebra) -> Result<(), ComplexError> {
    let m = g.n_edges();
    for s in g.all_subsets() {
        let k = g.component_count(s);
        let basis = TensorBasis::new(a, k);
        for e in 0..m {
            if s.contains(e) {
                continue;
            }
            for f in (e + 1)..m {
                if s.contains(f) {
                    continue;
                }
                for rank in 0..basis.len() {
                    let start: BTreeMap<Vec<usize>, i64> =
                        [(basis.element(rank).factors().to_vec(), 1)].into();
                    let via_e = apply_cover(g, a, s.with(e), f, &apply_cover(g, a, s, e, &start));
                    let via_f = apply_cover(g, a, s.with(f), e, &apply_cover(g, a, s, f, &start));
                    if via_e != via_f {
                        return Err(ComplexError::DiamondNotCommutative { state: s, e, f });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks the hypotheses under which a complete acyclic matching on an
/// ideal deletes it from the complex without changing homology:
/// the matching covers `BC` perfectly, its reversed cover digraph is
/// acyclic, and every matched per-edge map is an isomorphism (here, an
/// identity, because matched edges close cycles).
pub fn verify_morse_hypothesis(
    g: &Graph,
    a: &GradedAlgebra,
    m: &Matching,
) -> Result<(), NbcError> {
    nbc::verify_perfect(g, m)?;
    nbc::verify_acyclic(g, m)?;
    for &(s, t) in m.pairs() {
        let e = (s ^ t).iter().next().expect("cover pair differs in one edge");
        if !g.completes_cycle(s, e) || !edge_map(g, a, s, e).is_identity() {
            return Err(NbcError::NotIsomorphism { lower: s, upper: t });
        }
    }
    Ok(())
}

struct StateData {
    subset: EdgeSubset,
    partition: VertexPartition,
    basis: TensorBasis,
    /// For each tensor rank: (internal degree, local index within that
    /// degree's slice of this state).
    slot: Vec<(usize, usize)>,
    /// Starting offset of this state's degree-j slice inside `C^{i,j}`.
    offsets: BTreeMap<usize, usize>,
}

/// The assembled based complex: states grouped by homological degree, one
/// signed sparse block `d^{i,j} : C^{i,j} → C^{i+1,j}` per bidegree.
///
/// States are indexed deterministically — enumeration order within each
/// homological degree, lexicographic tensor basis within each state — so a
/// complex serializes byte-identically across runs.
pub struct BasedComplex {
    graph: Graph,
    algebra: GradedAlgebra,
    model: Model,
    states: Vec<StateData>,
    by_rank: Vec<Vec<usize>>,
    dims: BTreeMap<(usize, usize), usize>,
    blocks: BTreeMap<(usize, usize), SparseMat>,
}

/// Builds the complex for `g` over `a` on the chosen state set.
///
/// The NBC model is built directly on the NBC ideal — states that contain
/// a broken circuit never exist, which is the whole performance payoff.
pub fn build_complex(g: &Graph, a: &GradedAlgebra, model: Model) -> BasedComplex {
    let subsets: Vec<EdgeSubset> = match model {
        Model::Full => g.all_subsets().collect(),
        Model::Nbc => nbc::nbc_sets(g).collect(),
    };
    let mut by_rank: Vec<Vec<usize>> = vec![Vec::new(); g.n_edges() + 1];
    let mut states: Vec<StateData> = Vec::with_capacity(subsets.len());
    let mut state_index: HashMap<u64, usize> = HashMap::with_capacity(subsets.len());
    for subset in subsets {
        let partition = g.components(subset);
        let basis = TensorBasis::new(a, partition.block_count());
        let mut per_degree: BTreeMap<usize, usize> = BTreeMap::new();
        let slot = (0..basis.len())
            .map(|rank| {
                let j = basis.degree(rank);
                let local = per_degree.entry(j).or_insert(0);
                let index = *local;
                *local += 1;
                (j, index)
            })
            .collect();
        state_index.insert(subset.bits(), states.len());
        by_rank[subset.len()].push(states.len());
        states.push(StateData {
            subset,
            partition,
            basis,
            slot,
            offsets: BTreeMap::new(),
        });
    }

    // Offsets and dimensions per bidegree.
    let mut dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, rank_states) in by_rank.iter().enumerate() {
        for &id in rank_states {
            let counts: BTreeMap<usize, usize> =
                states[id].slot.iter().fold(BTreeMap::new(), |mut acc, &(j, _)| {
                    *acc.entry(j).or_insert(0) += 1;
                    acc
                });
            for (j, count) in counts {
                let dim = dims.entry((i, j)).or_insert(0);
                states[id].offsets.insert(j, *dim);
                *dim += count;
            }
        }
    }

    // Differential blocks: signed per-edge maps over all cover relations
    // present in the state set.
    let mut triples: BTreeMap<(usize, usize), Vec<(usize, usize, i64)>> = BTreeMap::new();
    let mut factors = Vec::new();
    let mut expansion = Vec::new();
    for source_id in 0..states.len() {
        let subset = states[source_id].subset;
        let i = subset.len();
        for e in 0..g.n_edges() {
            if subset.contains(e) {
                continue;
            }
            let Some(&target_id) = state_index.get(&subset.with(e).bits()) else {
                continue;
            };
            let sign = coloring_sign(subset, e).value();
            let (u, v) = g.edge(e);
            let source = &states[source_id];
            let target = &states[target_id];
            let (p, q) = (source.partition.block_of(u), source.partition.block_of(v));
            if p == q {
                assert_eq!(
                    source.partition, target.partition,
                    "cycle-closing edge changed the partition"
                );
                for rank in 0..source.basis.len() {
                    let (j, local) = source.slot[rank];
                    let col = source.offsets[&j] + local;
                    let (tj, tlocal) = target.slot[rank];
                    debug_assert_eq!(j, tj);
                    let row = target.offsets[&j] + tlocal;
                    triples.entry((i, j)).or_default().push((row, col, sign));
                }
            } else {
                factors.resize(source.basis.tensor_power(), 0);
                for rank in 0..source.basis.len() {
                    source.basis.decode_into(rank, &mut factors);
                    let (j, local) = source.slot[rank];
                    let col = source.offsets[&j] + local;
                    algebra::merge_factors(a, &factors, p, q, &mut expansion);
                    for &(target_rank, coeff) in &expansion {
                        let (tj, tlocal) = target.slot[target_rank];
                        debug_assert_eq!(j, tj);
                        let row = target.offsets[&j] + tlocal;
                        triples
                            .entry((i, j))
                            .or_default()
                            .push((row, col, sign * coeff));
                    }
                }
            }
        }
    }

    let mut blocks = BTreeMap::new();
    for &(i, j) in dims.keys() {
        let rows = dims.get(&(i + 1, j)).copied().unwrap_or(0);
        let cols = dims[&(i, j)];
        let block = match triples.remove(&(i, j)) {
            Some(list) => SparseMat::from_triples(rows, cols, list),
            None => SparseMat::zeros(rows, cols),
        };
        blocks.insert((i, j), block);
    }

    BasedComplex {
        graph: g.clone(),
        algebra: a.clone(),
        model,
        states,
        by_rank,
        dims,
        blocks,
    }
}

impl BasedComplex {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// States as `(subset, homological degree, dimension per internal
    /// degree)`, in the deterministic state order.
    pub fn states(&self) -> Vec<(EdgeSubset, usize, BTreeMap<usize, usize>)> {
        self.by_rank
            .iter()
            .flatten()
            .map(|&id| {
                let state = &self.states[id];
                let mut dims: BTreeMap<usize, usize> = BTreeMap::new();
                for &(j, _) in &state.slot {
                    *dims.entry(j).or_insert(0) += 1;
                }
                (state.subset, state.subset.len(), dims)
            })
            .collect()
    }

    /// Dimensions of every nonzero `C^{i,j}`.
    pub fn dims(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.dims
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total dimension `Σ dim C^{i,j}`.
    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// The internal degrees that occur.
    pub fn internal_degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.dims.keys().map(|&(_, j)| j).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The differential `d^{i,j} : C^{i,j} → C^{i+1,j}`, if `C^{i,j}` is
    /// nonzero. Signs are folded in.
    pub fn differential(&self, i: usize, j: usize) -> Option<&SparseMat> {
        self.blocks.get(&(i, j))
    }

    /// Largest homological degree with a nonzero group.
    pub fn max_homological_degree(&self) -> usize {
        self.dims.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Verifies `d∘d = 0` in every bidegree.
    pub fn verify_d_squared(&self) -> Result<(), ComplexError> {
        for (&(i, j), first) in &self.blocks {
            if let Some(second) = self.blocks.get(&(i + 1, j)) {
                if first.nnz() > 0 && second.nnz() > 0 && second.matmul(first).nnz() > 0 {
                    return Err(ComplexError::DSquaredNonzero { i, j });
                }
            }
        }
        Ok(())
    }

    /// The graded Euler characteristic `Σ (-1)^i q^j dim C^{i,j}`.
    pub fn graded_euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, j), &dim) in &self.dims {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            p.add_term(j as i64, sign * dim as i64);
        }
        p
    }

    /// Serializes the complex: states with degrees, blocks as
    /// coordinate-list sparse matrices with signs folded in. Deterministic.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct StateDump {
            edges: Vec<usize>,
            i: usize,
            k: usize,
            dims: BTreeMap<usize, usize>,
        }
        #[derive(Serialize)]
        struct BlockDump<'a> {
            i: usize,
            j: usize,
            rows: usize,
            cols: usize,
            entries: &'a [(u32, u32, i64)],
        }
        #[derive(Serialize)]
        struct Dump<'a> {
            model: Model,
            n_vertices: usize,
            edges: &'a [(usize, usize)],
            algebra_degrees: &'a [usize],
            states: Vec<StateDump>,
            differentials: Vec<BlockDump<'a>>,
        }
        let states = self
            .by_rank
            .iter()
            .flatten()
            .map(|&id| {
                let state = &self.states[id];
                let mut dims: BTreeMap<usize, usize> = BTreeMap::new();
                for &(j, _) in &state.slot {
                    *dims.entry(j).or_insert(0) += 1;
                }
                StateDump {
                    edges: state.subset.iter().collect(),
                    i: state.subset.len(),
                    k: state.partition.block_count(),
                    dims,
                }
            })
            .collect();
        let differentials = self
            .blocks
            .iter()
            .map(|(&(i, j), block)| BlockDump {
                i,
                j,
                rows: block.rows,
                cols: block.cols,
                entries: &block.entries,
            })
            .collect();
        let dump = Dump {
            model: self.model,
            n_vertices: self.graph.n_vertices(),
            edges: self.graph.edges(),
            algebra_degrees: self.algebra.degrees(),
            states,
            differentials,
        };
        serde_json::to_string_pretty(&dump).expect("complex serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn k2() -> Graph {
        Graph::new(2, vec![(0, 1)]).unwrap()
    }

    fn k3() -> Graph {
        Graph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn coloring_sign_formula() {
        let empty = EdgeSubset::empty(3);
        assert_eq!(coloring_sign(empty, 0), Sign::Plus);
        assert_eq!(coloring_sign(empty, 2), Sign::Plus);
        let s = EdgeSubset::from_indices(3, &[0]);
        assert_eq!(coloring_sign(s, 1), Sign::Minus);
        let s = EdgeSubset::from_indices(3, &[1]);
        assert_eq!(coloring_sign(s, 0), Sign::Plus);
    }

    #[test]
    fn one_diamond_by_hand() {
        // Over ∅ with edges e0, e1: signs (+, +, -, +), one -1: odd.
        let empty = EdgeSubset::empty(2);
        let signs = [
            coloring_sign(empty, 0),
            coloring_sign(empty, 1),
            coloring_sign(empty.with(0), 1),
            coloring_sign(empty.with(1), 0),
        ];
        assert_eq!(signs, [Sign::Plus, Sign::Plus, Sign::Minus, Sign::Plus]);
    }

    #[test]
    fn balanced_on_small_graphs() {
        for g in [k2(), k3(), catalog::cycle(4), catalog::complete(4), catalog::bowtie()] {
            assert_eq!(verify_balanced(&g), Ok(()));
        }
        // Graphs with at most one edge are vacuously balanced.
        assert_eq!(verify_balanced(&Graph::new(3, vec![]).unwrap()), Ok(()));
    }

    #[test]
    fn corrupted_sign_table_fails_balance() {
        // Zeroing the dependence on the state makes every diamond even.
        let err = balanced_with(&k3(), |_, _| Sign::Plus);
        assert!(matches!(err, Err(ComplexError::NotBalanced { .. })));
    }

    #[test]
    fn edge_maps_on_triangle() {
        let a2 = GradedAlgebra::am(2).unwrap();
        // Cycle-closing edge: identity on A^{⊗1}.
        let m = edge_map(&k3(), &a2, EdgeSubset::from_indices(3, &[0, 1]), 2);
        assert!(m.is_identity());
        assert_eq!(m.rows(), 2);
        // K2: the multiplication matrix itself.
        let m = edge_map(&k2(), &a2, EdgeSubset::empty(1), 0);
        assert_eq!(m, algebra::multiplication_matrix(&a2, 2, 0, 1));
        // K3 from ∅: merging two of three singleton components.
        let m = edge_map(&k3(), &a2, EdgeSubset::empty(3), 0);
        assert_eq!(m, algebra::multiplication_matrix(&a2, 3, 0, 1));
        assert_eq!((m.rows(), m.cols()), (4, 8));
    }

    #[test]
    fn diamonds_commute() {
        let a2 = GradedAlgebra::am(2).unwrap();
        let a3 = GradedAlgebra::am(3).unwrap();
        for g in [k2(), k3(), catalog::star(3), catalog::cycle(4)] {
            assert_eq!(verify_diamond_commutativity(&g, &a2), Ok(()));
        }
        assert_eq!(verify_diamond_commutativity(&catalog::cycle(4), &a3), Ok(()));
    }

    #[test]
    fn morse_hypothesis_on_small_graphs() {
        let a2 = GradedAlgebra::am(2).unwrap();
        let a3 = GradedAlgebra::am(3).unwrap();
        for g in [k3(), catalog::cycle(4), catalog::complete(4)] {
            let m = nbc::build_matching(&g);
            assert_eq!(verify_morse_hypothesis(&g, &a2, &m), Ok(()));
        }
        let c4 = catalog::cycle(4);
        assert_eq!(
            verify_morse_hypothesis(&c4, &a3, &nbc::build_matching(&c4)),
            Ok(())
        );
        // Trees: vacuously true on the empty matching.
        let tree = catalog::path(4);
        assert_eq!(
            verify_morse_hypothesis(&tree, &a2, &nbc::build_matching(&tree)),
            Ok(())
        );
    }

    #[test]
    fn k2_complex_by_hand() {
        let a2 = GradedAlgebra::am(2).unwrap();
        let c = build_complex(&k2(), &a2, Model::Full);
        assert_eq!(c.state_count(), 2);
        // i = 0: A⊗A has dims 1, 2, 1 in degrees 0, 1, 2.
        assert_eq!(c.dim(0, 0), 1);
        assert_eq!(c.dim(0, 1), 2);
        assert_eq!(c.dim(0, 2), 1);
        // i = 1: A has dims 1, 1 in degrees 0, 1.
        assert_eq!(c.dim(1, 0), 1);
        assert_eq!(c.dim(1, 1), 1);
        assert_eq!(c.dim(1, 2), 0);
        // d^0 is the multiplication with sign +1.
        let d00 = c.differential(0, 0).unwrap().to_dense();
        assert_eq!(d00.row_slice(0), &[1]);
        let d01 = c.differential(0, 1).unwrap().to_dense();
        assert_eq!(d01.row_slice(0), &[1, 1]);
        let d02 = c.differential(0, 2).unwrap();
        assert_eq!(d02.nnz(), 0);
        assert_eq!(c.verify_d_squared(), Ok(()));
    }

    #[test]
    fn k3_complex_dimensions() {
        let a2 = GradedAlgebra::am(2).unwrap();
        let c = build_complex(&k3(), &a2, Model::Full);
        assert_eq!(c.state_count(), 8);
        // Total dims by homological degree: 8, 3·4, 3·2, 2.
        let total =
            |i: usize| -> usize { c.dims().iter().filter(|(&(a, _), _)| a == i).map(|(_, d)| d).sum() };
        assert_eq!(total(0), 8);
        assert_eq!(total(1), 12);
        assert_eq!(total(2), 6);
        assert_eq!(total(3), 2);
        assert_eq!(c.verify_d_squared(), Ok(()));

        let nbc_complex = build_complex(&k3(), &a2, Model::Nbc);
        assert_eq!(nbc_complex.state_count(), 6);
        assert!(nbc_complex
            .states()
            .iter()
            .all(|&(s, _, _)| s != EdgeSubset::from_indices(3, &[0, 1]) && s != k3().full_subset()));
        assert_eq!(nbc_complex.verify_d_squared(), Ok(()));
    }

    #[test]
    fn euler_characteristics() {
        let a2 = GradedAlgebra::am(2).unwrap();
        let c = build_complex(&k2(), &a2, Model::Full);
        // (1+q)^2 - (1+q) = q + q^2.
        assert_eq!(c.graded_euler_characteristic().to_string(), "q + q^2");

        let edgeless = Graph::new(3, vec![]).unwrap();
        let c = build_complex(&edgeless, &a2, Model::Full);
        assert_eq!(c.graded_euler_characteristic(), a2.qrank().pow(3));
    }

    #[test]
    fn d_squared_zero_both_models() {
        let a2 = GradedAlgebra::am(2).unwrap();
        let a3 = GradedAlgebra::am(3).unwrap();
        for g in [k3(), catalog::cycle(4), catalog::complete(4), catalog::paw()] {
            for model in [Model::Full, Model::Nbc] {
                assert_eq!(build_complex(&g, &a2, model).verify_d_squared(), Ok(()));
                assert_eq!(build_complex(&g, &a3, model).verify_d_squared(), Ok(()));
            }
        }
    }

    #[test]
    fn dump_is_deterministic() {
        let a2 = GradedAlgebra::am(2).unwrap();
        let one = build_complex(&k3(), &a2, Model::Nbc).to_json();
        let two = build_complex(&k3(), &a2, Model::Nbc).to_json();
        assert_eq!(one, two);
        assert!(one.contains("\"model\": \"nbc\""));
    }
}
