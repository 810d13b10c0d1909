//! Graphs with a fixed total order on their edges, and spanning-subgraph
//! state queries.
//!
//! The edge order is part of the data: broken circuits, the matching, and
//! the signs of the chain complex all depend on it. A [`Graph`] is immutable
//! after construction, so the order can never drift underneath a computation.

use std::fmt;

use thiserror::Error;

/// Errors from graph construction and edge-list parsing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: usize },
    #[error("edge {index} mentions vertex {vertex}, but the graph has {n_vertices} vertices")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        n_vertices: usize,
    },
    #[error("edges {first} and {second} join the same pair of vertices")]
    MultiEdge { first: usize, second: usize },
    #[error("a graph must have at least one vertex")]
    NoVertices,
    #[error("graphs with more than {} edges are not supported", EdgeSubset::MAX_EDGES)]
    TooManyEdges,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An undirected simple graph with an ordered edge list.
///
/// Vertices are `0..n_vertices`. Edges are unordered pairs, stored with the
/// smaller endpoint first; their position in the list is their place in the
/// fixed total order `e0 < e1 < ...`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n_vertices, self.edges)
    }
}

impl Graph {
    /// Builds a graph, validating that it is simple.
    ///
    /// Loops, repeated pairs, and out-of-range endpoints are rejected.
    /// The order of `edges` is preserved and defines the edge order.
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n_vertices == 0 {
            return Err(GraphError::NoVertices);
        }
        if edges.len() > EdgeSubset::MAX_EDGES {
            return Err(GraphError::TooManyEdges);
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (index, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(GraphError::Loop { index, vertex: u });
            }
            for &w in [u, v].iter() {
                if w >= n_vertices {
                    return Err(GraphError::VertexOutOfRange {
                        index,
                        vertex: w,
                        n_vertices,
                    });
                }
            }
            let pair = (u.min(v), u.max(v));
            if let Some(first) = normalized.iter().position(|&p| p == pair) {
                return Err(GraphError::MultiEdge {
                    first,
                    second: index,
                });
            }
            normalized.push(pair);
        }
        Ok(Graph {
            n_vertices,
            edges: normalized,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Endpoints of edge `e`, smaller vertex first.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn empty_subset(&self) -> EdgeSubset {
        EdgeSubset::empty(self.n_edges())
    }

    pub fn full_subset(&self) -> EdgeSubset {
        EdgeSubset::full(self.n_edges())
    }

    /// Iterates over all `2^m` edge subsets in ascending bitmask order.
    pub fn all_subsets(&self) -> impl Iterator<Item = EdgeSubset> + '_ {
        let m = self.n_edges();
        (0u64..(1u64 << m)).map(move |bits| EdgeSubset { bits, n_edges: m })
    }

    fn check_subset(&self, s: EdgeSubset) {
        assert_eq!(
            s.n_edges(),
            self.n_edges(),
            "edge subset over {} edges used with a graph on {} edges",
            s.n_edges(),
            self.n_edges()
        );
    }

    /// Connected components of the spanning subgraph `(V, s)`.
    ///
    /// Two vertices share a block exactly when `s` contains a path between
    /// them. Blocks come out sorted by their minimum vertex, which is the
    /// tensor-factor order used by the chain complex.
    ///
    /// # Panics
    /// If `s` was built for a graph with a different edge count.
    pub fn components(&self, s: EdgeSubset) -> VertexPartition {
        self.check_subset(s);
        let mut dsu = UnionFind::new(self.n_vertices);
        for e in s.iter() {
            let (u, v) = self.edges[e];
            dsu.union(u, v);
        }
        VertexPartition::from_union_find(&mut dsu)
    }

    /// `k(S)`: the number of connected components of `(V, s)`.
    pub fn component_count(&self, s: EdgeSubset) -> usize {
        self.check_subset(s);
        let mut dsu = UnionFind::new(self.n_vertices);
        let mut count = self.n_vertices;
        for e in s.iter() {
            let (u, v) = self.edges[e];
            if dsu.union(u, v) {
                count -= 1;
            }
        }
        count
    }

    /// `λ(S)` as an integer partition: component sizes, weakly decreasing.
    pub fn size_partition(&self, s: EdgeSubset) -> IntegerPartition {
        self.components(s).size_partition()
    }

    /// Whether adding `e` to `s` closes a cycle, i.e. the endpoints of `e`
    /// are already connected in `(V, s)`.
    ///
    /// # Panics
    /// If `e ∈ s`; the question only makes sense for a cover relation.
    pub fn completes_cycle(&self, s: EdgeSubset, e: usize) -> bool {
        self.check_subset(s);
        assert!(!s.contains(e), "edge {e} is already in the subset");
        let mut dsu = UnionFind::new(self.n_vertices);
        for f in s.iter() {
            let (u, v) = self.edges[f];
            dsu.union(u, v);
        }
        let (u, v) = self.edges[e];
        dsu.find(u) == dsu.find(v)
    }

    /// Whether `s` lies in the cycle space of the graph, i.e. is a union of
    /// edge-disjoint cycles. Equivalently, every vertex of `(V, s)` has even
    /// degree.
    pub fn is_cycle_space_member(&self, s: EdgeSubset) -> bool {
        self.check_subset(s);
        let mut degree = vec![0usize; self.n_vertices];
        for e in s.iter() {
            let (u, v) = self.edges[e];
            degree[u] += 1;
            degree[v] += 1;
        }
        degree.iter().all(|d| d % 2 == 0)
    }

    /// The graph with edge `e` removed (remaining edges keep their relative
    /// order).
    pub fn deleting(&self, e: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        Graph {
            n_vertices: self.n_vertices,
            edges,
        }
    }

    /// The graph with edge `e` contracted and the result simplified: the two
    /// endpoints merge, parallel edges collapse, and loops vanish. Vertices
    /// are relabeled to stay contiguous. Parallel edges keep the position of
    /// their earliest representative.
    pub fn contracting(&self, e: usize) -> Graph {
        let (a, b) = self.edges[e];
        // Merge b into a, then shift labels above b down by one.
        let relabel = |v: usize| {
            let v = if v == b { a } else { v };
            if v > b {
                v - 1
            } else {
                v
            }
        };
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if i == e {
                continue;
            }
            let (u, v) = (relabel(u), relabel(v));
            if u == v {
                continue;
            }
            let pair = (u.min(v), u.max(v));
            if !edges.contains(&pair) {
                edges.push(pair);
            }
        }
        Graph {
            n_vertices: self.n_vertices - 1,
            edges,
        }
    }

    /// Parses the edge-list text format.
    ///
    /// The first meaningful line is `n <n_vertices>`; every following
    /// meaningful line is `u v` and appends the next edge in the fixed
    /// order, so the edge order is exactly the line order. `#` starts a
    /// comment, blank lines are skipped.
    ///
    /// ```
    /// use chromahom::graph::Graph;
    ///
    /// let g = Graph::parse("# a triangle\nn 3\n0 1\n0 2\n1 2\n").unwrap();
    /// assert_eq!(g.n_vertices(), 3);
    /// assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    /// ```
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut n_vertices: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge_lines: Vec<usize> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let content = content.trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            if n_vertices.is_none() {
                if tokens.next() != Some("n") {
                    return Err(GraphError::Parse {
                        line,
                        message: "expected header line `n <n_vertices>`".into(),
                    });
                }
                let value = tokens.next().ok_or_else(|| GraphError::Parse {
                    line,
                    message: "missing vertex count after `n`".into(),
                })?;
                let count: usize = value.parse().map_err(|_| GraphError::Parse {
                    line,
                    message: format!("invalid vertex count `{value}`"),
                })?;
                if tokens.next().is_some() {
                    return Err(GraphError::Parse {
                        line,
                        message: "unexpected tokens after vertex count".into(),
                    });
                }
                n_vertices = Some(count);
                continue;
            }
            let parse_vertex = |tok: Option<&str>| -> Result<usize, GraphError> {
                let tok = tok.ok_or_else(|| GraphError::Parse {
                    line,
                    message: "expected `u v`".into(),
                })?;
                tok.parse().map_err(|_| GraphError::Parse {
                    line,
                    message: format!("invalid vertex `{tok}`"),
                })
            };
            let u = parse_vertex(tokens.next())?;
            let v = parse_vertex(tokens.next())?;
            if tokens.next().is_some() {
                return Err(GraphError::Parse {
                    line,
                    message: "unexpected tokens after edge".into(),
                });
            }
            edges.push((u, v));
            edge_lines.push(line);
        }
        let n_vertices = n_vertices.ok_or(GraphError::Parse {
            line: 0,
            message: "missing header line `n <n_vertices>`".into(),
        })?;
        Graph::new(n_vertices, edges).map_err(|err| match err {
            // Re-anchor construction errors onto the offending line.
            GraphError::Loop { index, .. }
            | GraphError::VertexOutOfRange { index, .. }
            | GraphError::MultiEdge { second: index, .. } => GraphError::Parse {
                line: edge_lines[index],
                message: err.to_string(),
            },
            other => other,
        })
    }

    /// Renders the graph in the same edge-list format accepted by
    /// [`Graph::parse`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n_vertices);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// A subset of the edges of a specific graph, as a bitset over edge indices.
///
/// Symmetric difference (`^`) makes the subsets of a graph an abelian group
/// with identity [`EdgeSubset::empty`]; this is the edge space over GF(2).
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSubset {
    bits: u64,
    n_edges: usize,
}

impl EdgeSubset {
    /// Largest supported edge count. Well beyond desk scale: the full
    /// Boolean lattice already has 2^m states.
    pub const MAX_EDGES: usize = 63;

    pub fn empty(n_edges: usize) -> Self {
        assert!(n_edges <= Self::MAX_EDGES);
        EdgeSubset { bits: 0, n_edges }
    }

    pub fn full(n_edges: usize) -> Self {
        assert!(n_edges <= Self::MAX_EDGES);
        EdgeSubset {
            bits: if n_edges == 0 { 0 } else { (1u64 << n_edges) - 1 },
            n_edges,
        }
    }

    pub fn from_indices(n_edges: usize, indices: &[usize]) -> Self {
        let mut s = Self::empty(n_edges);
        for &e in indices {
            assert!(e < n_edges, "edge index {e} out of range");
            s.bits |= 1 << e;
        }
        s
    }

    /// Raw bitmask; bit `e` is edge `e`.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of edges of the owning graph (the bitset length).
    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    /// Cardinality `|S|`, the homological degree of the state.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        debug_assert!(e < self.n_edges);
        self.bits & (1 << e) != 0
    }

    pub fn with(&self, e: usize) -> Self {
        debug_assert!(e < self.n_edges);
        EdgeSubset {
            bits: self.bits | (1 << e),
            n_edges: self.n_edges,
        }
    }

    pub fn without(&self, e: usize) -> Self {
        debug_assert!(e < self.n_edges);
        EdgeSubset {
            bits: self.bits & !(1 << e),
            n_edges: self.n_edges,
        }
    }

    /// `S + e`: membership of `e` flipped.
    pub fn toggled(&self, e: usize) -> Self {
        debug_assert!(e < self.n_edges);
        EdgeSubset {
            bits: self.bits ^ (1 << e),
            n_edges: self.n_edges,
        }
    }

    /// The restriction `S ∩ {f : f < e}` to edges strictly below `e`.
    pub fn below(&self, e: usize) -> Self {
        debug_assert!(e <= self.n_edges);
        EdgeSubset {
            bits: self.bits & ((1 << e) - 1),
            n_edges: self.n_edges,
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n_edges, other.n_edges);
        self.bits & !other.bits == 0
    }

    /// Edge indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.n_edges).filter(move |e| bits & (1 << e) != 0)
    }

    /// Compares ascending element lists lexicographically. Equal-size
    /// subsets compare by the smallest edge where they differ: the subset
    /// containing it is the smaller one.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.n_edges, other.n_edges);
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            return std::cmp::Ordering::Equal;
        }
        let lowest = diff.trailing_zeros();
        if self.bits & (1 << lowest) != 0 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    }
}

impl std::ops::BitXor for EdgeSubset {
    type Output = EdgeSubset;

    /// Symmetric difference `S + T`.
    fn bitxor(self, rhs: EdgeSubset) -> EdgeSubset {
        assert_eq!(self.n_edges, rhs.n_edges, "subsets of different graphs");
        EdgeSubset {
            bits: self.bits ^ rhs.bits,
            n_edges: self.n_edges,
        }
    }
}

impl fmt::Debug for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A set partition of the vertices into connected components.
///
/// Canonical form: each block is sorted ascending and blocks are ordered by
/// their minimum vertex, so equality is set-partition equality and the block
/// order is exactly the tensor-factor order of the chain complex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl VertexPartition {
    fn from_union_find(dsu: &mut UnionFind) -> Self {
        let n = dsu.len();
        let mut block_of = vec![usize::MAX; n];
        let mut root_block = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let r = dsu.find(v);
            if root_block[r] == usize::MAX {
                root_block[r] = blocks.len();
                blocks.push(Vec::new());
            }
            block_of[v] = root_block[r];
            blocks[root_block[r]].push(v);
        }
        VertexPartition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `v`, in min-vertex block order.
    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn size_partition(&self) -> IntegerPartition {
        IntegerPartition::new(self.blocks.iter().map(|b| b.len()).collect())
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    /// Normalizes: sorts descending and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Union-find with path compression and union by size.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.parent.len()
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true if the two sets were distinct.
    pub(crate) fn union(&mut self, x: usize, y: usize) -> bool {
        let mut rx = self.find(x);
        let mut ry = self.find(y);
        if rx == ry {
            return false;
        }
        if self.size[rx] < self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        self.size[rx] += self.size[ry];
        true
    }

    pub(crate) fn connected(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }
}
