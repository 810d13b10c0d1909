//! Decategorified invariants: the chromatic polynomial by three independent
//! routes, and the chromatic symmetric function in the power-sum basis by
//! full and NBC state sums.
//!
//! The three chromatic routes — state sum over all of `2^E`, state sum over
//! NBC only, and deletion–contraction — must agree exactly; they serve as
//! oracles for one another and for the homology engine's graded Euler
//! characteristic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::graph::{Graph, IntegerPartition};
use crate::nbc;
use crate::poly::LaurentPoly;

/// The chromatic polynomial as a dense coefficient list, `coefficients[d]`
/// multiplying `x^d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChromaticPolynomial {
    coefficients: Vec<i64>,
}

impl ChromaticPolynomial {
    fn from_coefficients(mut coefficients: Vec<i64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        ChromaticPolynomial { coefficients }
    }

    /// Sanity-checks the shape every chromatic polynomial of a loopless
    /// graph must have: degree `n`, monic, coefficients alternating in sign.
    fn assert_chromatic_shape(&self, n_vertices: usize) {
        assert_eq!(self.degree(), n_vertices, "chromatic degree must be |V|");
        assert_eq!(self.coefficients[n_vertices], 1, "chromatic polynomial is monic");
        for (d, &c) in self.coefficients.iter().enumerate() {
            let expected_sign = if (n_vertices - d) % 2 == 0 { 1 } else { -1 };
            assert!(
                c == 0 || c.signum() == expected_sign,
                "coefficient of x^{d} fails sign alternation"
            );
        }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * x + c)
    }

    /// Sum of absolute coefficient values. By Whitney's theorem this equals
    /// the number of NBC states.
    pub fn abs_coefficient_sum(&self) -> u64 {
        self.coefficients.iter().map(|c| c.unsigned_abs()).sum()
    }
}

impl fmt::Display for ChromaticPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = c.unsigned_abs();
            match (d, magnitude) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "x")?,
                (1, m) => write!(f, "{m}*x")?,
                (_, 1) => write!(f, "x^{d}")?,
                (_, m) => write!(f, "{m}*x^{d}")?,
            }
        }
        Ok(())
    }
}

/// `χ_G(x) = Σ_{S ∈ 2^E} (-1)^{|S|} x^{k(S)}`, the full state sum.
pub fn chromatic_statesum(g: &Graph) -> ChromaticPolynomial {
    let mut coefficients = vec![0i64; g.n_vertices() + 1];
    for s in g.all_subsets() {
        let sign = if s.len() % 2 == 0 { 1 } else { -1 };
        coefficients[g.component_count(s)] += sign;
    }
    let p = ChromaticPolynomial::from_coefficients(coefficients);
    p.assert_chromatic_shape(g.n_vertices());
    p
}

/// `χ_G(x) = Σ_{S ∈ NBC} (-1)^{|S|} x^{k(S)}`, the broken-circuit-free
/// state sum — exponentially fewer terms, same polynomial.
pub fn chromatic_nbc(g: &Graph) -> ChromaticPolynomial {
    let mut coefficients = vec![0i64; g.n_vertices() + 1];
    for s in nbc::nbc_sets(g) {
        let sign = if s.len() % 2 == 0 { 1 } else { -1 };
        coefficients[g.component_count(s)] += sign;
    }
    let p = ChromaticPolynomial::from_coefficients(coefficients);
    p.assert_chromatic_shape(g.n_vertices());
    p
}

/// `χ_G = χ_{G-e} − χ_{G/e}`, memoized on canonically relabeled graphs.
pub fn chromatic_delcon(g: &Graph) -> ChromaticPolynomial {
    let mut memo: HashMap<(usize, Vec<(usize, usize)>), ChromaticPolynomial> = HashMap::new();
    let p = delcon_recurse(g, &mut memo);
    p.assert_chromatic_shape(g.n_vertices());
    p
}

fn delcon_recurse(
    g: &Graph,
    memo: &mut HashMap<(usize, Vec<(usize, usize)>), ChromaticPolynomial>,
) -> ChromaticPolynomial {
    if g.n_edges() == 0 {
        let mut coefficients = vec![0i64; g.n_vertices() + 1];
        coefficients[g.n_vertices()] = 1;
        return ChromaticPolynomial::from_coefficients(coefficients);
    }
    let key = canonical_key(g);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let deleted = delcon_recurse(&g.deleting(0), memo);
    let contracted = delcon_recurse(&g.contracting(0), memo);
    let mut coefficients = vec![0i64; g.n_vertices() + 1];
    for (d, &c) in deleted.coefficients.iter().enumerate() {
        coefficients[d] += c;
    }
    for (d, &c) in contracted.coefficients.iter().enumerate() {
        coefficients[d] -= c;
    }
    let p = ChromaticPolynomial::from_coefficients(coefficients);
    memo.insert(key, p.clone());
    p
}

/// A cheap isomorphism-aware memo key: vertices are sorted by stabilized
/// refinement colors, then the edge list is minimized over the color-class
/// preserving permutations. If the class symmetry is too large to sweep,
/// the labeled edge list is used as-is — still correct, just fewer memo
/// hits.
fn canonical_key(g: &Graph) -> (usize, Vec<(usize, usize)>) {
    let n = g.n_vertices();
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    // Iterated degree refinement.
    let mut colors: Vec<u64> = adjacency.iter().map(|a| a.len() as u64).collect();
    for _ in 0..n {
        let mut signatures: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|v| {
                let mut around: Vec<u64> = adjacency[v].iter().map(|&w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut palette: Vec<(u64, Vec<u64>)> = signatures.clone();
        palette.sort();
        palette.dedup();
        let next: Vec<u64> = signatures
            .drain(..)
            .map(|sig| palette.binary_search(&sig).unwrap() as u64)
            .collect();
        if next == colors {
            break;
        }
        colors = next;
    }
    // Vertices grouped by color, classes in color order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last() {
            Some(class) if colors[class[0]] == colors[v] => classes.last_mut().unwrap().push(v),
            _ => classes.push(vec![v]),
        }
    }
    let symmetry: usize = classes
        .iter()
        .map(|c| (1..=c.len()).product::<usize>())
        .try_fold(1usize, usize::checked_mul)
        .unwrap_or(usize::MAX);
    if symmetry > 5040 {
        return (n, g.edges().to_vec());
    }
    let mut best: Option<Vec<(usize, usize)>> = None;
    let class_perms: Vec<Vec<Vec<usize>>> = classes.iter().map(|c| permutations(c)).collect();
    let mut cursor = vec![0usize; classes.len()];
    loop {
        // Assemble the relabeling: new label = position in the permuted
        // class concatenation.
        let mut relabel = vec![0usize; n];
        let mut next = 0;
        for (class_idx, perms) in class_perms.iter().enumerate() {
            for &v in &perms[cursor[class_idx]] {
                relabel[v] = next;
                next += 1;
            }
        }
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (relabel[u], relabel[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        if best.as_ref().is_none_or(|b| edges < *b) {
            best = Some(edges);
        }
        // Advance the mixed-radix cursor over per-class permutations.
        let mut slot = 0;
        loop {
            if slot == cursor.len() {
                return (n, best.unwrap());
            }
            cursor[slot] += 1;
            if cursor[slot] < class_perms[slot].len() {
                break;
            }
            cursor[slot] = 0;
            slot += 1;
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let rest: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, &v)| v)
            .collect();
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Counts proper colorings `V → {1..colors}` by direct enumeration.
/// Exponential in `|V|`; the brute-force oracle for polynomial evaluation.
pub fn count_colorings(g: &Graph, colors: usize) -> u64 {
    fn recurse(g: &Graph, colors: usize, assignment: &mut Vec<usize>) -> u64 {
        let v = assignment.len();
        if v == g.n_vertices() {
            return 1;
        }
        let mut count = 0;
        'candidate: for color in 0..colors {
            for &(a, b) in g.edges() {
                let other = match (a == v, b == v) {
                    (true, _) => b,
                    (_, true) => a,
                    _ => continue,
                };
                if other < v && assignment[other] == color {
                    continue 'candidate;
                }
            }
            assignment.push(color);
            count += recurse(g, colors, assignment);
            assignment.pop();
        }
        count
    }
    recurse(g, colors, &mut Vec::new())
}

/// A symmetric function written in the power-sum basis: a finite integer
/// combination of `p_λ`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PSymFun {
    terms: BTreeMap<IntegerPartition, i64>,
}

impl PSymFun {
    pub fn terms(&self) -> &BTreeMap<IntegerPartition, i64> {
        &self.terms
    }

    pub fn coefficient(&self, partition: &IntegerPartition) -> i64 {
        self.terms.get(partition).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, partition: IntegerPartition, coefficient: i64) {
        let entry = self.terms.entry(partition.clone()).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.remove(&partition);
        }
    }

    /// JSON object `{"λ1,λ2,...": coefficient}` with deterministic keys.
    pub fn to_json(&self) -> String {
        let object: BTreeMap<String, i64> = self
            .terms
            .iter()
            .map(|(partition, &c)| {
                let key = partition
                    .parts()
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                (key, c)
            })
            .collect();
        serde_json::to_string_pretty(&object).expect("symmetric function serialization cannot fail")
    }
}

impl fmt::Display for PSymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (partition, &c)) in self.terms.iter().enumerate() {
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = c.unsigned_abs();
            if magnitude != 1 {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "p{partition}")?;
        }
        Ok(())
    }
}

/// `X_G = Σ_{T ∈ 2^E} (-1)^{|T|} p_{λ(T)}`, the full state sum.
pub fn csf_statesum(g: &Graph) -> PSymFun {
    let mut out = PSymFun::default();
    for s in g.all_subsets() {
        let sign = if s.len() % 2 == 0 { 1 } else { -1 };
        out.add_term(g.size_partition(s), sign);
    }
    out
}

/// `X_G = Σ_{T ∈ NBC} (-1)^{|T|} p_{λ(T)}`: the broken-circuit reduction.
pub fn csf_nbc(g: &Graph) -> PSymFun {
    let mut out = PSymFun::default();
    for s in nbc::nbc_sets(g) {
        let sign = if s.len() % 2 == 0 { 1 } else { -1 };
        out.add_term(g.size_partition(s), sign);
    }
    out
}

/// Evaluates a power-sum expression at `x_1 = ... = x_k = 1`, rest zero:
/// every `p_r` becomes `k`, so `p_λ` becomes `k^{len(λ)}`. Applied to
/// `X_G` this recovers `χ_G(k)`.
pub fn specialize_csf(f: &PSymFun, k: i64) -> i64 {
    f.terms
        .iter()
        .map(|(partition, &c)| c * k.pow(partition.len() as u32))
        .sum()
}

/// Substitutes a Laurent polynomial for `x`: the composition
/// `χ_G(qrank A)`, the decategorified value of the chromatic complex.
pub fn substitute_qrank(p: &ChromaticPolynomial, value: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (d, &c) in p.coefficients.iter().enumerate() {
        if c != 0 {
            out = &out + &(&LaurentPoly::constant(c) * &value.pow(d as u32));
        }
    }
    out
}
