//! Finite free graded commutative algebras over the integers, their tensor
//! powers, and the matrices that multiply two tensor factors together.
//!
//! An algebra is given concretely: a basis with internal degrees, the index
//! of the identity element, and integer structure constants
//! `b_i · b_j = Σ_k c_{ij}^k b_k`. All algebra axioms are validated at
//! construction, so downstream code can rely on commutativity,
//! associativity, the unit law, and gradedness without rechecking.
//!
//! The workhorse presets are the truncated polynomial rings
//! `A_m = Z[x]/(x^m)` with `deg x^i = i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMat;
use crate::poly::LaurentPoly;

/// Errors from algebra construction and the JSON file format. Each axiom
/// violation names the axiom and the offending basis indices.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("algebra must have at least one basis element")]
    EmptyBasis,
    #[error("truncation order must be at least 1")]
    TruncationOrderZero,
    #[error("unit index {unit} out of range for dimension {dim}")]
    UnitOutOfRange { unit: usize, dim: usize },
    #[error("product entry references basis index {index}, dimension is {dim}")]
    BasisIndexOutOfRange { index: usize, dim: usize },
    #[error("commutativity violated: b{i}·b{j} ≠ b{j}·b{i}")]
    Commutativity { i: usize, j: usize },
    #[error("associativity violated at (b{i}·b{j})·b{k} ≠ b{i}·(b{j}·b{k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("unit law violated: b{unit}·b{j} ≠ b{j}")]
    UnitLaw { unit: usize, j: usize },
    #[error("graded multiplication violated: b{i}·b{j} hits b{k} of degree {got}, expected {expected}")]
    NotGraded {
        i: usize,
        j: usize,
        k: usize,
        got: usize,
        expected: usize,
    },
    #[error("invalid product key `{key}`: expected `i,j`")]
    BadProductKey { key: String },
    #[error("invalid algebra JSON: {0}")]
    Json(String),
}

/// A finite free graded commutative ring with identity, over the integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedAlgebra {
    degrees: Vec<usize>,
    unit: usize,
    /// products[i * dim + j] = expansion of b_i · b_j, sparse and sorted.
    products: Vec<Vec<(usize, i64)>>,
}

impl GradedAlgebra {
    /// Validates and builds an algebra from basis degrees, the unit index,
    /// and a full product table `table[i][j] = [(k, c), ...]`.
    pub fn new(
        degrees: Vec<usize>,
        unit: usize,
        table: Vec<Vec<Vec<(usize, i64)>>>,
    ) -> Result<Self, AlgebraError> {
        let dim = degrees.len();
        if dim == 0 {
            return Err(AlgebraError::EmptyBasis);
        }
        if unit >= dim {
            return Err(AlgebraError::UnitOutOfRange { unit, dim });
        }
        let mut products = vec![Vec::new(); dim * dim];
        for (i, row) in table.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let mut expansion: BTreeMap<usize, i64> = BTreeMap::new();
                for &(k, c) in cell {
                    if k >= dim {
                        return Err(AlgebraError::BasisIndexOutOfRange { index: k, dim });
                    }
                    *expansion.entry(k).or_insert(0) += c;
                }
                expansion.retain(|_, c| *c != 0);
                products[i * dim + j] = expansion.into_iter().collect();
            }
        }
        let algebra = GradedAlgebra {
            degrees,
            unit,
            products,
        };
        algebra.validate()?;
        Ok(algebra)
    }

    /// The truncated polynomial algebra `A_m = Z[x]/(x^m)`, basis
    /// `1, x, ..., x^{m-1}` in degrees `0..m`, products by exponent
    /// addition with truncation.
    ///
    /// ```
    /// use chromahom::algebra::GradedAlgebra;
    ///
    /// let a2 = GradedAlgebra::am(2).unwrap();
    /// assert_eq!(a2.dim(), 2);
    /// assert_eq!(a2.product(1, 1), &[]); // x·x = 0
    /// let a3 = GradedAlgebra::am(3).unwrap();
    /// assert_eq!(a3.product(1, 1), &[(2, 1)]); // x·x = x^2
    /// assert_eq!(a3.product(1, 2), &[]); // x·x^2 = 0
    /// ```
    pub fn am(m: usize) -> Result<Self, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::TruncationOrderZero);
        }
        let degrees: Vec<usize> = (0..m).collect();
        let mut table = vec![vec![Vec::new(); m]; m];
        for i in 0..m {
            for j in 0..m {
                if i + j < m {
                    table[i][j].push((i + j, 1));
                }
            }
        }
        GradedAlgebra::new(degrees, 0, table)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                if self.product(i, j) != self.product(j, i) {
                    return Err(AlgebraError::Commutativity { i, j });
                }
                for &(k, c) in self.product(i, j) {
                    debug_assert!(c != 0);
                    let expected = self.degrees[i] + self.degrees[j];
                    if self.degrees[k] != expected {
                        return Err(AlgebraError::NotGraded {
                            i,
                            j,
                            k,
                            got: self.degrees[k],
                            expected,
                        });
                    }
                }
            }
        }
        for j in 0..dim {
            if self.product(self.unit, j) != [(j, 1)] {
                return Err(AlgebraError::UnitLaw { unit: self.unit, j });
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if self.multiply(&self.multiply_basis(i, j), k)
                        != self.multiply(&self.multiply_basis(j, k), i)
                    {
                        return Err(AlgebraError::Associativity { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn multiply_basis(&self, i: usize, j: usize) -> BTreeMap<usize, i64> {
        self.product(i, j).iter().copied().collect()
    }

    /// Multiplies a linear combination by a basis element.
    fn multiply(&self, lhs: &BTreeMap<usize, i64>, by: usize) -> BTreeMap<usize, i64> {
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for (&k, &c) in lhs {
            for &(t, d) in self.product(k, by) {
                let entry = out.entry(t).or_insert(0);
                *entry += c * d;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, basis: usize) -> usize {
        self.degrees[basis]
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    /// The expansion of `b_i · b_j`, sorted by target index.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.products[i * self.dim() + j]
    }

    /// Graded rank `Σ_k q^{deg b_k}`.
    ///
    /// ```
    /// use chromahom::algebra::GradedAlgebra;
    ///
    /// assert_eq!(GradedAlgebra::am(2).unwrap().qrank().to_string(), "1 + q");
    /// assert_eq!(GradedAlgebra::am(1).unwrap().qrank().to_string(), "1");
    /// assert_eq!(GradedAlgebra::am(3).unwrap().qrank().to_string(), "1 + q + q^2");
    /// ```
    pub fn qrank(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &d in &self.degrees {
            p.add_term(d as i64, 1);
        }
        p
    }

    /// Loads an algebra from the JSON file format:
    /// `{"degrees": [...], "unit": k, "products": {"i,j": [[k, c], ...]}}`.
    ///
    /// Missing product keys mean the product is zero. A key may be given in
    /// either order; if both orders appear they must agree.
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let file: AlgebraFile =
            serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
        let dim = file.degrees.len();
        let mut table = vec![vec![None; dim]; dim];
        for (key, cell) in &file.products {
            let (i, j) = parse_product_key(key)?;
            if i >= dim || j >= dim {
                return Err(AlgebraError::BasisIndexOutOfRange {
                    index: i.max(j),
                    dim,
                });
            }
            let entries: Vec<(usize, i64)> = cell.iter().map(|&(k, c)| (k, c)).collect();
            for existing in [&table[i][j], &table[j][i]].into_iter().flatten() {
                if *existing != entries {
                    return Err(AlgebraError::Commutativity { i, j });
                }
            }
            table[i][j] = Some(entries.clone());
            table[j][i] = Some(entries);
        }
        let table = table
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap_or_default).collect())
            .collect();
        GradedAlgebra::new(file.degrees, file.unit, table)
    }

    /// Serializes in the same JSON format read by [`GradedAlgebra::from_json`].
    pub fn to_json(&self) -> String {
        let mut products = BTreeMap::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let cell = self.product(i, j);
                if !cell.is_empty() {
                    products.insert(format!("{i},{j}"), cell.to_vec());
                }
            }
        }
        let file = AlgebraFile {
            degrees: self.degrees.clone(),
            unit: self.unit,
            products,
        };
        serde_json::to_string_pretty(&file).expect("algebra serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    degrees: Vec<usize>,
    unit: usize,
    #[serde(default)]
    products: BTreeMap<String, Vec<(usize, i64)>>,
}

fn parse_product_key(key: &str) -> Result<(usize, usize), AlgebraError> {
    let bad = || AlgebraError::BadProductKey { key: key.into() };
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

/// A basis element of `A^{⊗k}`: one basis index per tensor factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorBasisIndex {
    factors: Vec<usize>,
}

impl TensorBasisIndex {
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }
}

impl fmt::Display for TensorBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "b{x}")?;
        }
        if self.factors.is_empty() {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// The lexicographic enumeration of the basis of `A^{⊗k}`, with degrees.
///
/// Rank `r` decodes to factor indices in mixed radix `dim`, leftmost factor
/// most significant, so rank order is lexicographic order on tuples. The
/// degree of a tuple is the sum of its factor degrees.
#[derive(Clone, Debug)]
pub struct TensorBasis {
    dim: usize,
    k: usize,
    degrees: Vec<usize>,
}

impl TensorBasis {
    pub fn new(algebra: &GradedAlgebra, k: usize) -> Self {
        let dim = algebra.dim();
        let len = dim.checked_pow(k as u32).expect("tensor basis too large");
        let mut degrees = Vec::with_capacity(len);
        for rank in 0..len {
            let mut r = rank;
            let mut deg = 0;
            for _ in 0..k {
                deg += algebra.degree(r % dim);
                r /= dim;
            }
            degrees.push(deg);
        }
        TensorBasis { dim, k, degrees }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn tensor_power(&self) -> usize {
        self.k
    }

    pub fn degree(&self, rank: usize) -> usize {
        self.degrees[rank]
    }

    /// Decodes a rank into its factor tuple.
    pub fn element(&self, rank: usize) -> TensorBasisIndex {
        let mut factors = vec![0usize; self.k];
        self.decode_into(rank, &mut factors);
        TensorBasisIndex { factors }
    }

    /// Decodes a rank into a caller-provided buffer of length `k`.
    pub fn decode_into(&self, rank: usize, factors: &mut [usize]) {
        debug_assert_eq!(factors.len(), self.k);
        let mut r = rank;
        for slot in (0..self.k).rev() {
            factors[slot] = r % self.dim;
            r /= self.dim;
        }
    }

    /// Encodes a factor tuple into its rank.
    pub fn rank_of(&self, factors: &[usize]) -> usize {
        debug_assert_eq!(factors.len(), self.k);
        factors.iter().fold(0, |acc, &f| acc * self.dim + f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (TensorBasisIndex, usize)> + '_ {
        (0..self.len()).map(|r| (self.element(r), self.degree(r)))
    }
}

/// Enumerates the basis of `A^{⊗k}` lexicographically with degrees.
pub fn tensor_basis(algebra: &GradedAlgebra, k: usize) -> TensorBasis {
    TensorBasis::new(algebra, k)
}

/// Expands one basis tuple of `A^{⊗k}` under the map that multiplies
/// factors `p` and `r`, writing the product at position `min(p, r)` and
/// deleting position `max(p, r)`.
///
/// Yields `(rank in A^{⊗(k-1)}, coefficient)` pairs; the rank is with
/// respect to the lexicographic enumeration.
pub(crate) fn merge_factors(
    algebra: &GradedAlgebra,
    factors: &[usize],
    p: usize,
    r: usize,
    out: &mut Vec<(usize, i64)>,
) {
    out.clear();
    let (lo, hi) = (p.min(r), p.max(r));
    debug_assert!(lo < hi && hi < factors.len());
    let dim = algebra.dim();
    for &(product, coeff) in algebra.product(factors[p], factors[r]) {
        let mut rank = 0usize;
        for (slot, &f) in factors.iter().enumerate() {
            if slot == hi {
                continue;
            }
            let digit = if slot == lo { product } else { f };
            rank = rank * dim + digit;
        }
        out.push((rank, coeff));
    }
}

/// The matrix of `A^{⊗k} → A^{⊗(k-1)}` that multiplies tensor factors `p`
/// and `r` and leaves every other factor alone. The product lands at
/// position `min(p, r)` — the placement that matches merging two components
/// ordered by minimum vertex. Rows and columns index the lexicographic
/// tensor bases; the map preserves internal degree.
///
/// # Panics
/// If `p == r` or either position is out of range.
pub fn multiplication_matrix(
    algebra: &GradedAlgebra,
    k: usize,
    p: usize,
    r: usize,
) -> IntMat {
    assert!(p != r, "cannot multiply a tensor factor with itself");
    assert!(p < k && r < k, "factor position out of range");
    let source = tensor_basis(algebra, k);
    let dim = algebra.dim();
    let rows = dim.pow((k - 1) as u32);
    let mut mat = IntMat::zeros(rows, source.len());
    let mut expansion = Vec::new();
    for col in 0..source.len() {
        let tuple = source.element(col);
        merge_factors(algebra, tuple.factors(), p, r, &mut expansion);
        for &(row, coeff) in &expansion {
            mat.add(row, col, coeff);
        }
    }
    mat
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn am_presets() {
        let a1 = GradedAlgebra::am(1).unwrap();
        assert_eq!(a1.dim(), 1);
        assert_eq!(a1.degrees(), &[0]);
        assert!(GradedAlgebra::am(0).is_err());
        let a2 = GradedAlgebra::am(2).unwrap();
        assert_eq!(a2.degrees(), &[0, 1]);
        assert_eq!(a2.product(1, 1), &[]);
    }

    #[test]
    fn validation_names_the_axiom() {
        // Non-commutative: b1·b1 differs depending on order is impossible;
        // break symmetry between (0,1) and (1,0) instead.
        let bad = GradedAlgebra::new(
            vec![0, 1],
            0,
            vec![
                vec![vec![(0, 1)], vec![(1, 1)]],
                vec![vec![], vec![]],
            ],
        );
        assert_eq!(bad, Err(AlgebraError::Commutativity { i: 0, j: 1 }));

        // Degree-violating product: x·x = x in degree 1 ≠ 2.
        let bad = GradedAlgebra::new(
            vec![0, 1],
            0,
            vec![
                vec![vec![(0, 1)], vec![(1, 1)]],
                vec![vec![(1, 1)], vec![(1, 1)]],
            ],
        );
        assert_eq!(
            bad,
            Err(AlgebraError::NotGraded {
                i: 1,
                j: 1,
                k: 1,
                got: 1,
                expected: 2
            })
        );

        // Unit law broken: unit times x is zero.
        let bad = GradedAlgebra::new(
            vec![0, 1],
            0,
            vec![vec![vec![(0, 1)], vec![]], vec![vec![], vec![]]],
        );
        assert_eq!(bad, Err(AlgebraError::UnitLaw { unit: 0, j: 1 }));

        // Associativity broken: (b1·b1)·b2 = b2·b2 = 0 but b1·(b1·b2) = b1.
        // Degrees all zero so the graded check cannot mask it.
        let bad = GradedAlgebra::new(
            vec![0, 0, 0],
            0,
            vec![
                vec![vec![(0, 1)], vec![(1, 1)], vec![(2, 1)]],
                vec![vec![(1, 1)], vec![(2, 1)], vec![(0, 1)]],
                vec![vec![(2, 1)], vec![(0, 1)], vec![]],
            ],
        );
        assert!(matches!(bad, Err(AlgebraError::Associativity { .. })));
    }

    #[test]
    fn json_round_trip() {
        let a3 = GradedAlgebra::am(3).unwrap();
        let text = a3.to_json();
        let back = GradedAlgebra::from_json(&text).unwrap();
        assert_eq!(a3, back);
    }

    #[test]
    fn json_errors() {
        let err = GradedAlgebra::from_json(
            r#"{"degrees":[0,1],"unit":0,"products":{"0,0":[[0,1]],"0,1":[[1,1]],"1,0":[[1,2]],"1,1":[]}}"#,
        );
        assert_eq!(err, Err(AlgebraError::Commutativity { i: 1, j: 0 }));
        let err = GradedAlgebra::from_json(r#"{"degrees":[0],"unit":0,"products":{"zero":[]}}"#);
        assert!(matches!(err, Err(AlgebraError::BadProductKey { .. })));
    }

    #[test]
    fn tensor_basis_enumeration() {
        let a2 = GradedAlgebra::am(2).unwrap();
        let basis = tensor_basis(&a2, 2);
        assert_eq!(basis.len(), 4);
        let degrees: Vec<usize> = (0..4).map(|r| basis.degree(r)).collect();
        assert_eq!(degrees, vec![0, 1, 1, 2]);

        // k = 0: the empty tensor, one element of degree 0.
        let empty = tensor_basis(&a2, 0);
        assert_eq!(empty.len(), 1);
        assert_eq!(empty.degree(0), 0);

        // A_3 squared: degree generating function (1+q+q^2)^2.
        let a3 = GradedAlgebra::am(3).unwrap();
        let basis = tensor_basis(&a3, 2);
        assert_eq!(basis.len(), 9);
        let mut gen = crate::poly::LaurentPoly::zero();
        for r in 0..basis.len() {
            gen.add_term(basis.degree(r) as i64, 1);
        }
        assert_eq!(gen, a3.qrank().pow(2));
    }

    #[test]
    fn rank_round_trip() {
        let a3 = GradedAlgebra::am(3).unwrap();
        let basis = tensor_basis(&a3, 3);
        for rank in 0..basis.len() {
            let tuple = basis.element(rank);
            assert_eq!(basis.rank_of(tuple.factors()), rank);
        }
    }

    #[test]
    fn multiplication_matrix_a2() {
        let a2 = GradedAlgebra::am(2).unwrap();
        let m = multiplication_matrix(&a2, 2, 0, 1);
        // 1⊗1 ↦ 1, 1⊗x ↦ x, x⊗1 ↦ x, x⊗x ↦ 0.
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 4);
        assert_eq!(m.row_slice(0), &[1, 0, 0, 0]);
        assert_eq!(m.row_slice(1), &[0, 1, 1, 0]);
    }

    #[test]
    fn multiplication_matrix_a1_collapses() {
        let a1 = GradedAlgebra::am(1).unwrap();
        let m = multiplication_matrix(&a1, 3, 0, 2);
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(m.get(0, 0), 1);
    }

    #[test]
    fn multiplication_matrix_is_kronecker_with_identity() {
        // Multiplying factors 0,1 of three A_2 factors acts as M ⊗ I.
        let a2 = GradedAlgebra::am(2).unwrap();
        let m2 = multiplication_matrix(&a2, 2, 0, 1);
        let m3 = multiplication_matrix(&a2, 3, 0, 1);
        let kron = kronecker(&m2, &IntMat::identity(2));
        assert_eq!(m3, kron);
    }

    /// Kronecker product oracle, independent of the merge expansion.
    fn kronecker(a: &IntMat, b: &IntMat) -> IntMat {
        let mut out = IntMat::zeros(a.rows() * b.rows(), a.cols() * b.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                for k in 0..b.rows() {
                    for l in 0..b.cols() {
                        out.add(
                            i * b.rows() + k,
                            j * b.cols() + l,
                            a.get(i, j) * b.get(k, l),
                        );
                    }
                }
            }
        }
        out
    }

    #[test]
    fn associativity_at_matrix_level() {
        // Merging three factors pairwise in either order gives the same
        // composite matrix.
        for a in [GradedAlgebra::am(2).unwrap(), GradedAlgebra::am(3).unwrap()] {
            let first_then_rest = multiplication_matrix(&a, 2, 0, 1)
                .matmul(&multiplication_matrix(&a, 3, 0, 1));
            let rest_then_first = multiplication_matrix(&a, 2, 0, 1)
                .matmul(&multiplication_matrix(&a, 3, 1, 2));
            assert_eq!(first_then_rest, rest_then_first);
        }
    }

    #[test]
    fn degree_preservation() {
        let a3 = GradedAlgebra::am(3).unwrap();
        let source = tensor_basis(&a3, 3);
        let target = tensor_basis(&a3, 2);
        let m = multiplication_matrix(&a3, 3, 1, 2);
        for col in 0..m.cols() {
            for row in 0..m.rows() {
                if m.get(row, col) != 0 {
                    assert_eq!(source.degree(col), target.degree(row));
                }
            }
        }
    }
}
