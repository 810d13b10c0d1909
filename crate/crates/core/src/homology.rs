//! Exact bigraded homology of a based complex, computed per internal
//! degree through Smith normal form.
//!
//! For each bidegree, the free rank is `dim C^{i,j} − rank d^{i,j} −
//! rank d^{i-1,j}` and the torsion is the list of invariant factors of
//! `d^{i-1,j}` exceeding one. Internal degrees are independent of one
//! another, so they are computed in parallel; the assembled summary is
//! deterministic regardless of scheduling.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{BasedComplex, ComplexError};
use crate::poly::LaurentPoly;
use crate::snf::{smith_normal_form_sparse, SmithForm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    /// The complex failed its own structural check; the bidegree names the
    /// offending block.
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// One homology group up to isomorphism: `Z^free ⊕ Z/t_1 ⊕ Z/t_2 ⊕ ...`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GroupSummary {
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl GroupSummary {
    pub fn is_trivial(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for GroupSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The bounding box of the nonzero bigraded support.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Support {
    pub i_min: usize,
    pub i_max: usize,
    pub j_min: usize,
    pub j_max: usize,
}

/// All nonzero homology groups of a complex, keyed by `(i, j)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HomologySummary {
    groups: BTreeMap<(usize, usize), GroupSummary>,
}

impl HomologySummary {
    pub fn groups(&self) -> &BTreeMap<(usize, usize), GroupSummary> {
        &self.groups
    }

    pub fn group(&self, i: usize, j: usize) -> Option<&GroupSummary> {
        self.groups.get(&(i, j))
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.is_empty()
    }

    /// `Σ (-1)^i q^j free_rank(i, j)`; torsion contributes nothing.
    pub fn graded_euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, j), group) in &self.groups {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            p.add_term(j as i64, sign * group.free as i64);
        }
        p
    }

    /// Extremes of the nonzero bigrades, or `None` for trivial homology.
    pub fn support(&self) -> Option<Support> {
        let mut keys = self.groups.keys();
        let &(i0, j0) = keys.next()?;
        let mut support = Support {
            i_min: i0,
            i_max: i0,
            j_min: j0,
            j_max: j0,
        };
        for &(i, j) in keys {
            support.i_min = support.i_min.min(i);
            support.i_max = support.i_max.max(i);
            support.j_min = support.j_min.min(j);
            support.j_max = support.j_max.max(j);
        }
        Some(support)
    }

    /// JSON report: `{"groups": [{"i", "j", "free", "torsion"}], "euler"}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.as_report()).expect("summary serialization cannot fail")
    }

    pub fn as_report(&self) -> SummaryReport {
        SummaryReport {
            groups: self
                .groups
                .iter()
                .map(|(&(i, j), group)| GroupReport {
                    i,
                    j,
                    free: group.free,
                    torsion: group.torsion.clone(),
                })
                .collect(),
            euler: self.graded_euler_characteristic().to_string(),
        }
    }

    /// TSV report: one `i j free torsion` row per nonzero group.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("i\tj\tfree\ttorsion\n");
        for (&(i, j), group) in &self.groups {
            let torsion = if group.torsion.is_empty() {
                "-".to_string()
            } else {
                group
                    .torsion
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out.push_str(&format!("{i}\t{j}\t{}\t{torsion}\n", group.free));
        }
        out
    }
}

#[derive(Serialize)]
pub struct SummaryReport {
    pub groups: Vec<GroupReport>,
    pub euler: String,
}

#[derive(Serialize)]
pub struct GroupReport {
    pub i: usize,
    pub j: usize,
    pub free: usize,
    pub torsion: Vec<u64>,
}

/// Computes the exact bigraded homology of `c`.
///
/// Verifies `d∘d = 0` first and fails hard if the complex is broken.
pub fn homology(c: &BasedComplex) -> Result<HomologySummary, HomologyError> {
    c.verify_d_squared()?;
    let degrees = c.internal_degrees();
    let per_degree: Vec<Vec<((usize, usize), GroupSummary)>> = degrees
        .par_iter()
        .map(|&j| homology_at_internal_degree(c, j))
        .collect();
    let mut groups = BTreeMap::new();
    for batch in per_degree {
        for (key, group) in batch {
            groups.insert(key, group);
        }
    }
    Ok(HomologySummary { groups })
}

fn homology_at_internal_degree(
    c: &BasedComplex,
    j: usize,
) -> Vec<((usize, usize), GroupSummary)> {
    let i_values: Vec<usize> = c
        .dims()
        .keys()
        .filter(|&&(_, jj)| jj == j)
        .map(|&(i, _)| i)
        .collect();
    let mut forms: BTreeMap<usize, SmithForm> = BTreeMap::new();
    for &i in &i_values {
        if let Some(block) = c.differential(i, j) {
            if block.rows > 0 && block.cols > 0 {
                forms.insert(i, smith_normal_form_sparse(block));
            }
        }
    }
    let rank_at = |i: usize| forms.get(&i).map_or(0, SmithForm::rank);
    let mut out = Vec::new();
    for &i in &i_values {
        let dim = c.dim(i, j);
        let rank_out = rank_at(i);
        let rank_in = if i > 0 { rank_at(i - 1) } else { 0 };
        let free = dim - rank_out - rank_in;
        let torsion = if i > 0 {
            forms.get(&(i - 1)).map_or_else(Vec::new, SmithForm::torsion)
        } else {
            Vec::new()
        };
        let group = GroupSummary { free, torsion };
        if !group.is_trivial() {
            out.push(((i, j), group));
        }
    }
    out
}

/// Checks the decategorified Euler identity: the alternating sum of
/// homology ranks equals the graded Euler characteristic of the complex.
/// A `false` here means the engine itself is broken.
pub fn euler_check(h: &HomologySummary, c: &BasedComplex) -> bool {
    h.graded_euler_characteristic() == c.graded_euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;
    use crate::complex::{build_complex, Model};
    use crate::graph::Graph;

    fn k2_summary(model: Model) -> HomologySummary {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let a2 = GradedAlgebra::am(2).unwrap();
        homology(&build_complex(&g, &a2, model)).unwrap()
    }

    #[test]
    fn k2_worked_fixture() {
        let h = k2_summary(Model::Full);
        // Kernel of multiplication: x⊗1 − 1⊗x in degree 1, x⊗x in degree 2.
        assert_eq!(h.group(0, 1), Some(&GroupSummary { free: 1, torsion: vec![] }));
        assert_eq!(h.group(0, 2), Some(&GroupSummary { free: 1, torsion: vec![] }));
        assert_eq!(h.groups().len(), 2);
        assert_eq!(h.support(), Some(Support { i_min: 0, i_max: 0, j_min: 1, j_max: 2 }));
    }

    #[test]
    fn k2_nbc_summary_is_identical() {
        assert_eq!(k2_summary(Model::Full), k2_summary(Model::Nbc));
    }

    #[test]
    fn single_vertex_over_am() {
        let g = Graph::new(1, vec![]).unwrap();
        for m in 1..=4 {
            let a = GradedAlgebra::am(m).unwrap();
            let h = homology(&build_complex(&g, &a, Model::Full)).unwrap();
            assert_eq!(h.groups().len(), m);
            for j in 0..m {
                assert_eq!(h.group(0, j), Some(&GroupSummary { free: 1, torsion: vec![] }));
            }
        }
    }

    #[test]
    fn euler_check_on_small_graphs() {
        let a2 = GradedAlgebra::am(2).unwrap();
        for g in [
            Graph::new(2, vec![(0, 1)]).unwrap(),
            Graph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap(),
            crate::catalog::cycle(4),
        ] {
            for model in [Model::Full, Model::Nbc] {
                let c = build_complex(&g, &a2, model);
                let h = homology(&c).unwrap();
                assert!(euler_check(&h, &c));
            }
        }
    }

    #[test]
    fn triangle_euler_is_chromatic_at_qrank() {
        let g = Graph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let a2 = GradedAlgebra::am(2).unwrap();
        let c = build_complex(&g, &a2, Model::Full);
        let h = homology(&c).unwrap();
        // χ_{K3}(1+q) = (1+q)^3 − 3(1+q)^2 + 2(1+q) = −q + q^3.
        let expected = {
            let x = a2.qrank();
            let mut p = x.pow(3);
            p = &p - &(&LaurentPoly::constant(3) * &x.pow(2));
            &p + &(&LaurentPoly::constant(2) * &x)
        };
        assert_eq!(h.graded_euler_characteristic(), expected);
        assert_eq!(c.graded_euler_characteristic(), expected);
    }

    #[test]
    fn disjoint_union_euler_multiplies() {
        // K_3 ⊔ K_2 as one graph; its homology's graded Euler
        // characteristic is the product of the factors'.
        let union = Graph::new(
            5,
            vec![(0, 1), (0, 2), (1, 2), (3, 4)],
        )
        .unwrap();
        let a2 = GradedAlgebra::am(2).unwrap();
        let euler_of = |g: &Graph| {
            homology(&build_complex(g, &a2, Model::Full))
                .unwrap()
                .graded_euler_characteristic()
        };
        let product = &euler_of(&Graph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap())
            * &euler_of(&Graph::new(2, vec![(0, 1)]).unwrap());
        assert_eq!(euler_of(&union), product);
    }

    #[test]
    fn empty_support_marker() {
        let h = HomologySummary::default();
        assert!(h.is_trivial());
        assert_eq!(h.support(), None);
    }

    #[test]
    fn reports_are_stable() {
        let h = k2_summary(Model::Full);
        let json = h.to_json();
        assert!(json.contains("\"euler\": \"q + q^2\""));
        let tsv = h.to_tsv();
        assert_eq!(tsv, "i\tj\tfree\ttorsion\n0\t1\t1\t-\n0\t2\t1\t-\n");
    }
}
