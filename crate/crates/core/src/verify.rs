//! The aggregated property suite behind `verify`, and the independent
//! cycle-enumeration oracle for NBC membership.
//!
//! Every theorem the engine relies on is re-checked here on a concrete
//! graph: the balanced coloring, diamond commutativity, `d∘d = 0` on both
//! models, soundness of the matching, Whitney cancellation at both the
//! polynomial and the symmetric-function level, equality of full and NBC
//! homology, the Euler identities, and the support bound. The paranoid
//! level re-derives NBC membership from explicit cycle enumeration — a
//! different algorithm with different failure modes — and cross-checks
//! Smith ranks against modular ranks.

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::complex::{self, build_complex, Model};
use crate::graph::{EdgeSubset, Graph};
use crate::homology::{euler_check, homology};
use crate::nbc;
use crate::poly::LaurentPoly;
use crate::snf::{rank_mod_p, smith_normal_form};
use crate::symfun;

/// How much re-derivation the suite performs.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum VerifyLevel {
    /// The full invariant suite.
    Fast,
    /// Additionally re-derives NBC membership by cycle enumeration and
    /// cross-checks Smith ranks modulo primes.
    Paranoid,
}

impl VerifyLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            VerifyLevel::Fast => "fast",
            VerifyLevel::Paranoid => "paranoid",
        }
    }
}

/// Outcome of one named property check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    /// A small statistic on success, the minimal witness on failure.
    pub detail: String,
}

fn check(name: &'static str, outcome: Result<String, String>) -> CheckReport {
    match outcome {
        Ok(detail) => CheckReport {
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckReport {
            name,
            passed: false,
            detail,
        },
    }
}

/// All simple cycles of `g`, each as its edge set: the subsets in which
/// every touched vertex has degree exactly two and the touched vertices
/// are mutually connected. Exponential scan over `2^m`.
pub fn all_cycles(g: &Graph) -> Vec<EdgeSubset> {
    let mut out = Vec::new();
    'subset: for s in g.all_subsets() {
        if s.is_empty() {
            continue;
        }
        let mut degree = vec![0usize; g.n_vertices()];
        for e in s.iter() {
            let (u, v) = g.edge(e);
            degree[u] += 1;
            degree[v] += 1;
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        // Connectivity of the support.
        let partition = g.components(s);
        let mut support_blocks = std::collections::HashSet::new();
        for (v, &d) in degree.iter().enumerate() {
            if d == 2 {
                support_blocks.insert(partition.block_of(v));
                if support_blocks.len() > 1 {
                    continue 'subset;
                }
            }
        }
        out.push(s);
    }
    out
}

/// The distinct broken circuits of `g`: every cycle minus its largest edge.
pub fn broken_circuits_by_enumeration(g: &Graph) -> Vec<EdgeSubset> {
    let mut out: Vec<EdgeSubset> = all_cycles(g)
        .into_iter()
        .map(|cycle| {
            let max = cycle.iter().max().expect("cycles are nonempty");
            cycle.without(max)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The independent oracle: `s` is NBC when it contains none of the
/// enumerated broken circuits. Takes a precomputed broken-circuit list so
/// sweeps over all subsets do not re-enumerate cycles.
pub fn is_nbc_by_cycle_enumeration(
    broken_circuits: &[EdgeSubset],
    s: EdgeSubset,
) -> bool {
    broken_circuits.iter().all(|b| !b.is_subset_of(&s))
}

/// Runs the whole property suite for one graph and algebra. Returns one
/// report per property, in a fixed order.
pub fn run_suite(g: &Graph, a: &GradedAlgebra, level: VerifyLevel) -> Vec<CheckReport> {
    let mut reports = Vec::new();

    reports.push(check(
        "balanced-coloring",
        complex::verify_balanced(g)
            .map(|()| format!("all diamonds over {} states odd", 1u64 << g.n_edges()))
            .map_err(|e| e.to_string()),
    ));
    reports.push(check(
        "diamond-commutativity",
        complex::verify_diamond_commutativity(g, a)
            .map(|()| "all cover squares commute".to_string())
            .map_err(|e| e.to_string()),
    ));

    let matching = nbc::build_matching(g);
    let bc = nbc::bc_sets(g);
    reports.push(check(
        "matching-perfect",
        nbc::verify_perfect(g, &matching)
            .map(|()| format!("{} pairs cover |BC| = {}", matching.len(), bc.len()))
            .map_err(|e| e.to_string()),
    ));
    reports.push(check(
        "matching-partition-preserved",
        nbc::verify_partition_preserved(g, &matching)
            .map(|()| "λ preserved on every pair".to_string())
            .map_err(|e| e.to_string()),
    ));
    reports.push(check(
        "matching-acyclic",
        nbc::verify_acyclic(g, &matching)
            .map(|()| "reversed cover digraph is acyclic".to_string())
            .map_err(|e| e.to_string()),
    ));
    reports.push(check(
        "linear-extension",
        nbc::linear_extension(&matching)
            .map(|seq| format!("{}-term certified extension", seq.len()))
            .map_err(|e| e.to_string()),
    ));
    reports.push(check(
        "morse-hypothesis",
        complex::verify_morse_hypothesis(g, a, &matching)
            .map(|()| "matched maps are identities".to_string())
            .map_err(|e| e.to_string()),
    ));

    reports.push(check("whitney-cancellation-chromatic", {
        let mut global = LaurentPoly::zero();
        for &s in &bc {
            let sign = if s.len() % 2 == 0 { 1 } else { -1 };
            global.add_term(g.component_count(s) as i64, sign);
        }
        if !global.is_zero() {
            Err(format!("Σ over BC is {global}, not 0"))
        } else if let Some(&(s, t)) = matching
            .pairs()
            .iter()
            .find(|&&(s, t)| g.component_count(s) != g.component_count(t))
        {
            Err(format!("pair ({s}, {t}) does not cancel"))
        } else {
            Ok(format!("{} BC terms cancel pairwise", bc.len()))
        }
    }));
    reports.push(check("whitney-cancellation-symmetric", {
        let mut global = symfun::PSymFun::default();
        for &s in &bc {
            let sign = if s.len() % 2 == 0 { 1 } else { -1 };
            global.add_term(g.size_partition(s), sign);
        }
        if !global.is_zero() {
            Err(format!("Σ over BC is {global}, not 0"))
        } else if let Some(&(s, t)) = matching
            .pairs()
            .iter()
            .find(|&&(s, t)| g.size_partition(s) != g.size_partition(t))
        {
            Err(format!("pair ({s}, {t}) has mismatched λ"))
        } else {
            Ok(format!("{} BC terms cancel pairwise", bc.len()))
        }
    }));

    let full = build_complex(g, a, Model::Full);
    let reduced = build_complex(g, a, Model::Nbc);
    reports.push(check(
        "d-squared-full",
        full.verify_d_squared()
            .map(|()| format!("{} states", full.state_count()))
            .map_err(|e| e.to_string()),
    ));
    reports.push(check(
        "d-squared-nbc",
        reduced
            .verify_d_squared()
            .map(|()| format!("{} states", reduced.state_count()))
            .map_err(|e| e.to_string()),
    ));

    let full_h = homology(&full);
    let reduced_h = homology(&reduced);
    reports.push(check("homology-full-vs-nbc", {
        match (&full_h, &reduced_h) {
            (Ok(fh), Ok(rh)) if fh == rh => Ok(format!(
                "identical summaries from {} vs {} states",
                full.state_count(),
                reduced.state_count()
            )),
            (Ok(fh), Ok(rh)) => {
                let diff: Vec<String> = fh
                    .groups()
                    .iter()
                    .filter(|(key, group)| rh.groups().get(key) != Some(group))
                    .chain(
                        rh.groups()
                            .iter()
                            .filter(|(key, group)| fh.groups().get(key) != Some(group)),
                    )
                    .map(|(&(i, j), _)| format!("({i},{j})"))
                    .collect();
                Err(format!("summaries differ at {}", diff.join(", ")))
            }
            (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
        }
    }));
    reports.push(check("euler-homology-vs-complex", {
        match (&full_h, &reduced_h) {
            (Ok(fh), Ok(rh)) => {
                if !euler_check(fh, &full) {
                    Err("full model fails the Euler identity".to_string())
                } else if !euler_check(rh, &reduced) {
                    Err("nbc model fails the Euler identity".to_string())
                } else {
                    Ok(format!("both equal {}", full.graded_euler_characteristic()))
                }
            }
            (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
        }
    }));

    let chi_statesum = symfun::chromatic_statesum(g);
    let chi_nbc = symfun::chromatic_nbc(g);
    let chi_delcon = symfun::chromatic_delcon(g);
    reports.push(check("euler-vs-chromatic", {
        let expected = symfun::substitute_qrank(&chi_delcon, &a.qrank());
        let full_euler = full.graded_euler_characteristic();
        let reduced_euler = reduced.graded_euler_characteristic();
        if full_euler != expected {
            Err(format!("full complex gives {full_euler}, χ gives {expected}"))
        } else if reduced_euler != expected {
            Err(format!("nbc complex gives {reduced_euler}, χ gives {expected}"))
        } else {
            Ok(format!("χ_G(qrank A) = {expected}"))
        }
    }));
    reports.push(check("chromatic-routes-agree", {
        if chi_statesum != chi_nbc {
            Err(format!("state sum {chi_statesum} ≠ NBC sum {chi_nbc}"))
        } else if chi_statesum != chi_delcon {
            Err(format!(
                "state sum {chi_statesum} ≠ deletion–contraction {chi_delcon}"
            ))
        } else {
            Ok(format!("χ_G = {chi_statesum}"))
        }
    }));
    reports.push(check("csf-routes-agree", {
        let full_x = symfun::csf_statesum(g);
        let reduced_x = symfun::csf_nbc(g);
        if full_x != reduced_x {
            Err(format!("state sum {full_x} ≠ NBC sum {reduced_x}"))
        } else {
            Ok(format!("X_G = {full_x}"))
        }
    }));
    reports.push(check("colorings-agree", {
        let mut witness = None;
        for colors in 0..=5u32 {
            let counted = symfun::count_colorings(g, colors as usize);
            let evaluated = chi_statesum.eval(colors as i64);
            if evaluated != counted as i64 {
                witness = Some(format!(
                    "χ({colors}) = {evaluated} but {counted} colorings found"
                ));
                break;
            }
        }
        match witness {
            Some(w) => Err(w),
            None => Ok("χ matches brute force for 0..=5 colors".to_string()),
        }
    }));

    reports.push(check("support-bound", {
        // NBC states are forests, so the reduced complex must be empty
        // above |V| − (number of components of the whole graph).
        let components = g.component_count(g.full_subset());
        let structural_bound = g.n_vertices() - components;
        let max_rank = reduced.max_homological_degree();
        if max_rank > structural_bound {
            Err(format!(
                "nbc state with {max_rank} edges exceeds the forest bound {structural_bound}"
            ))
        } else {
            let mut outcome = Ok(format!(
                "nbc states stop at degree {max_rank} ≤ {structural_bound}"
            ));
            if components == 1 {
                if let Ok(fh) = &full_h {
                    if let Some(support) = fh.support() {
                        if support.i_max > g.n_vertices() - 1 {
                            outcome = Err(format!(
                                "homology reaches i = {} beyond n−1 = {}",
                                support.i_max,
                                g.n_vertices() - 1
                            ));
                        }
                    }
                }
            }
            outcome
        }
    }));

    if level == VerifyLevel::Paranoid {
        reports.push(check("nbc-oracle", {
            if g.n_edges() > 8 {
                Ok("skipped: more than 8 edges".to_string())
            } else {
                let broken = broken_circuits_by_enumeration(g);
                let disagreement = g.all_subsets().find(|&s| {
                    nbc::is_nbc(g, s) != is_nbc_by_cycle_enumeration(&broken, s)
                });
                match disagreement {
                    Some(s) => Err(format!("path and cycle oracles disagree on {s}")),
                    None => Ok(format!(
                        "cycle enumeration agrees on all {} states ({} broken circuits)",
                        1u64 << g.n_edges(),
                        broken.len()
                    )),
                }
            }
        }));
        reports.push(check("snf-modular-crosscheck", {
            let mut outcome = Ok(0usize);
            'complexes: for c in [&full, &reduced] {
                for &(i, j) in c.dims().keys() {
                    let Some(block) = c.differential(i, j) else { continue };
                    if block.rows == 0 || block.cols == 0 {
                        continue;
                    }
                    let dense = block.to_dense();
                    let snf = smith_normal_form(&dense);
                    let prime = [1_000_003u64, 999_983, 1_000_033]
                        .into_iter()
                        .find(|&p| snf.invariant_factors().iter().all(|&d| d % p != 0))
                        .expect("some probe prime divides no invariant factor");
                    if rank_mod_p(&dense, prime) != snf.rank() {
                        outcome = Err(format!(
                            "d^({i},{j}) of the {} model: modular rank disagrees",
                            c.model()
                        ));
                        break 'complexes;
                    }
                    if let Ok(count) = outcome.as_mut() {
                        *count += 1;
                    }
                }
            }
            outcome.map(|count| format!("{count} blocks cross-checked mod p"))
        }));
    }

    reports
}

/// True when every check passed.
pub fn suite_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn cycles_of_small_graphs() {
        let k3 = catalog::complete(3);
        assert_eq!(all_cycles(&k3), vec![k3.full_subset()]);
        // K4 has four triangles and three 4-cycles.
        assert_eq!(all_cycles(&catalog::complete(4)).len(), 7);
        // The bowtie has exactly its two triangles.
        assert_eq!(all_cycles(&catalog::bowtie()).len(), 2);
        assert!(all_cycles(&catalog::path(4)).is_empty());
    }

    #[test]
    fn broken_circuit_enumeration() {
        let c4 = catalog::cycle(4);
        let broken = broken_circuits_by_enumeration(&c4);
        assert_eq!(broken, vec![EdgeSubset::from_indices(4, &[0, 1, 2])]);
        let k3 = catalog::complete(3);
        assert_eq!(
            broken_circuits_by_enumeration(&k3),
            vec![EdgeSubset::from_indices(3, &[0, 1])]
        );
    }

    #[test]
    fn oracle_agrees_with_path_characterization() {
        for g in [
            catalog::complete(4),
            catalog::paw(),
            catalog::bowtie(),
            catalog::cycle(5),
        ] {
            let broken = broken_circuits_by_enumeration(&g);
            for s in g.all_subsets() {
                assert_eq!(
                    nbc::is_nbc(&g, s),
                    is_nbc_by_cycle_enumeration(&broken, s),
                    "disagreement on {s} of {g:?}"
                );
            }
        }
    }

    #[test]
    fn suite_passes_on_triangle_paranoid() {
        let g = catalog::complete(3);
        let a = GradedAlgebra::am(2).unwrap();
        let reports = run_suite(&g, &a, VerifyLevel::Paranoid);
        for report in &reports {
            assert!(report.passed, "{}: {}", report.name, report.detail);
        }
        assert!(suite_passed(&reports));
        assert_eq!(
            reports.iter().filter(|r| r.name == "nbc-oracle").count(),
            1
        );
    }

    #[test]
    fn suite_passes_on_edgeless_graph() {
        let g = crate::graph::Graph::new(3, vec![]).unwrap();
        let a = GradedAlgebra::am(2).unwrap();
        assert!(suite_passed(&run_suite(&g, &a, VerifyLevel::Paranoid)));
    }
}
