//! Exact Smith normal form over the integers, plus modular rank as an
//! independent cross-check.
//!
//! The dense elimination is fraction-free and always pivots on a nonzero
//! entry of minimal absolute value. Arithmetic runs on machine integers
//! with every operation overflow-checked; if anything would overflow, the
//! whole block is redone in arbitrary precision with the same algorithm.
//!
//! Differential blocks of chromatic complexes are huge but extremely
//! sparse, with entries starting at ±1, so [`smith_normal_form_sparse`]
//! first strips unimodular pivots with a fill-respecting sparse sweep and
//! only hands the small leftover core to the dense routine.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

use crate::matrix::{IntMat, SparseMat};

/// The invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmithForm {
    invariant_factors: Vec<u64>,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// The rank over the rationals.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The invariant factors greater than one — the torsion this matrix
    /// contributes as the relations of a cokernel.
    pub fn torsion(&self) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .copied()
            .filter(|&d| d > 1)
            .collect()
    }
}

/// Computes the Smith normal form of `m`.
///
/// ```
/// use chromahom::matrix::IntMat;
/// use chromahom::snf::smith_normal_form;
///
/// let m = IntMat::from_rows(vec![vec![2, 4], vec![6, 8]]);
/// assert_eq!(smith_normal_form(&m).invariant_factors(), &[2, 4]);
/// ```
pub fn smith_normal_form(m: &IntMat) -> SmithForm {
    let factors = match eliminate(m.rows(), m.cols(), m.entries().to_vec()) {
        Some(factors) => factors
            .into_iter()
            .map(|d| d as u64)
            .collect(),
        None => {
            let data: Vec<BigInt> = m.entries().iter().map(|&x| BigInt::from(x)).collect();
            eliminate(m.rows(), m.cols(), data)
                .expect("arbitrary-precision elimination cannot overflow")
                .into_iter()
                .map(|d| {
                    d.to_u64()
                        .expect("invariant factor exceeds u64; outside supported scale")
                })
                .collect()
        }
    };
    SmithForm {
        invariant_factors: factors,
    }
}

/// Smith normal form of a sparse matrix.
///
/// Entries of absolute value one are eliminated in place on the sparse
/// representation, choosing at each step a unit pivot that approximately
/// minimizes fill (smallest column, then sparsest row in it). Each unit
/// pivot contributes an invariant factor 1; clearing its column by row
/// operations and dropping its row is a unimodular reduction to the Schur
/// complement. When no unit entry remains the survivors are densified and
/// finished by [`smith_normal_form`]'s elimination, whose factors all
/// exceed one at that point. Overflow anywhere restarts the whole block in
/// arbitrary precision.
pub fn smith_normal_form_sparse(m: &SparseMat) -> SmithForm {
    match sparse_phase(m) {
        Some(form) => form,
        None => {
            // Arbitrary-precision rerun of the entire block.
            let data: Vec<BigInt> = m.to_dense().entries().iter().map(|&x| BigInt::from(x)).collect();
            let factors = eliminate(m.rows, m.cols, data)
                .expect("arbitrary-precision elimination cannot overflow")
                .into_iter()
                .map(|d| {
                    d.to_u64()
                        .expect("invariant factor exceeds u64; outside supported scale")
                })
                .collect();
            SmithForm {
                invariant_factors: factors,
            }
        }
    }
}

fn sparse_phase(m: &SparseMat) -> Option<SmithForm> {
    let mut rows: Vec<HashMap<u32, i64>> = vec![HashMap::new(); m.rows];
    let mut col_support: Vec<Vec<u32>> = vec![Vec::new(); m.cols];
    let mut col_nnz: Vec<usize> = vec![0; m.cols];
    for &(r, c, v) in &m.entries {
        rows[r as usize].insert(c, v);
        col_support[c as usize].push(r);
        col_nnz[c as usize] += 1;
    }
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols];
    let mut unit_pivots = 0usize;

    // Bucket queue over column fill, revalidated lazily. A column is
    // (re)enqueued whenever its fill changes; popping a stale or dead
    // entry just discards it. A popped live column with no unit entry is
    // left out until a row operation touches it again, which re-enqueues
    // it — if it never changes, it genuinely belongs to the dense core.
    let mut buckets: Vec<Vec<u32>> = Vec::new();
    let enqueue = |buckets: &mut Vec<Vec<u32>>, c: u32, nnz: usize| {
        if nnz == 0 {
            return;
        }
        if buckets.len() <= nnz {
            buckets.resize(nnz + 1, Vec::new());
        }
        buckets[nnz].push(c);
    };
    for c in 0..m.cols {
        enqueue(&mut buckets, c as u32, col_nnz[c]);
    }

    loop {
        // Pivot: the sparsest column holding a unit entry, then the
        // sparsest row within it — a cheap Markowitz proxy.
        let mut pivot: Option<(u32, u32)> = None;
        'select: for nnz in 1..buckets.len() {
            while let Some(c) = buckets[nnz].pop() {
                if !col_alive[c as usize] || col_nnz[c as usize] != nnz {
                    continue; // stale
                }
                // Drop stale support entries; a row can appear twice when
                // its entry was cancelled and later re-created.
                col_support[c as usize]
                    .retain(|&r| row_alive[r as usize] && rows[r as usize].contains_key(&c));
                col_support[c as usize].sort_unstable();
                col_support[c as usize].dedup();
                debug_assert_eq!(col_support[c as usize].len(), col_nnz[c as usize]);
                let unit_row = col_support[c as usize]
                    .iter()
                    .filter(|&&r| rows[r as usize][&c].abs() == 1)
                    .min_by_key(|&&r| rows[r as usize].len());
                if let Some(&r) = unit_row {
                    pivot = Some((r, c));
                    break 'select;
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        let pivot_sign = rows[pr as usize][&pc];
        debug_assert_eq!(pivot_sign.abs(), 1);
        let pivot_row: Vec<(u32, i64)> = rows[pr as usize]
            .iter()
            .map(|(&c, &v)| (c, v))
            .collect();
        let eliminating: Vec<u32> = col_support[pc as usize]
            .iter()
            .copied()
            .filter(|&r| r != pr)
            .collect();
        for r in eliminating {
            let Some(&coefficient) = rows[r as usize].get(&pc) else {
                continue;
            };
            // row_r -= (coefficient / pivot) * pivot_row, with pivot ±1.
            let scale = coefficient * pivot_sign;
            for &(c, v) in &pivot_row {
                if !col_alive[c as usize] {
                    continue;
                }
                let delta = scale.checked_mul(v)?;
                match rows[r as usize].entry(c) {
                    std::collections::hash_map::Entry::Occupied(mut slot) => {
                        let updated = i64::checked_sub(*slot.get(), delta)?;
                        if updated == 0 {
                            slot.remove();
                            col_nnz[c as usize] -= 1;
                            enqueue(&mut buckets, c, col_nnz[c as usize]);
                        } else {
                            *slot.get_mut() = updated;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        if delta != 0 {
                            slot.insert(-delta);
                            col_support[c as usize].push(r);
                            col_nnz[c as usize] += 1;
                            enqueue(&mut buckets, c, col_nnz[c as usize]);
                        }
                    }
                }
            }
            debug_assert!(!rows[r as usize].contains_key(&pc));
        }
        // The pivot column is now zero outside the pivot row, and the rest
        // of the pivot row is cleared by column operations that touch
        // nothing else. Retire both.
        row_alive[pr as usize] = false;
        col_alive[pc as usize] = false;
        for &c in rows[pr as usize].keys() {
            if c != pc && col_alive[c as usize] {
                col_nnz[c as usize] -= 1;
                enqueue(&mut buckets, c, col_nnz[c as usize]);
            }
        }
        rows[pr as usize].clear();
        unit_pivots += 1;
    }

    // Densify the survivors and finish with the minimal-pivot elimination.
    let live_cols: Vec<u32> = (0..m.cols as u32).filter(|&c| col_alive[c as usize]).collect();
    let col_index: HashMap<u32, usize> = live_cols
        .iter()
        .enumerate()
        .map(|(idx, &c)| (c, idx))
        .collect();
    let live_rows: Vec<u32> = (0..m.rows as u32)
        .filter(|&r| row_alive[r as usize] && !rows[r as usize].is_empty())
        .collect();
    let mut core = IntMat::zeros(live_rows.len(), live_cols.len());
    for (new_r, &r) in live_rows.iter().enumerate() {
        for (&c, &v) in &rows[r as usize] {
            core.set(new_r, col_index[&c], v);
        }
    }
    let core_factors = eliminate(core.rows(), core.cols(), core.entries().to_vec())?;
    let mut invariant_factors = vec![1u64; unit_pivots];
    invariant_factors.extend(core_factors.into_iter().map(|d| d as u64));
    Some(SmithForm { invariant_factors })
}

trait Entry: Clone + Ord + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {}
impl<T: Clone + Ord + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul> Entry for T {}

/// Absolute value through checked subtraction, so the one machine integer
/// without a representable magnitude escalates instead of wrapping.
fn abs_checked<T: Entry>(x: &T) -> Option<T> {
    if x.is_negative() {
        T::zero().checked_sub(x)
    } else {
        Some(x.clone())
    }
}

/// Diagonalizes in place and returns the invariant factors, or `None` on
/// arithmetic overflow.
fn eliminate<T: Entry>(rows: usize, cols: usize, mut a: Vec<T>) -> Option<Vec<T>> {
    let at = |r: usize, c: usize| r * cols + c;
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: minimal absolute value in the remaining submatrix. A ±1
        // cannot be beaten, so stop searching when one turns up.
        let mut pivot: Option<(usize, usize, T)> = None;
        'search: for i in t..rows {
            for j in t..cols {
                if a[at(i, j)].is_zero() {
                    continue;
                }
                let magnitude = abs_checked(&a[at(i, j)])?;
                let better = match &pivot {
                    Some((_, _, best)) => magnitude < *best,
                    None => true,
                };
                if better {
                    let unbeatable = magnitude.is_one();
                    pivot = Some((i, j, magnitude));
                    if unbeatable {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        swap_rows(&mut a, cols, t, pi);
        swap_cols(&mut a, rows, cols, t, pj);

        'reduce: loop {
            // Clear the pivot column. A nonzero remainder is strictly
            // smaller than the pivot; promote it and start over.
            for i in (t + 1)..rows {
                if a[at(i, t)].is_zero() {
                    continue;
                }
                let (q, rem) = a[at(i, t)].div_rem(&a[at(t, t)]);
                row_sub(&mut a, cols, i, t, &q)?;
                if !rem.is_zero() {
                    swap_rows(&mut a, cols, t, i);
                    continue 'reduce;
                }
            }
            // Clear the pivot row.
            for j in (t + 1)..cols {
                if a[at(t, j)].is_zero() {
                    continue;
                }
                let (q, rem) = a[at(t, j)].div_rem(&a[at(t, t)]);
                col_sub(&mut a, rows, cols, j, t, &q)?;
                if !rem.is_zero() {
                    swap_cols(&mut a, rows, cols, t, j);
                    continue 'reduce;
                }
            }
            // Divisibility: the pivot must divide everything that is left,
            // so the diagonal comes out in a divisibility chain. Folding an
            // offending row into the pivot row re-enters the reduction with
            // a strictly smaller pivot eventually.
            if !abs_checked(&a[at(t, t)])?.is_one() {
                for i in (t + 1)..rows {
                    for j in (t + 1)..cols {
                        if !a[at(i, j)].mod_floor(&a[at(t, t)]).is_zero() {
                            row_add(&mut a, cols, t, i)?;
                            continue 'reduce;
                        }
                    }
                }
            }
            break;
        }
        factors.push(abs_checked(&a[at(t, t)])?);
        t += 1;
    }
    Some(factors)
}

fn swap_rows<T>(a: &mut [T], cols: usize, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for c in 0..cols {
        a.swap(r1 * cols + c, r2 * cols + c);
    }
}

fn swap_cols<T>(a: &mut [T], rows: usize, cols: usize, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for r in 0..rows {
        a.swap(r * cols + c1, r * cols + c2);
    }
}

/// `row_i -= q * row_t`, overflow-checked.
fn row_sub<T: Entry>(a: &mut [T], cols: usize, i: usize, t: usize, q: &T) -> Option<()> {
    if q.is_zero() {
        return Some(());
    }
    for c in 0..cols {
        let scaled = q.checked_mul(&a[t * cols + c])?;
        a[i * cols + c] = a[i * cols + c].checked_sub(&scaled)?;
    }
    Some(())
}

/// `col_j -= q * col_t`, overflow-checked.
fn col_sub<T: Entry>(
    a: &mut [T],
    rows: usize,
    cols: usize,
    j: usize,
    t: usize,
    q: &T,
) -> Option<()> {
    if q.is_zero() {
        return Some(());
    }
    for r in 0..rows {
        let scaled = q.checked_mul(&a[r * cols + t])?;
        a[r * cols + j] = a[r * cols + j].checked_sub(&scaled)?;
    }
    Some(())
}

/// `row_t += row_i`, overflow-checked.
fn row_add<T: Entry>(a: &mut [T], cols: usize, t: usize, i: usize) -> Option<()> {
    for c in 0..cols {
        a[t * cols + c] = a[t * cols + c].checked_add(&a[i * cols + c])?;
    }
    Some(())
}

/// Rank of `m` over the field with `p` elements, `p` an odd prime below
/// `2^31`. Always a lower bound for the integer rank, with equality unless
/// `p` divides an invariant factor — which makes it a cheap independent
/// check on the Smith form.
pub fn rank_mod_p(m: &IntMat, p: u64) -> usize {
    assert!(p > 1 && p < (1 << 31));
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<u64> = m
        .entries()
        .iter()
        .map(|&x| (x.rem_euclid(p as i64)) as u64)
        .collect();
    let at = |r: usize, c: usize| r * cols + c;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| a[at(r, col)] != 0) else {
            continue;
        };
        for c in 0..cols {
            a.swap(at(rank, c), at(pivot_row, c));
        }
        let inv = mod_inverse(a[at(rank, col)], p);
        for r in 0..rows {
            if r == rank || a[at(r, col)] == 0 {
                continue;
            }
            let factor = a[at(r, col)] * inv % p;
            for c in col..cols {
                let sub = factor * a[at(rank, c)] % p;
                a[at(r, c)] = (a[at(r, c)] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    // Fermat: x^(p-2) mod p.
    let mut base = x % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
