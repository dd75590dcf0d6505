//! Exhaustive reference checks for small graphs.
//!
//! These are deliberately independent of the solver: subsets are encoded
//! as bitmasks, edges are counted through adjacency masks, and comparisons
//! go through a scaled integer fast path with an exact big-rational
//! fallback. Tests use them as ground truth against the constructive
//! pipeline, which shares none of this code.

use num::traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// Largest vertex count accepted by [`brute_force_partition`].
pub const PARTITION_CAP: usize = 24;
/// Largest vertex count accepted by [`all_proper_subsets_sparse`].
pub const SUBSET_CAP: usize = 20;

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut masks = vec![0u64; n];
    for v in 0..n as u32 {
        for &u in g.neighbors(v) {
            masks[v as usize] |= 1u64 << u;
        }
    }
    masks
}

/// Number of edges with both ends inside `mask`.
fn edges_within(masks: &[u64], mask: u64) -> u64 {
    let mut doubled = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        doubled += (masks[v] & mask).count_ones() as u64;
    }
    doubled / 2
}

/// Exact test of `edges >= weight * count`, via `i128` cross
/// multiplication when the weight fits, otherwise big rationals.
fn side_ok(edges: u64, count: u64, weight: &Rational) -> bool {
    if let (Some(num), Some(den)) = (weight.numer().to_i128(), weight.denom().to_i128()) {
        if let (Some(lhs), Some(rhs)) =
            ((edges as i128).checked_mul(den), num.checked_mul(count as i128))
        {
            return lhs >= rhs;
        }
    }
    Rational::from(edges) >= weight * &Rational::from(count)
}

fn mask_to_set(mask: u64) -> VertexSet {
    let mut ids = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        ids.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    VertexSet::new(ids)
}

/// Finds the first partition `(A, B)` with `||A|| >= s|A|` and
/// `||B|| >= t|B|` by trying every proper nonempty subset as `A`, in
/// increasing order of its bitmask (bit `v` set means `v` is in `A`).
/// Returns `None` when no partition exists.
pub fn brute_force_partition(
    g: &Graph,
    s: &Rational,
    t: &Rational,
) -> Result<Option<(VertexSet, VertexSet)>> {
    let n = g.vertex_count();
    if n > PARTITION_CAP {
        return Err(Error::TooLarge { n, cap: PARTITION_CAP });
    }
    if !s.is_positive() {
        return Err(Error::NonPositiveParameter(format!("s = {s}")));
    }
    if !t.is_positive() {
        return Err(Error::NonPositiveParameter(format!("t = {t}")));
    }
    if n < 2 {
        return Ok(None);
    }
    let masks = adjacency_masks(g);
    let full = (1u64 << n) - 1;
    for mask in 1..full {
        let co = full & !mask;
        let a_count = mask.count_ones() as u64;
        let b_count = co.count_ones() as u64;
        if !side_ok(edges_within(&masks, mask), a_count, s) {
            continue;
        }
        if !side_ok(edges_within(&masks, co), b_count, t) {
            continue;
        }
        return Ok(Some((mask_to_set(mask), mask_to_set(co))));
    }
    Ok(None)
}

/// Checks that every proper nonempty subset `X` satisfies
/// `||X|| < c|X|`, i.e. no strict subgraph reaches average degree `2c`.
pub fn all_proper_subsets_sparse(g: &Graph, c: &Rational) -> Result<bool> {
    let n = g.vertex_count();
    if n > SUBSET_CAP {
        return Err(Error::TooLarge { n, cap: SUBSET_CAP });
    }
    if n == 0 {
        return Ok(true);
    }
    let masks = adjacency_masks(g);
    let full = (1u64 << n) - 1;
    for mask in 1..full {
        let count = mask.count_ones() as u64;
        if side_ok(edges_within(&masks, mask), count, c) {
            return Ok(false);
        }
    }
    Ok(true)
}
