//! Cardinal invariants of finite spaces, computed exactly.

use crate::error::Result;
use crate::points::PointSet;
use crate::space::FiniteSpace;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub cellularity: usize,
    pub density: usize,
    pub pi_weight: usize,
    pub pi_character: Vec<usize>,
    pub wl_degree: usize,
}

impl InvariantReport {
    pub fn compute(space: &FiniteSpace) -> Self {
        InvariantReport {
            cellularity: cellularity(space),
            density: density(space),
            pi_weight: pi_weight(space),
            pi_character: (0..space.n())
                .map(|x| pi_character(space, x).expect("point in range"))
                .collect(),
            wl_degree: wl_degree(space),
        }
    }
}

/// Largest pairwise-disjoint family of nonempty open sets.
///
/// Each member of a disjoint open family contains the minimal neighbourhood
/// of any of its points, so it is enough to find a maximum independent set
/// in the intersection graph of the distinct minimal neighbourhoods.
pub fn cellularity(space: &FiniteSpace) -> usize {
    let nbhds = space.distinct_minimal_nbhds();
    let adjacency: Vec<u64> = nbhds
        .iter()
        .map(|a| {
            nbhds
                .iter()
                .enumerate()
                .filter(|(_, b)| a.intersects(**b))
                .fold(0u64, |acc, (j, _)| acc | (1 << j))
        })
        .collect();
    let mut best = 0;
    max_independent(&adjacency, (1u64 << nbhds.len()) - 1, 0, &mut best);
    best
}

fn max_independent(adjacency: &[u64], candidates: u64, size: usize, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + candidates.count_ones() as usize <= *best {
        return;
    }
    let v = candidates.trailing_zeros() as usize;
    // adjacency[v] contains v itself
    max_independent(adjacency, candidates & !adjacency[v], size + 1, best);
    max_independent(adjacency, candidates & !(1 << v), size, best);
}

/// Least size of a dense set of points.
pub fn density(space: &FiniteSpace) -> usize {
    let n = space.n();
    min_subset_size(n, |mask| space.is_dense(PointSet::from_bits(mask as u32)))
        .expect("the whole space is dense")
}

/// Least size of a π-base.
///
/// Every nonempty open set contains a minimal neighbourhood, and a π-base
/// must contain a set inside each ⊆-minimal minimal neighbourhood, which can
/// only be that neighbourhood itself. So the ⊆-minimal minimal
/// neighbourhoods form the smallest π-base.
pub fn pi_weight(space: &FiniteSpace) -> usize {
    let nbhds = space.distinct_minimal_nbhds();
    nbhds
        .iter()
        .filter(|a| !nbhds.iter().any(|b| b != *a && b.is_subset(**a)))
        .count()
}

/// Least size of a local π-base at `x`.
///
/// Every open set containing `x` contains `U_x`, so `{U_x}` is a local
/// π-base, and a local π-base is never empty because the whole space is a
/// neighbourhood of `x`.
pub fn pi_character(space: &FiniteSpace, x: usize) -> Result<usize> {
    let u = space.minimal_nbhd(x)?;
    debug_assert!(!u.is_empty());
    Ok(1)
}

/// Weak Lindelöf degree: the worst case, over open covers, of the smallest
/// subfamily with dense union.
///
/// The cover by minimal neighbourhoods is the worst case. Any cover `O` has,
/// for each `x`, a member containing `x` and hence `U_x`; replacing each
/// `U_x` of a dense selection by such a member gives a dense selection from
/// `O` of no larger size.
pub fn wl_degree(space: &FiniteSpace) -> usize {
    let nbhds = space.distinct_minimal_nbhds();
    min_subset_size(nbhds.len(), |mask| {
        let union = crate::families::mask_bits(mask).fold(PointSet::EMPTY, |acc, i| acc | nbhds[i]);
        space.is_dense(union)
    })
    .expect("the minimal neighbourhoods cover the space")
}

/// Smallest popcount of a mask over `width` bits satisfying `pred`.
fn min_subset_size(width: usize, mut pred: impl FnMut(u64) -> bool) -> Option<usize> {
    (1..=width).find(|&k| masks_of_size(width, k).any(&mut pred))
}

/// Masks over `width` bits with exactly `k` bits set, ascending.
pub(crate) fn masks_of_size(width: usize, k: usize) -> impl Iterator<Item = u64> {
    debug_assert!(k >= 1 && k <= width && width < 64);
    let limit = 1u64 << width;
    let mut next = Some((1u64 << k) - 1);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        // Gosper's hack
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        next = Some((((r ^ cur) >> 2) / c) | r);
        Some(cur)
    })
}
