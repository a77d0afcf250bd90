//! Brute-force reference implementations.
//!
//! Nothing here shares code with the fast paths beyond `FiniteSpace` itself:
//! opens are found by testing every subset, families by looping over bit
//! masks of the open list, and counts by filtering raw relation patterns.

use crate::points::PointSet;
use crate::space::FiniteSpace;
use rayon::prelude::*;

/// Every subset of the points that is closed upwards, ascending by mask.
pub fn opens_by_subset_test(space: &FiniteSpace) -> Vec<PointSet> {
    let n = space.n();
    (0u64..1 << n)
        .map(|m| PointSet::from_bits(m as u32))
        .filter(|s| {
            s.iter()
                .all(|x| (0..n).all(|y| !space.leq(x, y) || s.contains(y)))
        })
        .collect()
}

/// `{∅} ∪ {U_x}` closed under pairwise unions and intersections.
pub fn opens_by_lattice_closure(space: &FiniteSpace) -> Vec<PointSet> {
    let n = space.n();
    let mut sets: std::collections::BTreeSet<u32> = std::iter::once(0)
        .chain((0..n).map(|x| {
            (0..n)
                .filter(|&y| space.leq(x, y))
                .fold(0u32, |acc, y| acc | 1 << y)
        }))
        .collect();
    loop {
        let snapshot: Vec<u32> = sets.iter().copied().collect();
        let before = sets.len();
        for &a in &snapshot {
            for &b in &snapshot {
                sets.insert(a | b);
                sets.insert(a & b);
            }
        }
        if sets.len() == before {
            return sets.into_iter().map(PointSet::from_bits).collect();
        }
    }
}

fn nonempty_opens(space: &FiniteSpace) -> Vec<PointSet> {
    opens_by_subset_test(space)
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect()
}

fn dense(space: &FiniteSpace, a: PointSet) -> bool {
    // every nonempty open meets a
    nonempty_opens(space).iter().all(|u| u.intersects(a))
}

fn pick(items: &[PointSet], mask: u64) -> impl Iterator<Item = PointSet> + '_ {
    (0..items.len())
        .filter(move |i| mask >> i & 1 == 1)
        .map(move |i| items[i])
}

fn union_of(items: &[PointSet], mask: u64) -> PointSet {
    pick(items, mask).fold(PointSet::EMPTY, |a, b| a | b)
}

/// Least size of a family `P` of nonempty opens that has a member inside
/// each set of `targets`.
fn min_hitting_family(candidates: &[PointSet], targets: &[PointSet]) -> usize {
    (1u64..1 << candidates.len())
        .filter(|&m| {
            targets
                .iter()
                .all(|t| pick(candidates, m).any(|p| p.is_subset(*t)))
        })
        .map(|m| m.count_ones() as usize)
        .min()
        .expect("the targets themselves form such a family")
}

pub fn pi_weight(space: &FiniteSpace) -> usize {
    let opens = nonempty_opens(space);
    min_hitting_family(&opens, &opens)
}

pub fn pi_character(space: &FiniteSpace, x: usize) -> usize {
    let opens = nonempty_opens(space);
    let nbhds: Vec<PointSet> = opens.iter().copied().filter(|u| u.contains(x)).collect();
    min_hitting_family(&opens, &nbhds)
}

/// Maximum over every open cover of the least dense subfamily size.
pub fn wl_degree(space: &FiniteSpace) -> usize {
    let opens = nonempty_opens(space);
    let is_dense = |a: PointSet| opens.iter().all(|u| u.intersects(a));
    let full = space.points();
    let mut worst = 0;
    for cover in 1u64..1 << opens.len() {
        if union_of(&opens, cover) != full {
            continue;
        }
        let members: Vec<PointSet> = pick(&opens, cover).collect();
        let best = (1..=members.len())
            .find(|&k| any_combination(&members, k, PointSet::EMPTY, &is_dense))
            .expect("the cover itself is dense");
        worst = worst.max(best);
    }
    worst
}

/// Whether some `k` of `items`, united with `acc`, satisfy `pred`.
fn any_combination(
    items: &[PointSet],
    k: usize,
    acc: PointSet,
    pred: &dyn Fn(PointSet) -> bool,
) -> bool {
    if k == 0 {
        return pred(acc);
    }
    (0..items.len()).any(|i| any_combination(&items[i + 1..], k - 1, acc | items[i], pred))
}

pub fn cellularity(space: &FiniteSpace) -> usize {
    let opens = nonempty_opens(space);
    (1u64..1 << opens.len())
        .filter(|&m| {
            let members: Vec<PointSet> = pick(&opens, m).collect();
            members
                .iter()
                .enumerate()
                .all(|(i, a)| members[i + 1..].iter().all(|b| !a.intersects(*b)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .expect("a single open is cellular")
}

pub fn density(space: &FiniteSpace) -> usize {
    (1u64..1 << space.n())
        .map(|m| PointSet::from_bits(m as u32))
        .filter(|&s| dense(space, s))
        .map(PointSet::len)
        .min()
        .expect("the whole space is dense")
}

/// Maximal cellular families as bit masks over [`opens_by_subset_test`]
/// minus the empty set.
pub fn maximal_cellular_families(space: &FiniteSpace) -> Vec<Vec<PointSet>> {
    let opens = nonempty_opens(space);
    (1u64..1 << opens.len())
        .filter_map(|m| {
            let members: Vec<PointSet> = pick(&opens, m).collect();
            let disjoint = members
                .iter()
                .enumerate()
                .all(|(i, a)| members[i + 1..].iter().all(|b| !a.intersects(*b)));
            let union = union_of(&opens, m);
            let maximal = opens.iter().all(|u| u.intersects(union));
            (disjoint && maximal).then_some(members)
        })
        .collect()
}

/// Point/closed-set separation from the definition, over subset-tested opens.
pub fn is_regular(space: &FiniteSpace) -> bool {
    let opens = opens_by_subset_test(space);
    let full = space.points();
    opens.iter().all(|&comp| {
        let closed = full.difference(comp);
        comp.iter().all(|x| {
            opens.iter().any(|&u| {
                u.contains(x)
                    && opens
                        .iter()
                        .any(|&v| closed.is_subset(v) && !u.intersects(v))
            })
        })
    })
}

pub fn is_symmetric(space: &FiniteSpace) -> bool {
    let n = space.n();
    (0..n).all(|i| (0..n).all(|j| space.leq(i, j) == space.leq(j, i)))
}

/// Opens of the product topology as unions of boxes `U × V`, with `(a, b)`
/// numbered `a * t.n() + b`.
pub fn product_opens(s: &FiniteSpace, t: &FiniteSpace) -> Vec<PointSet> {
    let (os, ot) = (opens_by_subset_test(s), opens_by_subset_test(t));
    let boxes: Vec<PointSet> = os
        .iter()
        .flat_map(|&u| {
            ot.iter().map(move |&v| {
                u.iter()
                    .flat_map(|a| v.iter().map(move |b| a * t.n() + b))
                    .collect()
            })
        })
        .collect();
    let mut opens: std::collections::BTreeSet<u32> = boxes.iter().map(|b| b.bits()).collect();
    loop {
        let snapshot: Vec<u32> = opens.iter().copied().collect();
        let before = opens.len();
        for &a in &snapshot {
            for &b in &snapshot {
                opens.insert(a | b);
            }
        }
        if opens.len() == before {
            return opens.into_iter().map(PointSet::from_bits).collect();
        }
    }
}

fn is_transitive(rel: &[u32], n: usize) -> bool {
    (0..n).all(|i| {
        let mut reach = 0u32;
        for j in 0..n {
            if rel[i] >> j & 1 == 1 {
                reach |= rel[j];
            }
        }
        reach & !rel[i] == 0
    })
}

/// Labeled preorders on `n` points by testing every off-diagonal bit pattern
/// for transitivity. Practical up to `n = 5`.
pub fn count_preorders_by_filter(n: usize) -> u64 {
    assert!(
        (1..=5).contains(&n),
        "the filter is only run for 1..=5 points"
    );
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len())
        .into_par_iter()
        .filter(|&pattern| {
            let mut rel: Vec<u32> = (0..n).map(|i| 1 << i).collect();
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if pattern >> b & 1 == 1 {
                    rel[i] |= 1 << j;
                }
            }
            is_transitive(&rel, n)
        })
        .count() as u64
}

/// Labeled partial orders on `m` points: every assignment of `<`, `>` or
/// incomparable to each pair, filtered for transitivity.
pub fn count_posets(m: usize) -> u64 {
    assert!(
        (1..=6).contains(&m),
        "posets are only counted for 1..=6 points"
    );
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let total = 3u64.pow(pairs.len() as u32);
    (0..total)
        .into_par_iter()
        .filter(|&code| {
            let mut rel: Vec<u32> = (0..m).map(|i| 1 << i).collect();
            let mut c = code;
            for &(i, j) in &pairs {
                match c % 3 {
                    1 => rel[i] |= 1 << j,
                    2 => rel[j] |= 1 << i,
                    _ => {}
                }
                c /= 3;
            }
            is_transitive(&rel, m)
        })
        .count() as u64
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: usize, k: usize) -> u64 {
    let mut row = vec![0u64; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = j as u64 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// Labeled preorders as partitions into equivalence classes, each
/// partition carrying a partial order on its classes.
pub fn count_preorders_by_posets(n: usize) -> u64 {
    (1..=n).map(|k| stirling2(n, k) * count_posets(k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacegen::{discrete, fan, sierpinski};

    #[test]
    fn small_counts() {
        let filtered: Vec<u64> = (1..=4).map(count_preorders_by_filter).collect();
        assert_eq!(filtered, vec![1, 4, 29, 355]);
        let via_posets: Vec<u64> = (1..=4).map(count_preorders_by_posets).collect();
        assert_eq!(via_posets, filtered);
        assert_eq!(
            (1..=4).map(count_posets).collect::<Vec<_>>(),
            vec![1, 3, 19, 219]
        );
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(stirling2(5, 3), 25);
        assert_eq!(stirling2(3, 0), 0);
    }

    #[test]
    fn brute_invariants() {
        let s = sierpinski();
        assert_eq!(pi_weight(&s), 1);
        assert_eq!(pi_character(&s, 0), 1);
        assert_eq!(wl_degree(&discrete(3)), 3);
        assert_eq!(cellularity(&fan(3)), 3);
        assert_eq!(density(&fan(2)), 2);
        assert_eq!(maximal_cellular_families(&s).len(), 2);
    }
}
