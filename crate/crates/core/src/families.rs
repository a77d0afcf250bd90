//! Open sets and families of open sets: the move collections of the games.
//!
//! Families are subsets of the nonempty opens, addressed internally by a
//! bitmask over the opens listed in tie-break order. Enumeration order is
//! ascending mask order, which makes every "first family such that" choice
//! reproducible.

use crate::error::{Error, Result};
use crate::points::{OpenFamily, PointSet};
use crate::space::FiniteSpace;
use std::collections::HashMap;

/// Default cap on the number of candidate families an enumeration may scan.
pub const DEFAULT_FAMILY_CAP: u64 = 1 << 20;

/// All open sets (up-sets), including the empty set, in tie-break order.
pub fn enumerate_opens(space: &FiniteSpace) -> Vec<PointSet> {
    // every up-set is the union of the minimal neighbourhoods of its points
    let mut opens = vec![PointSet::EMPTY];
    let mut seen: std::collections::HashSet<PointSet> = opens.iter().copied().collect();
    for &u in space.minimal_nbhds() {
        let grown: Vec<PointSet> = opens.iter().map(|&o| o | u).collect();
        for g in grown {
            if seen.insert(g) {
                opens.push(g);
            }
        }
    }
    opens.sort_unstable();
    opens
}

/// Position of every open set in [`enumerate_opens`] order.
#[derive(Clone, Debug)]
pub struct OpenLattice {
    opens: Vec<PointSet>,
    lookup: Lookup,
}

#[derive(Clone, Debug)]
enum Lookup {
    Dense(Vec<u32>),
    Sparse(HashMap<PointSet, usize>),
}

const DENSE_LOOKUP_MAX_POINTS: usize = 16;

impl OpenLattice {
    pub fn new(space: &FiniteSpace) -> Self {
        let opens = enumerate_opens(space);
        let lookup = if space.n() <= DENSE_LOOKUP_MAX_POINTS {
            let mut table = vec![u32::MAX; 1 << space.n()];
            for (i, o) in opens.iter().enumerate() {
                table[o.bits() as usize] = i as u32;
            }
            Lookup::Dense(table)
        } else {
            Lookup::Sparse(opens.iter().enumerate().map(|(i, &o)| (o, i)).collect())
        };
        OpenLattice { opens, lookup }
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    /// Opens other than the empty set.
    pub fn nonempty(&self) -> &[PointSet] {
        &self.opens[1..]
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, set: PointSet) -> Option<usize> {
        match &self.lookup {
            Lookup::Dense(table) => table
                .get(set.bits() as usize)
                .copied()
                .filter(|&i| i != u32::MAX)
                .map(|i| i as usize),
            Lookup::Sparse(map) => map.get(&set).copied(),
        }
    }
}

/// Every family of nonempty opens, addressed by mask, with cached unions.
#[derive(Clone, Debug)]
pub struct FamilyTable {
    members: Vec<PointSet>,
    unions: Vec<PointSet>,
}

impl FamilyTable {
    pub fn new(space: &FiniteSpace, cap: u64) -> Result<Self> {
        let members: Vec<PointSet> = enumerate_opens(space).into_iter().skip(1).collect();
        let needed = 1u128 << members.len();
        if needed > cap as u128 {
            return Err(Error::ResourceCap { needed, cap });
        }
        let count = 1usize << members.len();
        let mut unions = vec![PointSet::EMPTY; count];
        for mask in 1..count {
            let low = mask.trailing_zeros() as usize;
            unions[mask] = unions[mask & (mask - 1)] | members[low];
        }
        Ok(FamilyTable { members, unions })
    }

    /// Candidate members (the nonempty opens) in mask-bit order.
    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    /// Number of masks, including the empty family.
    pub fn len(&self) -> usize {
        self.unions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn union(&self, mask: u64) -> PointSet {
        self.unions[mask as usize]
    }

    pub fn is_cellular(&self, mask: u64) -> bool {
        let total: usize = mask_bits(mask).map(|i| self.members[i].len()).sum();
        total == self.union(mask).len()
    }

    pub fn family(&self, mask: u64) -> OpenFamily {
        OpenFamily::new(mask_bits(mask).map(|i| self.members[i]))
    }

    pub fn mask_of(&self, family: &OpenFamily) -> Option<u64> {
        family.iter().try_fold(0u64, |acc, m| {
            self.members
                .binary_search(m)
                .ok()
                .map(|i| acc | (1u64 << i))
        })
    }

    pub fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        1..self.unions.len() as u64
    }

    pub fn cover_masks<'a>(&'a self, space: &'a FiniteSpace) -> impl Iterator<Item = u64> + 'a {
        let full = space.points();
        self.masks().filter(move |&m| self.union(m) == full)
    }

    pub fn dense_masks<'a>(&'a self, space: &'a FiniteSpace) -> impl Iterator<Item = u64> + 'a {
        self.masks().filter(move |&m| space.is_dense(self.union(m)))
    }

    /// Pairwise-disjoint families that no nonempty open set misses. A
    /// nonempty open set disjoint from the union exists exactly when the
    /// union is not dense, so these are the dense cellular families.
    pub fn maximal_cellular_masks<'a>(
        &'a self,
        space: &'a FiniteSpace,
    ) -> impl Iterator<Item = u64> + 'a {
        self.dense_masks(space)
            .filter(move |&m| self.is_cellular(m))
    }
}

pub(crate) fn mask_bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

pub fn enumerate_covers(space: &FiniteSpace) -> Result<Vec<OpenFamily>> {
    enumerate_covers_with_cap(space, DEFAULT_FAMILY_CAP)
}

pub fn enumerate_covers_with_cap(space: &FiniteSpace, cap: u64) -> Result<Vec<OpenFamily>> {
    let table = FamilyTable::new(space, cap)?;
    Ok(table.cover_masks(space).map(|m| table.family(m)).collect())
}

pub fn enumerate_dense_families(space: &FiniteSpace) -> Result<Vec<OpenFamily>> {
    enumerate_dense_families_with_cap(space, DEFAULT_FAMILY_CAP)
}

pub fn enumerate_dense_families_with_cap(space: &FiniteSpace, cap: u64) -> Result<Vec<OpenFamily>> {
    let table = FamilyTable::new(space, cap)?;
    Ok(table.dense_masks(space).map(|m| table.family(m)).collect())
}

pub fn enumerate_maximal_cellular(space: &FiniteSpace) -> Result<Vec<OpenFamily>> {
    enumerate_maximal_cellular_with_cap(space, DEFAULT_FAMILY_CAP)
}

pub fn enumerate_maximal_cellular_with_cap(
    space: &FiniteSpace,
    cap: u64,
) -> Result<Vec<OpenFamily>> {
    let table = FamilyTable::new(space, cap)?;
    Ok(table
        .maximal_cellular_masks(space)
        .map(|m| table.family(m))
        .collect())
}

/// A maximal cellular family refining a dense-union family, together with
/// the member of the original family that contains each refined member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    family: OpenFamily,
    witnesses: Vec<(PointSet, PointSet)>,
}

impl Refinement {
    pub fn family(&self) -> &OpenFamily {
        &self.family
    }

    /// `(refined member, containing member of the original family)` pairs.
    pub fn witnesses(&self) -> &[(PointSet, PointSet)] {
        &self.witnesses
    }

    pub fn witness_of(&self, member: PointSet) -> Option<PointSet> {
        self.witnesses
            .iter()
            .find(|(m, _)| *m == member)
            .map(|&(_, w)| w)
    }
}

/// Greedy refinement: scan every nonempty open contained in some member of
/// `family`, smallest first, keeping each one disjoint from those already
/// kept.
///
/// The result is maximal: a nonempty open `W` missing the kept union meets
/// some member `O` (the union of `family` is dense), and `W ∩ O` would have
/// been kept when it was scanned.
pub fn maximal_disjoint_refinement(space: &FiniteSpace, family: &OpenFamily) -> Result<Refinement> {
    space.check_family(family)?;
    let union = family.union();
    if !space.is_dense(union) {
        return Err(Error::NotDense { union });
    }
    let mut kept = Vec::new();
    let mut covered = PointSet::EMPTY;
    for open in enumerate_opens(space).into_iter().skip(1) {
        if open.intersects(covered) {
            continue;
        }
        if let Some(&w) = family.iter().find(|m| open.is_subset(**m)) {
            kept.push((open, w));
            covered = covered | open;
        }
    }
    Ok(Refinement {
        family: kept.iter().map(|&(m, _)| m).collect(),
        witnesses: kept,
    })
}
