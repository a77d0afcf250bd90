//! Finite topological spaces encoded by their specialization preorder.
//!
//! `i <= j` means `i` lies in the closure of `{j}`. The open sets are exactly
//! the up-sets of the preorder, so every point `x` has a smallest open
//! neighbourhood `U_x = {y : x <= y}` and closures are down-sets.

use crate::error::{Error, Result};
use crate::points::{OpenFamily, PointSet, MAX_POINTS};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteSpace {
    n: usize,
    // up[x] = minimal neighbourhood of x, down[x] = closure of {x}
    up: Vec<PointSet>,
    down: Vec<PointSet>,
}

impl FiniteSpace {
    /// Validates a square boolean relation and builds the space.
    pub fn from_preorder<R: AsRef<[bool]>>(matrix: &[R]) -> Result<Self> {
        let n = matrix.len();
        check_size(n)?;
        for (row, r) in matrix.iter().enumerate() {
            let len = r.as_ref().len();
            if len != n {
                return Err(Error::NotSquare { row, len, n });
            }
        }
        let rel = |i: usize, j: usize| matrix[i].as_ref()[j];
        if let Some(i) = (0..n).find(|&i| !rel(i, i)) {
            return Err(Error::NotReflexive(i));
        }
        for i in 0..n {
            for j in 0..n {
                if !rel(i, j) {
                    continue;
                }
                if let Some(k) = (0..n).find(|&k| rel(j, k) && !rel(i, k)) {
                    return Err(Error::NotTransitive { i, j, k });
                }
            }
        }
        let up = (0..n)
            .map(|i| (0..n).filter(|&j| rel(i, j)).collect())
            .collect();
        Ok(Self::from_up_sets(n, up))
    }

    /// Builds a space from a topology given as its list of open sets.
    ///
    /// The list must contain the empty set and the whole space and be closed
    /// under pairwise union and intersection; the first violation found is
    /// reported.
    pub fn from_opens(n: usize, opens: &[PointSet]) -> Result<Self> {
        check_size(n)?;
        let full = PointSet::full(n);
        if let Some(bad) = opens.iter().find(|o| !o.is_subset(full)) {
            return Err(Error::SetOutOfRange { set: *bad, n });
        }
        let family: std::collections::HashSet<PointSet> = opens.iter().copied().collect();
        if !family.contains(&PointSet::EMPTY) {
            return Err(Error::NotATopology("the empty set is missing".into()));
        }
        if !family.contains(&full) {
            return Err(Error::NotATopology("the whole space is missing".into()));
        }
        for &a in opens {
            for &b in opens {
                if !family.contains(&(a | b)) {
                    return Err(Error::NotATopology(format!(
                        "union of {a} and {b} is not listed"
                    )));
                }
                if !family.contains(&(a & b)) {
                    return Err(Error::NotATopology(format!(
                        "intersection of {a} and {b} is not listed"
                    )));
                }
            }
        }
        let up = (0..n)
            .map(|x| {
                opens
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(full, |acc, &o| acc & o)
            })
            .collect();
        Ok(Self::from_up_sets(n, up))
    }

    /// `up[x]` must already be the up-set of `x` under a preorder.
    pub(crate) fn from_up_sets(n: usize, up: Vec<PointSet>) -> Self {
        debug_assert_eq!(up.len(), n);
        let down = (0..n)
            .map(|x| (0..n).filter(|&y| up[y].contains(x)).collect())
            .collect();
        FiniteSpace { n, up, down }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All points as a set.
    pub fn points(&self) -> PointSet {
        PointSet::full(self.n)
    }

    /// `i <= j` in the specialization preorder (`i` is in the closure of `{j}`).
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn preorder_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.leq(i, j)).collect())
            .collect()
    }

    pub fn minimal_nbhd(&self, x: usize) -> Result<PointSet> {
        self.check_point(x)?;
        Ok(self.up[x])
    }

    /// Minimal neighbourhoods of every point, indexed by point.
    pub fn minimal_nbhds(&self) -> &[PointSet] {
        &self.up
    }

    /// Distinct minimal neighbourhoods in tie-break order.
    pub fn distinct_minimal_nbhds(&self) -> Vec<PointSet> {
        let mut v = self.up.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::PointOutOfRange {
                point: x,
                n: self.n,
            })
        }
    }

    pub fn check_set(&self, set: PointSet) -> Result<()> {
        if set.is_subset(self.points()) {
            Ok(())
        } else {
            Err(Error::SetOutOfRange { set, n: self.n })
        }
    }

    /// Checks that every member is a nonempty open set.
    pub fn check_family(&self, family: &OpenFamily) -> Result<()> {
        for &m in family {
            self.check_set(m)?;
            if m.is_empty() || !self.is_open(m) {
                return Err(Error::NotOpen { set: m });
            }
        }
        Ok(())
    }

    /// Down-closure of `a`.
    pub fn closure(&self, a: PointSet) -> PointSet {
        a.iter()
            .filter(|&y| y < self.n)
            .fold(PointSet::EMPTY, |acc, y| acc | self.down[y])
    }

    /// Largest up-set inside `a`.
    pub fn interior(&self, a: PointSet) -> PointSet {
        (0..self.n).filter(|&x| self.up[x].is_subset(a)).collect()
    }

    pub fn is_open(&self, a: PointSet) -> bool {
        a.iter().all(|x| x < self.n && self.up[x].is_subset(a))
    }

    pub fn is_closed(&self, a: PointSet) -> bool {
        self.is_open(a.complement(self.n)) && a.is_subset(self.points())
    }

    pub fn is_dense(&self, a: PointSet) -> bool {
        self.closure(a) == self.points()
    }

    /// Point/closed-set separation, checked over every pair.
    pub fn is_regular(&self) -> bool {
        let opens = crate::families::enumerate_opens(self);
        let full = self.points();
        opens.iter().all(|&complement_of_closed| {
            let closed = full.difference(complement_of_closed);
            complement_of_closed.iter().all(|x| {
                // some open U ∋ x and open V ⊇ closed with U ∩ V = ∅
                opens.iter().any(|&u| {
                    u.contains(x)
                        && opens
                            .iter()
                            .any(|&v| closed.is_subset(v) && !u.intersects(v))
                })
            })
        })
    }

    /// The space whose topology is generated by the G-delta sets.
    ///
    /// Countable intersections of open sets in a finite space are finite
    /// intersections, and intersections of up-sets are up-sets, so the
    /// generated topology is the original one. It is still computed from the
    /// family of opens rather than returned as a clone.
    pub fn delta_space(&self) -> FiniteSpace {
        let opens = crate::families::enumerate_opens(self);
        let mut gdelta: std::collections::BTreeSet<PointSet> = opens.iter().copied().collect();
        loop {
            let snapshot: Vec<PointSet> = gdelta.iter().copied().collect();
            let before = gdelta.len();
            for &a in &snapshot {
                for &b in &snapshot {
                    gdelta.insert(a & b);
                    gdelta.insert(a | b);
                }
            }
            if gdelta.len() == before {
                break;
            }
        }
        let generated: Vec<PointSet> = gdelta.into_iter().collect();
        FiniteSpace::from_opens(self.n, &generated).expect("closed family is a topology")
    }

    /// Product space; `(a, b)` is point `a * other.n() + b`.
    pub fn product(&self, other: &FiniteSpace) -> Result<FiniteSpace> {
        let n = self.n * other.n;
        check_size(n)?;
        let up = (0..n)
            .map(|p| {
                let (a, b) = (p / other.n, p % other.n);
                (0..n)
                    .filter(|&q| self.leq(a, q / other.n) && other.leq(b, q % other.n))
                    .collect()
            })
            .collect();
        Ok(FiniteSpace::from_up_sets(n, up))
    }

    /// Disjoint union; the points of `other` are shifted by `self.n()`.
    pub fn disjoint_sum(&self, other: &FiniteSpace) -> Result<FiniteSpace> {
        let n = self.n + other.n;
        check_size(n)?;
        let shift = self.n;
        let up = self
            .up
            .iter()
            .copied()
            .chain(
                other
                    .up
                    .iter()
                    .map(|u| PointSet::from_bits(u.bits() << shift)),
            )
            .collect();
        Ok(FiniteSpace::from_up_sets(n, up))
    }

    /// The same topology with point `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteSpace> {
        if perm.len() != self.n {
            return Err(Error::InvalidParams(format!(
                "permutation of length {} for a {}-point space",
                perm.len(),
                self.n
            )));
        }
        let mut seen = PointSet::EMPTY;
        for &p in perm {
            self.check_point(p)?;
            seen.insert(p);
        }
        if seen.len() != self.n {
            return Err(Error::InvalidParams("not a permutation".into()));
        }
        let mut up = vec![PointSet::EMPTY; self.n];
        for x in 0..self.n {
            up[perm[x]] = self.up[x].iter().map(|y| perm[y]).collect();
        }
        Ok(FiniteSpace::from_up_sets(self.n, up))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptySpace)
    } else if n > MAX_POINTS {
        Err(Error::TooManyPoints(n))
    } else {
        Ok(())
    }
}
