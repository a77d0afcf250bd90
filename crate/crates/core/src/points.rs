//! Point sets and open families, the values every game move is built from.

use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr};

/// Largest supported point count; point sets are 32-bit masks.
pub const MAX_POINTS: usize = 32;

/// A subset of the points `0..n` of a finite space.
///
/// The `Ord` impl is the tie-break order used everywhere a construction has
/// to pick "some" set: smaller cardinality first, then lexicographic on the
/// ascending member sequence (`{0,3} < {1,2}`).
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash)]
pub struct PointSet(u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        PointSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n >= 32 {
            PointSet(u32::MAX)
        } else {
            PointSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        debug_assert!(x < MAX_POINTS);
        PointSet(1 << x)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        points
            .into_iter()
            .fold(PointSet::EMPTY, |acc, x| acc | PointSet::singleton(x))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_POINTS && self.0 & (1 << x) != 0
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1 << x;
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: PointSet) -> PointSet {
        PointSet(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> PointSet {
        PointSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: PointSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Least member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member plus one (0 for the empty set).
    pub fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Points {
        Points(self.0)
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: PointSet) -> PointSet {
        self.union(rhs)
    }
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: PointSet) -> PointSet {
        self.intersection(rhs)
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PointSet::from_points(iter)
    }
}

/// Ascending iterator over the members of a [`PointSet`].
#[derive(Clone)]
pub struct Points(u32);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

// Sets travel as ascending arrays of point indices.
impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SetVisitor;

        impl<'de> Visitor<'de> for SetVisitor {
            type Value = PointSet;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of point indices below {MAX_POINTS}")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<PointSet, A::Error> {
                let mut set = PointSet::EMPTY;
                while let Some(x) = seq.next_element::<usize>()? {
                    if x >= MAX_POINTS {
                        return Err(de::Error::custom(format!("point {x} out of range")));
                    }
                    set.insert(x);
                }
                Ok(set)
            }
        }

        deserializer.deserialize_seq(SetVisitor)
    }
}

/// A finite family of point sets, deduplicated and kept in [`PointSet`] order.
///
/// Construction only normalizes; whether every member is a nonempty open
/// set of a particular space is checked by [`crate::FiniteSpace::check_family`].
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<PointSet>", into = "Vec<PointSet>")]
pub struct OpenFamily(Vec<PointSet>);

impl OpenFamily {
    pub fn new<I: IntoIterator<Item = PointSet>>(members: I) -> Self {
        let mut members: Vec<PointSet> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        OpenFamily(members)
    }

    pub fn members(&self) -> &[PointSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, set: PointSet) -> bool {
        self.0.binary_search(&set).is_ok()
    }

    pub fn union(&self) -> PointSet {
        self.0.iter().fold(PointSet::EMPTY, |acc, &s| acc | s)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PointSet> {
        self.0.iter()
    }

    /// Least member meeting `target`.
    pub fn first_meeting(&self, target: PointSet) -> Option<PointSet> {
        self.0.iter().copied().find(|m| m.intersects(target))
    }

    /// Whether the members are pairwise disjoint.
    pub fn is_cellular(&self) -> bool {
        self.0.iter().map(|m| m.len()).sum::<usize>() == self.union().len()
    }
}

impl From<Vec<PointSet>> for OpenFamily {
    fn from(members: Vec<PointSet>) -> Self {
        OpenFamily::new(members)
    }
}

impl From<OpenFamily> for Vec<PointSet> {
    fn from(family: OpenFamily) -> Self {
        family.0
    }
}

impl FromIterator<PointSet> for OpenFamily {
    fn from_iter<I: IntoIterator<Item = PointSet>>(iter: I) -> Self {
        OpenFamily::new(iter)
    }
}

impl<'a> IntoIterator for &'a OpenFamily {
    type Item = &'a PointSet;
    type IntoIter = std::slice::Iter<'a, PointSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for OpenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for OpenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(points: &[usize]) -> PointSet {
        points.iter().copied().collect()
    }

    #[test]
    fn tie_break_order() {
        assert!(set(&[1]) < set(&[0, 1]));
        assert!(set(&[0, 1]) < set(&[0, 2]));
        assert!(set(&[0, 3]) < set(&[1, 2]));
        assert!(PointSet::EMPTY < set(&[5]));
        assert_eq!(set(&[2, 0]).cmp(&set(&[0, 2])), Ordering::Equal);
    }

    #[test]
    fn family_normalizes() {
        let f = OpenFamily::new([set(&[0, 1]), set(&[1]), set(&[0, 1])]);
        assert_eq!(f.members(), &[set(&[1]), set(&[0, 1])]);
        assert_eq!(f.first_meeting(set(&[0])), Some(set(&[0, 1])));
        assert!(!f.is_cellular());
    }

    #[test]
    fn json_shape() {
        let f = OpenFamily::new([set(&[0, 1]), set(&[1])]);
        assert_eq!(serde_json::to_string(&f).unwrap(), "[[1],[0,1]]");
        let back: OpenFamily = serde_json::from_str("[[0,1],[1]]").unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<PointSet>("[40]").is_err());
    }

    proptest! {
        #[test]
        fn order_is_total_and_consistent(a in any::<u32>(), b in any::<u32>()) {
            let (a, b) = (PointSet::from_bits(a), PointSet::from_bits(b));
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
            let ea: Vec<usize> = a.iter().collect();
            let eb: Vec<usize> = b.iter().collect();
            let expected = ea.len().cmp(&eb.len()).then(ea.cmp(&eb));
            prop_assert_eq!(a.cmp(&b), expected);
        }

        #[test]
        fn set_json_roundtrip(bits in any::<u32>()) {
            let s = PointSet::from_bits(bits);
            let json = serde_json::to_string(&s).unwrap();
            prop_assert_eq!(serde_json::from_str::<PointSet>(&json).unwrap(), s);
        }
    }
}
