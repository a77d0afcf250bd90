//! Named constructions, exhaustive enumeration and random generation of
//! finite spaces.

use crate::error::{Error, Result};
use crate::format::{CatalogLine, SpaceDocument};
use crate::points::PointSet;
use crate::space::FiniteSpace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest point count [`enumerate_topologies`] accepts.
pub const MAX_ENUMERATION_POINTS: usize = 6;

/// Identifier recorded alongside spaces produced by [`random_space`].
pub const RANDOM_SPACE_ALGORITHM: &str = "chacha8-bernoulli-edges-warshall-closure-v1";

pub fn discrete(n: usize) -> FiniteSpace {
    assert!(n >= 1, "spaces need at least one point");
    FiniteSpace::from_up_sets(n, (0..n).map(PointSet::singleton).collect())
}

pub fn indiscrete(n: usize) -> FiniteSpace {
    assert!(n >= 1, "spaces need at least one point");
    FiniteSpace::from_up_sets(n, vec![PointSet::full(n); n])
}

/// Two points with `0 <= 1`: opens are `∅, {1}, {0,1}`.
pub fn sierpinski() -> FiniteSpace {
    chain(2)
}

/// `0 <= 1 <= .. <= n-1`.
pub fn chain(n: usize) -> FiniteSpace {
    assert!(n >= 1, "spaces need at least one point");
    FiniteSpace::from_up_sets(
        n,
        (0..n)
            .map(|i| PointSet::full(n).difference(PointSet::full(i)))
            .collect(),
    )
}

/// Point 0 below `k` pairwise incomparable points `1..=k`.
pub fn fan(k: usize) -> FiniteSpace {
    assert!(k >= 1, "a fan needs at least one top point");
    let n = k + 1;
    let mut up: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
    up[0] = PointSet::full(n);
    FiniteSpace::from_up_sets(n, up)
}

/// The topology whose opens are unions of the given blocks.
pub fn partition(n: usize, blocks: &[Vec<usize>]) -> Result<FiniteSpace> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    if n > crate::MAX_POINTS {
        return Err(Error::TooManyPoints(n));
    }
    let mut up = vec![PointSet::EMPTY; n];
    let mut seen = PointSet::EMPTY;
    for block in blocks {
        if block.is_empty() {
            return Err(Error::InvalidParams("empty partition block".into()));
        }
        let b: PointSet = block.iter().copied().collect();
        for &x in block {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, n });
            }
        }
        if b.intersects(seen) {
            return Err(Error::InvalidParams(format!(
                "block {b} overlaps another block"
            )));
        }
        seen = seen | b;
        for x in b.iter() {
            up[x] = b;
        }
    }
    if seen != PointSet::full(n) {
        return Err(Error::InvalidParams(format!(
            "blocks cover {seen}, not all {n} points"
        )));
    }
    Ok(FiniteSpace::from_up_sets(n, up))
}

/// Parses `discrete:N`, `indiscrete:N`, `sierpinski`, `chain:N`, `fan:K`
/// and `partition:0,1|2` (blocks separated by `|`).
pub fn named(spec: &str) -> Result<FiniteSpace> {
    let (kind, params) = spec.split_once(':').unwrap_or((spec, ""));
    let count = |what: &str| -> Result<usize> {
        let v: usize = params.trim().parse().map_err(|_| {
            Error::InvalidParams(format!("{what} needs a point count, got {params:?}"))
        })?;
        if v == 0 {
            return Err(Error::InvalidParams(format!(
                "{what} needs at least one point"
            )));
        }
        if v > crate::MAX_POINTS {
            return Err(Error::TooManyPoints(v));
        }
        Ok(v)
    };
    match kind.trim() {
        "discrete" => Ok(discrete(count("discrete")?)),
        "indiscrete" => Ok(indiscrete(count("indiscrete")?)),
        "sierpinski" if params.is_empty() => Ok(sierpinski()),
        "chain" => Ok(chain(count("chain")?)),
        "fan" => {
            let k = count("fan")?;
            if k + 1 > crate::MAX_POINTS {
                return Err(Error::TooManyPoints(k + 1));
            }
            Ok(fan(k))
        }
        "partition" => {
            let blocks = params
                .split('|')
                .map(|b| {
                    b.split(',')
                        .map(|p| {
                            p.trim().parse::<usize>().map_err(|_| {
                                Error::InvalidParams(format!("bad point {p:?} in partition"))
                            })
                        })
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let n = blocks.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
            partition(n, &blocks)
        }
        other => Err(Error::InvalidParams(format!(
            "unknown space kind {other:?}"
        ))),
    }
}

/// Reflexive-transitive closure of a random relation where each ordered pair
/// of distinct points is related with probability `density`.
pub fn random_space(n: usize, density: f64, seed: u64) -> Result<FiniteSpace> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    if n > crate::MAX_POINTS {
        return Err(Error::TooManyPoints(n));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParams(format!(
            "edge density {density} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut up: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
    for (i, row) in up.iter_mut().enumerate() {
        for j in 0..n {
            if i != j && rng.random_bool(density) {
                row.insert(j);
            }
        }
    }
    // Warshall
    for k in 0..n {
        for i in 0..n {
            if up[i].contains(k) {
                up[i] = up[i] | up[k];
            }
        }
    }
    Ok(FiniteSpace::from_up_sets(n, up))
}

/// A catalogued space with its stable identifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceCatalogEntry {
    pub space: FiniteSpace,
    pub id: String,
    pub iso_class: Option<String>,
}

impl SpaceCatalogEntry {
    pub fn new(space: FiniteSpace, with_iso_class: bool) -> Self {
        let id = space_id(&space);
        let iso_class = with_iso_class.then(|| iso_class(&space));
        SpaceCatalogEntry {
            space,
            id,
            iso_class,
        }
    }

    pub fn to_line(&self) -> CatalogLine {
        CatalogLine {
            space: SpaceDocument::from_space(&self.space),
            id: self.id.clone(),
            iso_class: self.iso_class.clone(),
        }
    }
}

/// Stable identifier: the point count as two hex digits followed by the
/// row-major preorder bit string, packed most significant bit first.
/// Distinct preorders get distinct ids.
pub fn space_id(space: &FiniteSpace) -> String {
    let n = space.n();
    code_to_hex(n, (0..n * n).map(|b| space.leq(b / n, b % n)))
}

fn code_to_hex(n: usize, bits: impl Iterator<Item = bool>) -> String {
    let mut out = format!("{n:02x}");
    let mut byte = 0u8;
    let mut filled = 0;
    for bit in bits {
        byte = (byte << 1) | u8::from(bit);
        filled += 1;
        if filled == 8 {
            out.push_str(&format!("{byte:02x}"));
            byte = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push_str(&format!("{:02x}", byte << (8 - filled)));
    }
    out
}

/// Identifier shared by all relabelings of a space: the id of the relabeling
/// whose preorder bit string is least. Only defined for at most
/// [`MAX_ENUMERATION_POINTS`] + 2 points (permutation search).
pub fn iso_class(space: &FiniteSpace) -> String {
    let n = space.n();
    assert!(
        n <= MAX_ENUMERATION_POINTS + 2,
        "iso_class is limited to 8 points"
    );
    let code = canonical_code(space, &permutations(n));
    code_to_hex(n, (0..n * n).map(|b| code >> (n * n - 1 - b) & 1 == 1))
}

fn canonical_code(space: &FiniteSpace, perms: &[Vec<usize>]) -> u64 {
    let n = space.n();
    let nn = n * n;
    perms
        .iter()
        .map(|p| {
            let mut code = 0u64;
            for i in 0..n {
                for j in space.minimal_nbhds()[i].iter() {
                    code |= 1 << (nn - 1 - (p[i] * n + p[j]));
                }
            }
            code
        })
        .min()
        .expect("at least one permutation")
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Every topology on `n` labeled points, optionally one per isomorphism
/// class (the representative is the least relabeling).
pub fn enumerate_topologies(n: usize, up_to_iso: bool) -> Result<Vec<SpaceCatalogEntry>> {
    let spaces = labeled_preorders(n)?;
    if !up_to_iso {
        return Ok(spaces
            .into_iter()
            .map(|s| SpaceCatalogEntry::new(s, false))
            .collect());
    }
    use rayon::prelude::*;
    let perms = permutations(n);
    let nn = n * n;
    Ok(spaces
        .into_par_iter()
        .filter_map(|s| {
            let own: u64 = (0..nn)
                .filter(|&b| s.leq(b / n, b % n))
                .fold(0, |acc, b| acc | 1 << (nn - 1 - b));
            (canonical_code(&s, &perms) == own).then(|| SpaceCatalogEntry::new(s, true))
        })
        .collect())
}

/// Labeled preorders on `n` points by adding one point at a time.
///
/// A new point `k` is attached by a down-set `D` (points below it) and an
/// up-set `U` (points above it) of the current preorder with every point of
/// `D` below every point of `U`; those are exactly the transitive
/// extensions.
pub fn labeled_preorders(n: usize) -> Result<Vec<FiniteSpace>> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    if n > MAX_ENUMERATION_POINTS {
        return Err(Error::InvalidParams(format!(
            "enumeration supports 1..={MAX_ENUMERATION_POINTS} points, got {n}"
        )));
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), n, &mut out);
    Ok(out)
}

fn extend(up: &mut Vec<PointSet>, n: usize, out: &mut Vec<FiniteSpace>) {
    let k = up.len();
    if k == n {
        out.push(FiniteSpace::from_up_sets(n, up.clone()));
        return;
    }
    let down: Vec<PointSet> = (0..k)
        .map(|x| (0..k).filter(|&y| up[y].contains(x)).collect())
        .collect();
    let subsets = || (0u32..1 << k).map(PointSet::from_bits);
    let down_sets: Vec<PointSet> = subsets()
        .filter(|s| s.iter().all(|x| down[x].is_subset(*s)))
        .collect();
    let up_sets: Vec<PointSet> = subsets()
        .filter(|s| s.iter().all(|x| up[x].is_subset(*s)))
        .collect();
    let me = PointSet::singleton(k);
    for &below in &down_sets {
        for &above in &up_sets {
            if !below.iter().all(|i| above.is_subset(up[i])) {
                continue;
            }
            let saved: Vec<PointSet> = up.clone();
            for i in below.iter() {
                up[i] = up[i] | me;
            }
            up.push(above | me);
            extend(up, n, out);
            *up = saved;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{cellularity, pi_weight};

    #[test]
    fn labeled_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| labeled_preorders(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 4, 29, 355, 6942]);
        assert!(labeled_preorders(0).is_err());
        assert!(labeled_preorders(7).is_err());
    }

    #[test]
    fn unlabeled_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| enumerate_topologies(n, true).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 3, 9, 33]);
    }

    #[test]
    fn ids_are_injective_and_stable() {
        let entries = enumerate_topologies(4, false).unwrap();
        let ids: std::collections::HashSet<&str> = entries.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids.len(), 355);
        assert_eq!(space_id(&sierpinski()), "02d0");
        assert_eq!(space_id(&discrete(1)), "0180");
    }

    #[test]
    fn iso_class_ignores_labels() {
        let s = fan(2);
        for p in permutations(3) {
            assert_eq!(iso_class(&s.relabel(&p).unwrap()), iso_class(&s));
        }
        assert_ne!(iso_class(&fan(2)), iso_class(&chain(3)));
    }

    #[test]
    fn named_examples() {
        let p = partition(3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(p.is_regular());
        assert_eq!(named("partition:0,1|2").unwrap(), p);
        assert_eq!(cellularity(&chain(3)), 1);
        assert_eq!(pi_weight(&chain(3)), 1);
        assert_eq!(cellularity(&fan(3)), 3);
        assert_eq!(named("sierpinski").unwrap(), sierpinski());
        assert_eq!(named("discrete:3").unwrap(), discrete(3));
        assert!(named("discrete:0").is_err());
        assert!(named("partition:0,1|1").is_err());
        assert!(named("partition:0|2").is_err());
        assert!(named("moebius:3").is_err());
    }

    #[test]
    fn random_extremes_and_determinism() {
        assert_eq!(random_space(5, 0.0, 1).unwrap(), discrete(5));
        assert_eq!(random_space(5, 1.0, 1).unwrap(), indiscrete(5));
        let a = random_space(5, 0.3, 42).unwrap();
        assert_eq!(a, random_space(5, 0.3, 42).unwrap());
        // validates as a preorder
        assert_eq!(FiniteSpace::from_preorder(&a.preorder_matrix()).unwrap(), a);
        assert!(random_space(3, 1.5, 0).is_err());
    }
}
