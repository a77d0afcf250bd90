//! Legal moves. One's options never depend on the position; two's depend
//! only on one's pending move.

use super::{GameKind, Move, Player, Position};
use crate::error::{Error, Result};
use crate::families::{FamilyTable, OpenLattice, DEFAULT_FAMILY_CAP};
use crate::invariants::masks_of_size;
use crate::points::{OpenFamily, PointSet};
use crate::space::FiniteSpace;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Move-set mode. `Reduced` keeps a dominance-closed subset that is enough
/// to decide the winner and is only ever used for solving:
///
/// * in the cover games one plays only the cover by minimal neighbourhoods
///   (it refines every cover, so any selection from it is contained in a
///   selection from the original);
/// * in the open-open and point-open games two answers only with minimal
///   neighbourhoods inside one's set (smaller answers never help one);
/// * in the finite-selection game two takes as many members as allowed.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Full,
    Reduced,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Reduced => "reduced",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Mode::Full),
            "reduced" => Ok(Mode::Reduced),
            other => Err(Error::InvalidParams(format!("unknown mode {other:?}"))),
        }
    }
}

pub fn legal_moves(
    space: &FiniteSpace,
    kind: GameKind,
    position: &Position,
    mover: Player,
    mode: Mode,
) -> Result<Vec<Move>> {
    legal_moves_with_cap(space, kind, position, mover, mode, DEFAULT_FAMILY_CAP)
}

pub fn legal_moves_with_cap(
    space: &FiniteSpace,
    kind: GameKind,
    position: &Position,
    mover: Player,
    mode: Mode,
    cap: u64,
) -> Result<Vec<Move>> {
    let expected = position.mover();
    if mover != expected {
        return Err(Error::WrongMover {
            expected,
            actual: mover,
        });
    }
    match &position.pending {
        None => one_moves(space, kind, mode, cap),
        Some(pending) => {
            let at_one = Position {
                pending: None,
                ..position.clone()
            };
            if !is_legal(space, kind, &at_one, pending) {
                return Err(Error::IllegalMove {
                    inning: position.inning,
                    mover: Player::One,
                    mv: pending.clone(),
                    history: Vec::new(),
                });
            }
            replies(space, &OpenLattice::new(space), kind, pending, mode, cap)
        }
    }
}

pub(crate) fn one_moves(
    space: &FiniteSpace,
    kind: GameKind,
    mode: Mode,
    cap: u64,
) -> Result<Vec<Move>> {
    let families = |select: fn(&FamilyTable, &FiniteSpace) -> Vec<u64>| -> Result<Vec<Move>> {
        let table = FamilyTable::new(space, cap)?;
        Ok(select(&table, space)
            .into_iter()
            .map(|m| Move::Family(table.family(m)))
            .collect())
    };
    match (kind, mode) {
        (GameKind::SelOOD | GameKind::SelFinOOD { .. }, Mode::Reduced) => Ok(vec![Move::Family(
            space.distinct_minimal_nbhds().into_iter().collect(),
        )]),
        (GameKind::SelOOD | GameKind::SelFinOOD { .. }, Mode::Full) => {
            families(|t, s| t.cover_masks(s).collect())
        }
        (GameKind::SelCOD, _) => families(|t, s| t.maximal_cellular_masks(s).collect()),
        (GameKind::SelODOD, _) => families(|t, s| t.dense_masks(s).collect()),
        (GameKind::OpenOpen, _) => Ok(OpenLattice::new(space)
            .nonempty()
            .iter()
            .map(|&u| Move::Pick(u))
            .collect()),
        (GameKind::PointOpen, _) => Ok((0..space.n()).map(Move::Point).collect()),
    }
}

/// Two's answers to a legal pending move, in tie-break order.
pub(crate) fn replies(
    space: &FiniteSpace,
    lattice: &OpenLattice,
    kind: GameKind,
    pending: &Move,
    mode: Mode,
    cap: u64,
) -> Result<Vec<Move>> {
    Ok(match (kind, pending) {
        (GameKind::SelOOD | GameKind::SelCOD | GameKind::SelODOD, Move::Family(f)) => {
            f.iter().map(|&a| Move::Pick(a)).collect()
        }
        (GameKind::SelFinOOD { cap: k }, Move::Family(f)) => {
            let width = f.len();
            if (1u128 << width) > cap as u128 {
                return Err(Error::ResourceCap {
                    needed: 1u128 << width,
                    cap,
                });
            }
            let largest = k.min(width);
            let smallest = if mode == Mode::Reduced { largest } else { 1 };
            (smallest..=largest)
                .flat_map(|size| masks_of_size(width, size))
                .map(|mask| {
                    Move::FinSel(
                        crate::families::mask_bits(mask)
                            .map(|i| f.members()[i])
                            .collect(),
                    )
                })
                .collect()
        }
        (GameKind::OpenOpen, Move::Pick(u)) => match mode {
            Mode::Full => lattice
                .nonempty()
                .iter()
                .filter(|v| v.is_subset(*u))
                .map(|&v| Move::Pick(v))
                .collect(),
            Mode::Reduced => {
                let nbhds: OpenFamily = u.iter().map(|y| space.minimal_nbhds()[y]).collect();
                nbhds.iter().map(|&v| Move::Pick(v)).collect()
            }
        },
        (GameKind::PointOpen, Move::Point(x)) => match mode {
            Mode::Full => lattice
                .opens()
                .iter()
                .filter(|v| v.contains(*x))
                .map(|&v| Move::Pick(v))
                .collect(),
            Mode::Reduced => vec![Move::Pick(space.minimal_nbhds()[*x])],
        },
        _ => Vec::new(),
    })
}

/// Whether `mv` is a legal move for whoever is to move at `position`.
pub fn is_legal(space: &FiniteSpace, kind: GameKind, position: &Position, mv: &Move) -> bool {
    let open_nonempty =
        |s: PointSet| !s.is_empty() && space.check_set(s).is_ok() && space.is_open(s);
    match &position.pending {
        None => match (kind, mv) {
            (GameKind::SelOOD | GameKind::SelFinOOD { .. }, Move::Family(f)) => {
                space.check_family(f).is_ok() && f.union() == space.points()
            }
            (GameKind::SelODOD, Move::Family(f)) => {
                space.check_family(f).is_ok() && space.is_dense(f.union())
            }
            (GameKind::SelCOD, Move::Family(f)) => {
                space.check_family(f).is_ok() && space.is_dense(f.union()) && f.is_cellular()
            }
            (GameKind::OpenOpen, Move::Pick(u)) => open_nonempty(*u),
            (GameKind::PointOpen, Move::Point(x)) => *x < space.n(),
            _ => false,
        },
        Some(pending) => match (kind, pending, mv) {
            (
                GameKind::SelOOD | GameKind::SelCOD | GameKind::SelODOD,
                Move::Family(f),
                Move::Pick(a),
            ) => f.contains(*a),
            (GameKind::SelFinOOD { cap }, Move::Family(f), Move::FinSel(g)) => {
                !g.is_empty() && g.len() <= cap && g.iter().all(|m| f.contains(*m))
            }
            (GameKind::OpenOpen, Move::Pick(u), Move::Pick(v)) => {
                open_nonempty(*v) && v.is_subset(*u)
            }
            (GameKind::PointOpen, Move::Point(x), Move::Pick(v)) => {
                open_nonempty(*v) && v.contains(*x)
            }
            _ => false,
        },
    }
}
