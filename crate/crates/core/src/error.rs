use crate::game::{GameKind, Move, Player};
use crate::points::PointSet;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a space needs at least one point")]
    EmptySpace,
    #[error("{0} points requested; at most {max} are supported", max = crate::MAX_POINTS)]
    TooManyPoints(usize),
    #[error("relation matrix is not square (row {row} has {len} entries, expected {n})")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("relation is not reflexive at point {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {i} <= {j} and {j} <= {k} but not {i} <= {k}")]
    NotTransitive { i: usize, j: usize, k: usize },
    #[error("point {point} out of range for a {n}-point space")]
    PointOutOfRange { point: usize, n: usize },
    #[error("set {set} is not contained in a {n}-point space")]
    SetOutOfRange { set: PointSet, n: usize },
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("{set} is not open")]
    NotOpen { set: PointSet },
    #[error("family union {union} is not dense")]
    NotDense { union: PointSet },
    #[error("enumeration needs {needed} candidate families, above the cap of {cap}")]
    ResourceCap { needed: u128, cap: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported version {0}")]
    UnsupportedVersion(u32),
    #[error("it is player {expected}'s turn, not player {actual}'s")]
    WrongMover { expected: Player, actual: Player },
    #[error("illegal move at inning {inning} by player {mover}: {mv}")]
    IllegalMove {
        inning: usize,
        mover: Player,
        mv: Move,
        history: Vec<Move>,
    },
    #[error("strategy plays {actual_kind} as player {actual_player}, expected {kind} as player {player}")]
    StrategyMismatch {
        kind: GameKind,
        player: Player,
        actual_kind: GameKind,
        actual_player: Player,
    },
    #[error("player {claimed} does not win {kind} at horizon {horizon}; player {actual} does")]
    WinnerMismatch {
        kind: GameKind,
        horizon: usize,
        claimed: Player,
        actual: Player,
    },
    #[error("claim extraction failed: {0}")]
    ClaimFailure(String),
    #[error(
        "no opponent move sequence realizes the observed reply at inning {inning}: {observed}"
    )]
    ReconstructionFailure { inning: usize, observed: Move },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
