//! The selection, open-open and point-open games as data: rules, an exact
//! bounded-horizon solver, strategies and an exhaustive strategy referee.

mod greedy;
mod rules;
mod solver;
mod strategy;
mod verify;

pub use greedy::GreedyCellularity;
pub use rules::{is_legal, legal_moves, legal_moves_with_cap, Mode};
pub use solver::{
    minimal_winning_horizon, solve, solve_with, Solution, SolveOptions, SolvedGame, SolverStrategy,
};
pub use strategy::{play, Provenance, ScriptedStrategy, Strategy};
pub use verify::{verify_winning, verify_winning_with_cap, Verdict};

use crate::error::Error;
use crate::points::{OpenFamily, PointSet};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::One => "one",
            Player::Two => "two",
        })
    }
}

impl FromStr for Player {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "one" | "1" | "I" => Ok(Player::One),
            "two" | "2" | "II" => Ok(Player::Two),
            other => Err(Error::InvalidParams(format!("unknown player {other:?}"))),
        }
    }
}

/// Which game is played.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum GameKind {
    /// One plays open covers, two selects a member; two wants a dense union.
    SelOOD,
    /// One plays maximal cellular families (the playful-ccc game).
    SelCOD,
    /// One plays families with dense union.
    SelODOD,
    /// One plays open covers, two selects up to `cap` members.
    SelFinOOD { cap: usize },
    /// One plays a nonempty open set, two a nonempty open subset of it; one
    /// wants two's sets to have dense union.
    OpenOpen,
    /// One plays a point, two an open set containing it; one wants a dense
    /// union.
    PointOpen,
}

impl GameKind {
    pub const ALL_UNCAPPED: [GameKind; 5] = [
        GameKind::SelOOD,
        GameKind::SelCOD,
        GameKind::SelODOD,
        GameKind::OpenOpen,
        GameKind::PointOpen,
    ];

    pub fn is_selection(self) -> bool {
        !matches!(self, GameKind::OpenOpen | GameKind::PointOpen)
    }

    /// The player who wins when two's accumulated union ends dense.
    pub fn dense_winner(self) -> Player {
        if self.is_selection() {
            Player::Two
        } else {
            Player::One
        }
    }

    pub fn winner_for(self, dense: bool) -> Player {
        if dense {
            self.dense_winner()
        } else {
            self.dense_winner().other()
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameKind::SelOOD => f.write_str("sel-o-od"),
            GameKind::SelCOD => f.write_str("sel-c-od"),
            GameKind::SelODOD => f.write_str("sel-od-od"),
            GameKind::SelFinOOD { cap } => write!(f, "sel-fin:{cap}"),
            GameKind::OpenOpen => f.write_str("oo"),
            GameKind::PointOpen => f.write_str("po"),
        }
    }
}

impl FromStr for GameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sel-o-od" => Ok(GameKind::SelOOD),
            "sel-c-od" => Ok(GameKind::SelCOD),
            "sel-od-od" => Ok(GameKind::SelODOD),
            "oo" => Ok(GameKind::OpenOpen),
            "po" => Ok(GameKind::PointOpen),
            "sel-fin" => Err(Error::InvalidParams(
                "sel-fin needs an explicit cap (sel-fin:k): with no cap two takes the whole \
                 finite cover and the game is trivial"
                    .into(),
            )),
            other => match other.strip_prefix("sel-fin:") {
                Some(k) => match k.parse::<usize>() {
                    Ok(cap) if cap >= 1 => Ok(GameKind::SelFinOOD { cap }),
                    _ => Err(Error::InvalidParams(format!(
                        "sel-fin cap must be >= 1, got {k:?}"
                    ))),
                },
                None => Err(Error::InvalidParams(format!("unknown game kind {other:?}"))),
            },
        }
    }
}

impl Serialize for GameKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GameKind {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A single move. Which variants are legal depends on the game and mover.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    /// One's family in the selection games.
    Family(OpenFamily),
    /// Two's selection, or either player's open set in the open-open game.
    Pick(PointSet),
    /// One's point in the point-open game.
    Point(usize),
    /// Two's finite subfamily in the finite-selection game.
    FinSel(OpenFamily),
}

impl Move {
    /// What a move by two adds to the accumulated union.
    pub fn gain(&self) -> PointSet {
        match self {
            Move::Pick(s) => *s,
            Move::FinSel(f) => f.union(),
            Move::Family(_) | Move::Point(_) => PointSet::EMPTY,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Family(fam) => write!(f, "family {fam}"),
            Move::Pick(s) => write!(f, "pick {s}"),
            Move::Point(x) => write!(f, "point {x}"),
            Move::FinSel(fam) => write!(f, "finite selection {fam}"),
        }
    }
}

/// A position: completed innings, two's accumulated union, and one's move
/// when it is waiting for a reply.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    pub inning: usize,
    pub accumulated: PointSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pending: Option<Move>,
}

impl Position {
    pub fn start() -> Self {
        Position {
            inning: 0,
            accumulated: PointSet::EMPTY,
            pending: None,
        }
    }

    /// Replays a history of alternating moves, one's first.
    pub fn from_history(history: &[Move]) -> Self {
        let accumulated = history
            .iter()
            .skip(1)
            .step_by(2)
            .fold(PointSet::EMPTY, |acc, m| acc | m.gain());
        Position {
            inning: history.len() / 2,
            accumulated,
            pending: (history.len() % 2 == 1).then(|| history[history.len() - 1].clone()),
        }
    }

    pub fn mover(&self) -> Player {
        if self.pending.is_some() {
            Player::Two
        } else {
            Player::One
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub mover: Player,
    #[serde(rename = "move")]
    pub mv: Move,
}

/// One complete play.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub kind: GameKind,
    pub horizon: usize,
    pub innings: Vec<TranscriptEntry>,
    pub accumulated: PointSet,
    pub winner: Player,
}

impl Transcript {
    /// Scores a complete or partial history of alternating moves.
    pub fn from_history(
        space: &crate::FiniteSpace,
        kind: GameKind,
        horizon: usize,
        history: &[Move],
    ) -> Self {
        let accumulated = Position::from_history(history).accumulated;
        Transcript {
            kind,
            horizon,
            innings: history
                .iter()
                .enumerate()
                .map(|(i, mv)| TranscriptEntry {
                    mover: if i % 2 == 0 { Player::One } else { Player::Two },
                    mv: mv.clone(),
                })
                .collect(),
            accumulated,
            winner: kind.winner_for(space.is_dense(accumulated)),
        }
    }

    pub fn moves(&self) -> Vec<Move> {
        self.innings.iter().map(|e| e.mv.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_roundtrip() {
        for k in GameKind::ALL_UNCAPPED
            .into_iter()
            .chain([GameKind::SelFinOOD { cap: 3 }])
        {
            assert_eq!(k.to_string().parse::<GameKind>().unwrap(), k);
        }
        let err = "sel-fin".parse::<GameKind>().unwrap_err();
        assert!(err.to_string().contains("explicit cap"));
        assert!("sel-fin:0".parse::<GameKind>().is_err());
        assert!("go".parse::<GameKind>().is_err());
    }

    #[test]
    fn move_json() {
        let m = Move::Pick([0, 1].into_iter().collect());
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"pick":[0,1]}"#);
        assert_eq!(
            serde_json::to_string(&Move::Point(2)).unwrap(),
            r#"{"point":2}"#
        );
        let f: Move = serde_json::from_str(r#"{"family":[[0,1],[1]]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"family":[[1],[0,1]]}"#
        );
    }

    #[test]
    fn position_replay() {
        let one: PointSet = [1].into_iter().collect();
        let h = vec![Move::Point(0), Move::Pick(one), Move::Point(1)];
        let p = Position::from_history(&h);
        assert_eq!(p.inning, 1);
        assert_eq!(p.accumulated, one);
        assert_eq!(p.pending, Some(Move::Point(1)));
        assert_eq!(p.mover(), Player::Two);
    }
}
