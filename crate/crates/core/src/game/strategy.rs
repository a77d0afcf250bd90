use super::rules::is_legal;
use super::{GameKind, Move, Player, Position, Transcript};
use crate::error::{Error, Result};
use crate::space::FiniteSpace;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Where a strategy came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Solver,
    Greedy,
    /// Built by the named transduction.
    Transducer(String),
    /// Supplied by the caller.
    Scripted(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Solver => f.write_str("solver"),
            Provenance::Greedy => f.write_str("greedy"),
            Provenance::Transducer(name) => write!(f, "transducer:{name}"),
            Provenance::Scripted(name) => write!(f, "scripted:{name}"),
        }
    }
}

/// A strategy for one player of one game: a function from the history so
/// far (one's moves at even indices) to the next move.
pub trait Strategy: Send + Sync {
    fn kind(&self) -> GameKind;

    fn player(&self) -> Player;

    fn provenance(&self) -> Provenance;

    fn respond(&self, history: &[Move]) -> Result<Move>;

    /// True when the reply depends only on the inning, two's accumulated
    /// union and the pending move. The referee uses this to share work
    /// between histories that reach the same position.
    fn is_positional(&self) -> bool {
        false
    }
}

impl<S: Strategy + ?Sized> Strategy for Arc<S> {
    fn kind(&self) -> GameKind {
        (**self).kind()
    }
    fn player(&self) -> Player {
        (**self).player()
    }
    fn provenance(&self) -> Provenance {
        (**self).provenance()
    }
    fn respond(&self, history: &[Move]) -> Result<Move> {
        (**self).respond(history)
    }
    fn is_positional(&self) -> bool {
        (**self).is_positional()
    }
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn kind(&self) -> GameKind {
        (**self).kind()
    }
    fn player(&self) -> Player {
        (**self).player()
    }
    fn provenance(&self) -> Provenance {
        (**self).provenance()
    }
    fn respond(&self, history: &[Move]) -> Result<Move> {
        (**self).respond(history)
    }
    fn is_positional(&self) -> bool {
        (**self).is_positional()
    }
}

type Responder = dyn Fn(&[Move]) -> Result<Move> + Send + Sync;

/// A strategy given by a closure.
#[derive(Clone)]
pub struct ScriptedStrategy {
    kind: GameKind,
    player: Player,
    name: String,
    positional: bool,
    respond: Arc<Responder>,
}

impl ScriptedStrategy {
    pub fn new<F>(kind: GameKind, player: Player, name: impl Into<String>, respond: F) -> Self
    where
        F: Fn(&[Move]) -> Result<Move> + Send + Sync + 'static,
    {
        ScriptedStrategy {
            kind,
            player,
            name: name.into(),
            positional: false,
            respond: Arc::new(respond),
        }
    }

    /// Declares the closure positional, see [`Strategy::is_positional`].
    pub fn positional(mut self) -> Self {
        self.positional = true;
        self
    }
}

impl fmt::Debug for ScriptedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScriptedStrategy")
            .field("kind", &self.kind)
            .field("player", &self.player)
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl Strategy for ScriptedStrategy {
    fn kind(&self) -> GameKind {
        self.kind
    }
    fn player(&self) -> Player {
        self.player
    }
    fn provenance(&self) -> Provenance {
        Provenance::Scripted(self.name.clone())
    }
    fn respond(&self, history: &[Move]) -> Result<Move> {
        (self.respond)(history)
    }
    fn is_positional(&self) -> bool {
        self.positional
    }
}

fn check_seat(kind: GameKind, player: Player, s: &dyn Strategy) -> Result<()> {
    if s.kind() != kind || s.player() != player {
        return Err(Error::StrategyMismatch {
            kind,
            player,
            actual_kind: s.kind(),
            actual_player: s.player(),
        });
    }
    Ok(())
}

/// Plays two strategies against each other for `horizon` innings,
/// rejecting any illegal move.
pub fn play(
    space: &FiniteSpace,
    kind: GameKind,
    horizon: usize,
    one: &dyn Strategy,
    two: &dyn Strategy,
) -> Result<Transcript> {
    check_seat(kind, Player::One, one)?;
    check_seat(kind, Player::Two, two)?;
    let mut history = Vec::with_capacity(2 * horizon);
    for inning in 0..horizon {
        for (mover, s) in [(Player::One, one), (Player::Two, two)] {
            let mv = s.respond(&history)?;
            if !is_legal(space, kind, &Position::from_history(&history), &mv) {
                return Err(Error::IllegalMove {
                    inning,
                    mover,
                    mv,
                    history,
                });
            }
            history.push(mv);
        }
    }
    Ok(Transcript::from_history(space, kind, horizon, &history))
}
