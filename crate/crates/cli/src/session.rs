//! A human-versus-engine game, shared by `serve` and `play`.

use serde::Serialize;
use std::sync::Arc;
use topogame_core::game::{is_legal, legal_moves, SolveOptions, SolvedGame};
use topogame_core::spacegen::space_id;
use topogame_core::{
    Error, FiniteSpace, GameKind, Mode, Move, Player, Position, Result, Transcript,
};

pub struct Session {
    space: FiniteSpace,
    kind: GameKind,
    horizon: usize,
    human: Player,
    engine: Arc<SolvedGame>,
    history: Vec<Move>,
}

/// Everything a client needs to render the game.
#[derive(Clone, Debug, Serialize)]
pub struct SessionState {
    pub space_id: String,
    pub kind: GameKind,
    pub horizon: usize,
    pub human: Player,
    pub position: Position,
    pub history: Vec<Move>,
    pub legal_moves: Vec<Move>,
    /// Winner from here under optimal play by both sides.
    pub evaluation: Player,
    pub done: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winner: Option<Player>,
}

/// The answer to a human move.
#[derive(Clone, Debug, Serialize)]
pub struct MoveOutcome {
    pub position: Position,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine_reply: Option<Move>,
    pub legal_moves: Vec<Move>,
    pub evaluation: Player,
    pub done: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winner: Option<Player>,
}

impl Session {
    /// Solves the game and, when the human sits second, makes the engine's
    /// opening move.
    pub fn new(
        space: FiniteSpace,
        kind: GameKind,
        horizon: usize,
        human: Player,
        options: SolveOptions,
    ) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidParams("horizon must be at least 1".into()));
        }
        let engine = Arc::new(SolvedGame::new(&space, kind, horizon, options)?);
        let mut session = Session {
            space,
            kind,
            horizon,
            human,
            engine,
            history: Vec::new(),
        };
        session.engine_turn()?;
        Ok(session)
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn human(&self) -> Player {
        self.human
    }

    pub fn position(&self) -> Position {
        Position::from_history(&self.history)
    }

    pub fn is_done(&self) -> bool {
        self.history.len() == 2 * self.horizon
    }

    pub fn winner(&self) -> Option<Player> {
        self.is_done().then(|| self.transcript().winner)
    }

    pub fn transcript(&self) -> Transcript {
        Transcript::from_history(&self.space, self.kind, self.horizon, &self.history)
    }

    /// The human's legal moves, empty once the game is over or while it is
    /// the engine's turn.
    pub fn legal_moves(&self) -> Result<Vec<Move>> {
        let position = self.position();
        if self.is_done() || position.mover() != self.human {
            return Ok(Vec::new());
        }
        legal_moves(&self.space, self.kind, &position, self.human, Mode::Full)
    }

    pub fn evaluation(&self) -> Result<Player> {
        self.engine.evaluate(&self.position(), self.horizon)
    }

    pub fn state(&self) -> Result<SessionState> {
        Ok(SessionState {
            space_id: space_id(&self.space),
            kind: self.kind,
            horizon: self.horizon,
            human: self.human,
            position: self.position(),
            history: self.history.clone(),
            legal_moves: self.legal_moves()?,
            evaluation: self.evaluation()?,
            done: self.is_done(),
            winner: self.winner(),
        })
    }

    /// Applies the human's move, then lets the engine answer.
    pub fn apply(&mut self, mv: Move) -> Result<MoveOutcome> {
        let position = self.position();
        if self.is_done() {
            return Err(Error::InvalidParams("the game is over".into()));
        }
        if position.mover() != self.human {
            return Err(Error::WrongMover {
                expected: position.mover(),
                actual: self.human,
            });
        }
        if !is_legal(&self.space, self.kind, &position, &mv) {
            return Err(Error::IllegalMove {
                inning: position.inning,
                mover: self.human,
                mv,
                history: self.history.clone(),
            });
        }
        self.history.push(mv);
        let engine_reply = self.engine_turn()?;
        Ok(MoveOutcome {
            position: self.position(),
            engine_reply,
            legal_moves: self.legal_moves()?,
            evaluation: self.evaluation()?,
            done: self.is_done(),
            winner: self.winner(),
        })
    }

    fn engine_turn(&mut self) -> Result<Option<Move>> {
        let position = self.position();
        if self.is_done() || position.mover() == self.human {
            return Ok(None);
        }
        let mv = self
            .engine
            .choose(&position, self.horizon, self.human.other())?;
        self.history.push(mv.clone());
        Ok(Some(mv))
    }
}
