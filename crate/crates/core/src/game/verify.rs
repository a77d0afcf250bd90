//! The referee: checks a strategy against every adversary line of play.

use super::rules::{is_legal, one_moves, replies, Mode};
use super::strategy::Strategy;
use super::{GameKind, Move, Player, Position, Transcript};
use crate::error::{Error, Result};
use crate::families::{OpenLattice, DEFAULT_FAMILY_CAP};
use crate::points::PointSet;
use crate::space::FiniteSpace;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Winning,
    /// A complete play the strategy loses.
    Counterexample {
        transcript: Transcript,
    },
}

impl Verdict {
    pub fn is_winning(&self) -> bool {
        matches!(self, Verdict::Winning)
    }
}

pub fn verify_winning(
    space: &FiniteSpace,
    kind: GameKind,
    horizon: usize,
    strategy: &dyn Strategy,
) -> Result<Verdict> {
    verify_winning_with_cap(space, kind, horizon, strategy, DEFAULT_FAMILY_CAP)
}

/// Plays `strategy` against every sequence of FULL legal adversary moves for
/// `horizon` innings. The strategy's own moves are checked for legality.
pub fn verify_winning_with_cap(
    space: &FiniteSpace,
    kind: GameKind,
    horizon: usize,
    strategy: &dyn Strategy,
    cap: u64,
) -> Result<Verdict> {
    if strategy.kind() != kind {
        return Err(Error::StrategyMismatch {
            kind,
            player: strategy.player(),
            actual_kind: strategy.kind(),
            actual_player: strategy.player(),
        });
    }
    if horizon == 0 {
        return Err(Error::InvalidParams("horizon must be at least 1".into()));
    }
    let player = strategy.player();
    let referee = Referee {
        space,
        kind,
        horizon,
        strategy,
        player,
        lattice: OpenLattice::new(space),
        one_moves: if player == Player::Two {
            one_moves(space, kind, Mode::Full, cap)?
        } else {
            Vec::new()
        },
        cap,
    };
    let mut history = Vec::with_capacity(2 * horizon);
    let mut won = HashSet::new();
    Ok(
        match referee.search(&mut history, PointSet::EMPTY, &mut won)? {
            true => Verdict::Winning,
            false => Verdict::Counterexample {
                transcript: Transcript::from_history(space, kind, horizon, &history),
            },
        },
    )
}

struct Referee<'a> {
    space: &'a FiniteSpace,
    kind: GameKind,
    horizon: usize,
    strategy: &'a dyn Strategy,
    player: Player,
    lattice: OpenLattice,
    one_moves: Vec<Move>,
    cap: u64,
}

impl Referee<'_> {
    /// Searches from the start of an inning. Returns `false` with the losing
    /// play left in `history`.
    fn search(
        &self,
        history: &mut Vec<Move>,
        accumulated: PointSet,
        won: &mut HashSet<(usize, PointSet)>,
    ) -> Result<bool> {
        let inning = history.len() / 2;
        if inning == self.horizon {
            return Ok(self.kind.winner_for(self.space.is_dense(accumulated)) == self.player);
        }
        let positional = self.strategy.is_positional();
        if positional && won.contains(&(inning, accumulated)) {
            return Ok(true);
        }
        let ok = match self.player {
            Player::One => {
                let mv = self.own_move(history, inning)?;
                history.push(mv);
                let answers = replies(
                    self.space,
                    &self.lattice,
                    self.kind,
                    history.last().expect("just pushed"),
                    Mode::Full,
                    self.cap,
                )?;
                let mut ok = true;
                for answer in answers {
                    let next = accumulated | answer.gain();
                    history.push(answer);
                    if !self.search(history, next, won)? {
                        ok = false;
                        break;
                    }
                    history.pop();
                }
                if ok {
                    history.pop();
                }
                ok
            }
            Player::Two => {
                let mut ok = true;
                for mv in &self.one_moves {
                    history.push(mv.clone());
                    let answer = self.own_move(history, inning)?;
                    let next = accumulated | answer.gain();
                    history.push(answer);
                    if !self.search(history, next, won)? {
                        ok = false;
                        break;
                    }
                    history.pop();
                    history.pop();
                }
                ok
            }
        };
        if ok && positional {
            won.insert((inning, accumulated));
        }
        Ok(ok)
    }

    fn own_move(&self, history: &[Move], inning: usize) -> Result<Move> {
        let mv = self.strategy.respond(history)?;
        if !is_legal(self.space, self.kind, &Position::from_history(history), &mv) {
            return Err(Error::IllegalMove {
                inning,
                mover: self.player,
                mv,
                history: history.to_vec(),
            });
        }
        Ok(mv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{solve, ScriptedStrategy};
    use crate::spacegen::{discrete, indiscrete, sierpinski};

    fn first_legal_open(space: FiniteSpace) -> ScriptedStrategy {
        let lattice = OpenLattice::new(&space);
        ScriptedStrategy::new(GameKind::OpenOpen, Player::Two, "first-open", move |h| {
            let Some(Move::Pick(u)) = h.last().cloned() else {
                return Err(Error::InvalidParams("expected one's open set".into()));
            };
            let v = lattice.nonempty().iter().find(|v| v.is_subset(u)).copied();
            Ok(Move::Pick(v.expect("u itself is a candidate")))
        })
    }

    #[test]
    fn first_open_loses_on_discrete_two() {
        let d = discrete(2);
        let v = verify_winning(&d, GameKind::OpenOpen, 2, &first_legal_open(d.clone())).unwrap();
        let Verdict::Counterexample { transcript } = v else {
            panic!("expected a counterexample");
        };
        assert_eq!(transcript.winner, Player::One);
        assert_eq!(transcript.accumulated, d.points());
    }

    #[test]
    fn solver_strategies_pass() {
        for s in [discrete(2), sierpinski(), indiscrete(3)] {
            for kind in GameKind::ALL_UNCAPPED {
                for h in 1..=3 {
                    let sol = solve(&s, kind, h).unwrap();
                    assert!(verify_winning(&s, kind, h, &sol.strategy)
                        .unwrap()
                        .is_winning());
                }
            }
        }
    }

    #[test]
    fn illegal_strategy_is_reported() {
        let s = sierpinski();
        let bad = ScriptedStrategy::new(GameKind::PointOpen, Player::One, "bad", |_| {
            Ok(Move::Point(5))
        });
        let err = verify_winning(&s, GameKind::PointOpen, 1, &bad).unwrap_err();
        assert!(matches!(err, Error::IllegalMove { inning: 0, .. }));
    }
}
