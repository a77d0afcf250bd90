//! Exact bounded-horizon solving by backward induction.
//!
//! In every game here one's options depend only on whose turn it is, two's
//! only on one's pending move, and the winner only on two's accumulated
//! union. The value of a position is therefore a function of the number of
//! remaining innings and the accumulated union (always an open set). The
//! table is filled for every open set and every remaining count up to the
//! largest horizon requested, so one table answers all smaller horizons.

use super::rules::{one_moves, replies, Mode};
use super::strategy::{Provenance, Strategy};
use super::{GameKind, Move, Player, Position};
use crate::error::{Error, Result};
use crate::families::{OpenLattice, DEFAULT_FAMILY_CAP};
use crate::points::PointSet;
use crate::space::FiniteSpace;
use std::sync::Arc;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: Mode,
    pub cap: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: Mode::Full,
            cap: DEFAULT_FAMILY_CAP,
        }
    }
}

impl SolveOptions {
    pub fn reduced() -> Self {
        SolveOptions {
            mode: Mode::Reduced,
            ..Self::default()
        }
    }
}

/// Solved value table for one space and game, valid for every horizon up to
/// `max_horizon`.
#[derive(Debug)]
pub struct SolvedGame {
    space: FiniteSpace,
    kind: GameKind,
    options: SolveOptions,
    lattice: OpenLattice,
    one_moves: Vec<Move>,
    // two_wins[r][i]: two wins with r innings left and accumulated opens()[i]
    two_wins: Vec<Vec<bool>>,
    // first winning move for one, as an index into one_moves
    best_one: Vec<Vec<Option<u32>>>,
}

impl SolvedGame {
    pub fn new(
        space: &FiniteSpace,
        kind: GameKind,
        max_horizon: usize,
        options: SolveOptions,
    ) -> Result<Self> {
        let lattice = OpenLattice::new(space);
        let one_moves = one_moves(space, kind, options.mode, options.cap)?;
        let gains: Vec<Vec<PointSet>> = one_moves
            .iter()
            .map(|m| {
                let mut g: Vec<PointSet> =
                    replies(space, &lattice, kind, m, options.mode, options.cap)?
                        .iter()
                        .map(Move::gain)
                        .collect();
                g.sort_unstable();
                g.dedup();
                Ok(g)
            })
            .collect::<Result<_>>()?;

        let opens = lattice.opens();
        let base: Vec<bool> = opens
            .iter()
            .map(|&acc| kind.winner_for(space.is_dense(acc)) == Player::Two)
            .collect();
        let mut two_wins = vec![base];
        let mut best_one = vec![vec![None; opens.len()]];
        for r in 1..=max_horizon {
            let prev = &two_wins[r - 1];
            let mut row = Vec::with_capacity(opens.len());
            let mut best = Vec::with_capacity(opens.len());
            for &acc in opens {
                let refutation = gains.iter().position(|gs| {
                    !gs.iter().any(|&g| {
                        prev[lattice.index_of(acc | g).expect("unions of opens are open")]
                    })
                });
                row.push(refutation.is_none());
                best.push(refutation.map(|i| i as u32));
            }
            two_wins.push(row);
            best_one.push(best);
        }
        Ok(SolvedGame {
            space: space.clone(),
            kind,
            options,
            lattice,
            one_moves,
            two_wins,
            best_one,
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn mode(&self) -> Mode {
        self.options.mode
    }

    pub fn max_horizon(&self) -> usize {
        self.two_wins.len() - 1
    }

    fn check_horizon(&self, horizon: usize) -> Result<()> {
        if horizon == 0 || horizon > self.max_horizon() {
            return Err(Error::InvalidParams(format!(
                "horizon {horizon} outside the solved range 1..={}",
                self.max_horizon()
            )));
        }
        Ok(())
    }

    fn two_wins(&self, remaining: usize, acc: PointSet) -> Result<bool> {
        let i = self
            .lattice
            .index_of(acc)
            .ok_or(Error::NotOpen { set: acc })?;
        Ok(self.two_wins[remaining][i])
    }

    /// Winner of the game from the start with `horizon` innings.
    pub fn winner(&self, horizon: usize) -> Result<Player> {
        self.evaluate(&Position::start(), horizon)
    }

    /// Winner under optimal play from `position`.
    pub fn evaluate(&self, position: &Position, horizon: usize) -> Result<Player> {
        self.check_horizon(horizon)?;
        if position.inning > horizon {
            return Err(Error::InvalidParams(format!(
                "inning {} is past the horizon {horizon}",
                position.inning
            )));
        }
        let remaining = horizon - position.inning;
        let two = match &position.pending {
            None => self.two_wins(remaining, position.accumulated)?,
            Some(pending) => {
                if remaining == 0 {
                    return Err(Error::InvalidParams(
                        "pending move after the last inning".into(),
                    ));
                }
                let mut any = false;
                for reply in self.full_replies(pending)? {
                    if self.two_wins(remaining - 1, position.accumulated | reply.gain())? {
                        any = true;
                        break;
                    }
                }
                any
            }
        };
        Ok(if two { Player::Two } else { Player::One })
    }

    fn full_replies(&self, pending: &Move) -> Result<Vec<Move>> {
        replies(
            &self.space,
            &self.lattice,
            self.kind,
            pending,
            Mode::Full,
            self.options.cap,
        )
    }

    /// The table's move choice for `player`: a winning move whenever one
    /// exists, otherwise the first legal move.
    pub fn choose(&self, position: &Position, horizon: usize, player: Player) -> Result<Move> {
        self.check_horizon(horizon)?;
        let expected = position.mover();
        if player != expected {
            return Err(Error::WrongMover {
                expected,
                actual: player,
            });
        }
        if position.inning >= horizon {
            return Err(Error::InvalidParams("the game is over".into()));
        }
        let remaining = horizon - position.inning;
        match &position.pending {
            None => {
                let i = self
                    .lattice
                    .index_of(position.accumulated)
                    .ok_or(Error::NotOpen {
                        set: position.accumulated,
                    })?;
                let pick = self.best_one[remaining][i].unwrap_or(0) as usize;
                Ok(self.one_moves[pick].clone())
            }
            Some(pending) => {
                let options = self.full_replies(pending)?;
                let first = options.first().cloned().ok_or_else(|| Error::IllegalMove {
                    inning: position.inning,
                    mover: Player::One,
                    mv: pending.clone(),
                    history: Vec::new(),
                })?;
                for reply in options {
                    if self.two_wins(remaining - 1, position.accumulated | reply.gain())? {
                        return Ok(reply);
                    }
                }
                Ok(first)
            }
        }
    }

    /// Strategy for `player` reading this table.
    pub fn strategy(self: &Arc<Self>, player: Player, horizon: usize) -> Result<SolverStrategy> {
        self.check_horizon(horizon)?;
        Ok(SolverStrategy {
            game: Arc::clone(self),
            player,
            horizon,
        })
    }

    /// `(remaining innings, accumulated, winner)` for every tabulated entry
    /// up to `horizon`.
    pub fn table(&self, horizon: usize) -> Result<Vec<(usize, PointSet, Player)>> {
        self.check_horizon(horizon)?;
        let mut rows = Vec::new();
        for r in (0..=horizon).rev() {
            for (i, &acc) in self.lattice.opens().iter().enumerate() {
                let w = if self.two_wins[r][i] {
                    Player::Two
                } else {
                    Player::One
                };
                rows.push((r, acc, w));
            }
        }
        Ok(rows)
    }
}

/// Tabulated strategy backed by a [`SolvedGame`].
#[derive(Clone, Debug)]
pub struct SolverStrategy {
    game: Arc<SolvedGame>,
    player: Player,
    horizon: usize,
}

impl SolverStrategy {
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn game(&self) -> &Arc<SolvedGame> {
        &self.game
    }
}

impl Strategy for SolverStrategy {
    fn kind(&self) -> GameKind {
        self.game.kind
    }

    fn player(&self) -> Player {
        self.player
    }

    fn provenance(&self) -> Provenance {
        Provenance::Solver
    }

    fn respond(&self, history: &[Move]) -> Result<Move> {
        self.game
            .choose(&Position::from_history(history), self.horizon, self.player)
    }

    fn is_positional(&self) -> bool {
        true
    }
}

/// A solve result: the winner and a strategy for the winner.
#[derive(Clone, Debug)]
pub struct Solution {
    pub winner: Player,
    pub strategy: SolverStrategy,
}

pub fn solve(space: &FiniteSpace, kind: GameKind, horizon: usize) -> Result<Solution> {
    solve_with(space, kind, horizon, SolveOptions::default())
}

pub fn solve_with(
    space: &FiniteSpace,
    kind: GameKind,
    horizon: usize,
    options: SolveOptions,
) -> Result<Solution> {
    if horizon == 0 {
        return Err(Error::InvalidParams("horizon must be at least 1".into()));
    }
    let game = Arc::new(SolvedGame::new(space, kind, horizon, options)?);
    let winner = game.winner(horizon)?;
    let strategy = game.strategy(winner, horizon)?;
    Ok(Solution { winner, strategy })
}

/// Least horizon `h <= max_horizon` at which `player` wins.
///
/// Winning is monotone in the horizon: the accumulated union only grows, so
/// two's extra innings never hurt in the selection games and one's never
/// hurt in the open-open and point-open games.
pub fn minimal_winning_horizon(
    space: &FiniteSpace,
    kind: GameKind,
    player: Player,
    max_horizon: usize,
    options: SolveOptions,
) -> Result<Option<usize>> {
    if max_horizon == 0 {
        return Err(Error::InvalidParams(
            "max horizon must be at least 1".into(),
        ));
    }
    let game = SolvedGame::new(space, kind, max_horizon, options)?;
    for h in 1..=max_horizon {
        if game.winner(h)? == player {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacegen::{discrete, fan, indiscrete, partition, sierpinski};

    #[test]
    fn open_open_on_discrete_three() {
        let d = discrete(3);
        assert_eq!(
            solve(&d, GameKind::OpenOpen, 2).unwrap().winner,
            Player::Two
        );
        assert_eq!(
            solve(&d, GameKind::OpenOpen, 3).unwrap().winner,
            Player::One
        );
    }

    #[test]
    fn weak_lindelof_game_on_sierpinski() {
        assert_eq!(
            solve(&sierpinski(), GameKind::SelOOD, 1).unwrap().winner,
            Player::Two
        );
    }

    #[test]
    fn minimal_horizons() {
        let full = SolveOptions::default();
        for n in 1..=4 {
            assert_eq!(
                minimal_winning_horizon(&discrete(n), GameKind::SelOOD, Player::Two, 4, full)
                    .unwrap(),
                Some(n)
            );
        }
        assert_eq!(
            minimal_winning_horizon(&sierpinski(), GameKind::OpenOpen, Player::One, 4, full)
                .unwrap(),
            Some(1)
        );
        let p = partition(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(
            minimal_winning_horizon(&p, GameKind::PointOpen, Player::One, 4, full).unwrap(),
            Some(2)
        );
        assert_eq!(
            minimal_winning_horizon(&discrete(4), GameKind::SelOOD, Player::Two, 3, full).unwrap(),
            None
        );
        assert!(
            minimal_winning_horizon(&discrete(2), GameKind::SelOOD, Player::Two, 0, full).is_err()
        );
    }

    // fan(2): every cover contains the whole space, but two can answer each
    // open-open move with a single top point.
    #[test]
    fn fan_separates_open_open_from_point_open() {
        let f = fan(2);
        let full = SolveOptions::default();
        let h = |kind, player| minimal_winning_horizon(&f, kind, player, 4, full).unwrap();
        assert_eq!(h(GameKind::SelOOD, Player::Two), Some(1));
        assert_eq!(h(GameKind::PointOpen, Player::One), Some(1));
        assert_eq!(h(GameKind::OpenOpen, Player::One), Some(2));
        assert_eq!(h(GameKind::SelODOD, Player::Two), Some(2));
    }

    #[test]
    fn evaluate_pending_positions() {
        let s = sierpinski();
        let game = SolvedGame::new(&s, GameKind::OpenOpen, 1, SolveOptions::default()).unwrap();
        let one: PointSet = [1].into_iter().collect();
        let p = Position {
            inning: 0,
            accumulated: PointSet::EMPTY,
            pending: Some(Move::Pick(one)),
        };
        assert_eq!(game.evaluate(&p, 1).unwrap(), Player::One);
        assert_eq!(game.choose(&p, 1, Player::Two).unwrap(), Move::Pick(one));
        assert!(game.evaluate(&Position::start(), 2).is_err());
    }

    #[test]
    fn finite_selection_with_large_cap_is_trivial() {
        for s in [discrete(3), fan(2), indiscrete(2)] {
            let w = solve(&s, GameKind::SelFinOOD { cap: 8 }, 1).unwrap().winner;
            assert_eq!(w, Player::Two);
        }
        assert_eq!(
            solve(&discrete(3), GameKind::SelFinOOD { cap: 1 }, 1)
                .unwrap()
                .winner,
            Player::One
        );
    }

    #[test]
    fn zero_horizon_rejected() {
        assert!(solve(&sierpinski(), GameKind::OpenOpen, 0).is_err());
    }
}
