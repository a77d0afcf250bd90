//! Strategy transductions between the games.
//!
//! Each construction takes a strategy for one game and builds a strategy for
//! another game, replaying the source strategy on a virtual play of the
//! source game that it keeps in step with the real one. They come in pairs:
//!
//! * two in the weak Lindelöf selection game gives one in the point-open game;
//! * one in the open-open game and two in the dense-family selection game
//!   give each other, and so do two in the open-open game and one in the
//!   dense-family selection game;
//! * the cellular and dense-family selection games are linked by refining a
//!   dense family to a maximal cellular one (and by two identity adapters).
//!
//! Every transducer first solves the source game and refuses when the source
//! player does not win it, so an emitted strategy always comes with a
//! guarantee that the referee can check.

use crate::error::{Error, Result};
use crate::families::{
    enumerate_covers, enumerate_dense_families, maximal_disjoint_refinement, OpenLattice,
};
use crate::game::{solve, GameKind, Move, Player, Position, Provenance, Strategy};
use crate::points::{OpenFamily, PointSet};
use crate::space::FiniteSpace;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Two in sel-o-od to one in po.
    WlToPointOpen,
    /// One in oo to two in sel-od-od.
    OoOneToSelTwo,
    /// Two in sel-od-od to one in oo.
    SelTwoToOoOne,
    /// Two in oo to one in sel-od-od.
    OoTwoToSelOne,
    /// One in sel-od-od to two in oo.
    SelOneToOoTwo,
    /// Two in sel-c-od to two in sel-od-od, by refining one's families.
    CodToOdodTwo,
    /// One in sel-od-od to one in sel-c-od, by refining the source's families.
    OdodToCodOne,
    /// Two in sel-od-od played unchanged in sel-c-od.
    OdodTwoAsCodTwo,
    /// One in sel-c-od played unchanged in sel-od-od.
    CodOneAsOdodOne,
}

impl Construction {
    /// The seven non-trivial transductions.
    pub const SEVEN: [Construction; 7] = [
        Construction::WlToPointOpen,
        Construction::OoOneToSelTwo,
        Construction::SelTwoToOoOne,
        Construction::OoTwoToSelOne,
        Construction::SelOneToOoTwo,
        Construction::CodToOdodTwo,
        Construction::OdodToCodOne,
    ];

    pub const ALL: [Construction; 9] = [
        Construction::WlToPointOpen,
        Construction::OoOneToSelTwo,
        Construction::SelTwoToOoOne,
        Construction::OoTwoToSelOne,
        Construction::SelOneToOoTwo,
        Construction::CodToOdodTwo,
        Construction::OdodToCodOne,
        Construction::OdodTwoAsCodTwo,
        Construction::CodOneAsOdodOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::WlToPointOpen => "wl_to_pointopen",
            Construction::OoOneToSelTwo => "oo_one_to_sel_two",
            Construction::SelTwoToOoOne => "sel_two_to_oo_one",
            Construction::OoTwoToSelOne => "oo_two_to_sel_one",
            Construction::SelOneToOoTwo => "sel_one_to_oo_two",
            Construction::CodToOdodTwo => "cod_to_odod_two",
            Construction::OdodToCodOne => "odod_to_cod_one",
            Construction::OdodTwoAsCodTwo => "odod_two_as_cod_two",
            Construction::CodOneAsOdodOne => "cod_one_as_odod_one",
        }
    }

    /// Game and seat of the strategy the construction consumes.
    pub fn source(self) -> (GameKind, Player) {
        use GameKind::*;
        match self {
            Construction::WlToPointOpen => (SelOOD, Player::Two),
            Construction::OoOneToSelTwo => (OpenOpen, Player::One),
            Construction::SelTwoToOoOne => (SelODOD, Player::Two),
            Construction::OoTwoToSelOne => (OpenOpen, Player::Two),
            Construction::SelOneToOoTwo => (SelODOD, Player::One),
            Construction::CodToOdodTwo => (SelCOD, Player::Two),
            Construction::OdodToCodOne => (SelODOD, Player::One),
            Construction::OdodTwoAsCodTwo => (SelODOD, Player::Two),
            Construction::CodOneAsOdodOne => (SelCOD, Player::One),
        }
    }

    /// Game and seat of the strategy the construction produces.
    pub fn target(self) -> (GameKind, Player) {
        use GameKind::*;
        match self {
            Construction::WlToPointOpen => (PointOpen, Player::One),
            Construction::OoOneToSelTwo => (SelODOD, Player::Two),
            Construction::SelTwoToOoOne => (OpenOpen, Player::One),
            Construction::OoTwoToSelOne => (SelODOD, Player::One),
            Construction::SelOneToOoTwo => (OpenOpen, Player::Two),
            Construction::CodToOdodTwo => (SelODOD, Player::Two),
            Construction::OdodToCodOne => (SelCOD, Player::One),
            Construction::OdodTwoAsCodTwo => (SelCOD, Player::Two),
            Construction::CodOneAsOdodOne => (SelODOD, Player::One),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown construction {s:?}")))
    }
}

/// What a transduced strategy tracked while answering one history.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Auxiliary {
    /// The virtual play of the source game, including the source strategy's
    /// moves. Reconstructed covers and families appear here as one's moves.
    pub source_history: Vec<Move>,
    /// Per inning, the open set two's real move was derived from: `U ∩ V` in
    /// the open-open constructions, the refined member's witness in the
    /// refinement constructions. Empty for the other constructions.
    pub witnesses: Vec<PointSet>,
    pub response: Move,
}

struct Inner {
    construction: Construction,
    horizon: usize,
    space: FiniteSpace,
    source: Arc<dyn Strategy>,
    lattice: OpenLattice,
    // covers for the point construction, dense families for the open one
    families: Vec<OpenFamily>,
}

/// A strategy produced by a transducer.
#[derive(Clone)]
pub struct TransducedStrategy {
    inner: Arc<Inner>,
}

impl fmt::Debug for TransducedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransducedStrategy")
            .field("construction", &self.inner.construction)
            .field("horizon", &self.inner.horizon)
            .field("source", &self.inner.source.provenance())
            .finish_non_exhaustive()
    }
}

/// Builds the strategy `construction` produces from `source`, after checking
/// with the solver that the source player wins the source game at `horizon`.
pub fn transduce(
    space: &FiniteSpace,
    construction: Construction,
    source: Arc<dyn Strategy>,
    horizon: usize,
) -> Result<TransducedStrategy> {
    let (kind, player) = construction.source();
    if source.kind() != kind {
        return Err(Error::StrategyMismatch {
            kind,
            player,
            actual_kind: source.kind(),
            actual_player: source.player(),
        });
    }
    let actual = solve(space, kind, horizon)?.winner;
    if actual != player {
        return Err(Error::WinnerMismatch {
            kind,
            horizon,
            claimed: player,
            actual,
        });
    }
    if source.player() != player {
        return Err(Error::StrategyMismatch {
            kind,
            player,
            actual_kind: source.kind(),
            actual_player: source.player(),
        });
    }
    let families = match construction {
        Construction::WlToPointOpen => enumerate_covers(space)?,
        Construction::SelTwoToOoOne => enumerate_dense_families(space)?,
        _ => Vec::new(),
    };
    Ok(TransducedStrategy {
        inner: Arc::new(Inner {
            construction,
            horizon,
            space: space.clone(),
            source,
            lattice: OpenLattice::new(space),
            families,
        }),
    })
}

pub fn wl_to_pointopen(
    space: &FiniteSpace,
    sigma: Arc<dyn Strategy>,
    horizon: usize,
) -> Result<TransducedStrategy> {
    transduce(space, Construction::WlToPointOpen, sigma, horizon)
}

pub fn oo_one_to_sel_two(
    space: &FiniteSpace,
    tau: Arc<dyn Strategy>,
    horizon: usize,
) -> Result<TransducedStrategy> {
    transduce(space, Construction::OoOneToSelTwo, tau, horizon)
}

pub fn sel_two_to_oo_one(
    space: &FiniteSpace,
    sigma: Arc<dyn Strategy>,
    horizon: usize,
) -> Result<TransducedStrategy> {
    transduce(space, Construction::SelTwoToOoOne, sigma, horizon)
}

pub fn oo_two_to_sel_one(
    space: &FiniteSpace,
    tau: Arc<dyn Strategy>,
    horizon: usize,
) -> Result<TransducedStrategy> {
    transduce(space, Construction::OoTwoToSelOne, tau, horizon)
}

pub fn sel_one_to_oo_two(
    space: &FiniteSpace,
    sigma: Arc<dyn Strategy>,
    horizon: usize,
) -> Result<TransducedStrategy> {
    transduce(space, Construction::SelOneToOoTwo, sigma, horizon)
}

pub fn cod_to_odod_two(
    space: &FiniteSpace,
    sigma: Arc<dyn Strategy>,
    horizon: usize,
) -> Result<TransducedStrategy> {
    transduce(space, Construction::CodToOdodTwo, sigma, horizon)
}

pub fn odod_to_cod_one(
    space: &FiniteSpace,
    sigma: Arc<dyn Strategy>,
    horizon: usize,
) -> Result<TransducedStrategy> {
    transduce(space, Construction::OdodToCodOne, sigma, horizon)
}

pub fn odod_two_as_cod_two(
    space: &FiniteSpace,
    sigma: Arc<dyn Strategy>,
    horizon: usize,
) -> Result<TransducedStrategy> {
    transduce(space, Construction::OdodTwoAsCodTwo, sigma, horizon)
}

pub fn cod_one_as_odod_one(
    space: &FiniteSpace,
    sigma: Arc<dyn Strategy>,
    horizon: usize,
) -> Result<TransducedStrategy> {
    transduce(space, Construction::CodOneAsOdodOne, sigma, horizon)
}

fn expect_pick(mv: &Move, inning: usize) -> Result<PointSet> {
    match mv {
        Move::Pick(s) => Ok(*s),
        other => Err(Error::ReconstructionFailure {
            inning,
            observed: other.clone(),
        }),
    }
}

fn expect_family(mv: &Move, inning: usize) -> Result<&OpenFamily> {
    match mv {
        Move::Family(f) => Ok(f),
        other => Err(Error::ReconstructionFailure {
            inning,
            observed: other.clone(),
        }),
    }
}

fn source_pick(sigma: &dyn Strategy, history: &[Move]) -> Result<PointSet> {
    match sigma.respond(history)? {
        Move::Pick(s) => Ok(s),
        other => Err(Error::IllegalMove {
            inning: history.len() / 2,
            mover: sigma.player(),
            mv: other,
            history: history.to_vec(),
        }),
    }
}

fn source_family(sigma: &dyn Strategy, history: &[Move]) -> Result<OpenFamily> {
    match sigma.respond(history)? {
        Move::Family(f) => Ok(f),
        other => Err(Error::IllegalMove {
            inning: history.len() / 2,
            mover: sigma.player(),
            mv: other,
            history: history.to_vec(),
        }),
    }
}

/// Marks, by lattice index, every open set `sigma` plays in reply to one of
/// `families` after `history`.
fn realized(
    lattice: &OpenLattice,
    sigma: &dyn Strategy,
    families: &[OpenFamily],
    history: &mut Vec<Move>,
) -> Result<Vec<bool>> {
    let mut seen = vec![false; lattice.len()];
    for f in families {
        history.push(Move::Family(f.clone()));
        let reply = source_pick(sigma, history);
        history.pop();
        if let Some(i) = lattice.index_of(reply?) {
            seen[i] = true;
        }
    }
    Ok(seen)
}

fn unrealized_union(lattice: &OpenLattice, seen: &[bool]) -> PointSet {
    lattice
        .opens()
        .iter()
        .zip(seen)
        .filter(|(u, s)| !u.is_empty() && !**s)
        .fold(PointSet::EMPTY, |acc, (u, _)| acc | *u)
}

fn claim_point_after(
    space: &FiniteSpace,
    lattice: &OpenLattice,
    sigma: &dyn Strategy,
    covers: &[OpenFamily],
    history: &mut Vec<Move>,
) -> Result<usize> {
    let seen = realized(lattice, sigma, covers, history)?;
    let missed = unrealized_union(lattice, &seen);
    let x = missed.complement(space.n()).first().ok_or_else(|| {
        Error::ClaimFailure(
            "the opens two never plays cover the space, so two's strategy fails to answer that cover from itself"
                .into(),
        )
    })?;
    let gap = lattice
        .opens()
        .iter()
        .zip(&seen)
        .find(|(u, s)| u.contains(x) && !**s);
    if let Some((u, _)) = gap {
        return Err(Error::ClaimFailure(format!(
            "{u} contains {x} but is never played"
        )));
    }
    Ok(x)
}

fn claim_open_after(
    space: &FiniteSpace,
    lattice: &OpenLattice,
    sigma: &dyn Strategy,
    families: &[OpenFamily],
    history: &mut Vec<Move>,
) -> Result<PointSet> {
    let seen = realized(lattice, sigma, families, history)?;
    let missed = unrealized_union(lattice, &seen);
    if space.is_dense(missed) {
        return Err(Error::ClaimFailure(
            "the opens two never plays have dense union, so two's strategy fails to answer that family from itself"
                .into(),
        ));
    }
    let v = lattice
        .nonempty()
        .iter()
        .copied()
        .find(|v| !v.intersects(missed))
        .expect("the complement of the closure of a non-dense open set is a nonempty open set");
    let gap = lattice
        .opens()
        .iter()
        .zip(&seen)
        .find(|(u, s)| !u.is_empty() && u.is_subset(v) && !**s);
    if let Some((u, _)) = gap {
        return Err(Error::ClaimFailure(format!(
            "{u} lies inside {v} but is never played"
        )));
    }
    Ok(v)
}

/// Replays `sigma` against one's moves `prefix`, interleaving its replies.
fn replay(sigma: &dyn Strategy, prefix: &[OpenFamily]) -> Result<Vec<Move>> {
    let mut history = Vec::with_capacity(2 * prefix.len() + 1);
    for f in prefix {
        history.push(Move::Family(f.clone()));
        let reply = sigma.respond(&history)?;
        history.push(reply);
    }
    Ok(history)
}

fn check_seat(sigma: &dyn Strategy, kind: GameKind, player: Player) -> Result<()> {
    if sigma.kind() != kind || sigma.player() != player {
        return Err(Error::StrategyMismatch {
            kind,
            player,
            actual_kind: sigma.kind(),
            actual_player: sigma.player(),
        });
    }
    Ok(())
}

/// A point all of whose neighbourhoods `sigma` plays in reply to some open
/// cover after one has played `prefix`: the least point outside the union of
/// the never-played nonempty opens.
pub fn claim_point(
    space: &FiniteSpace,
    sigma: &dyn Strategy,
    prefix: &[OpenFamily],
) -> Result<usize> {
    check_seat(sigma, GameKind::SelOOD, Player::Two)?;
    let mut history = replay(sigma, prefix)?;
    claim_point_after(
        space,
        &OpenLattice::new(space),
        sigma,
        &enumerate_covers(space)?,
        &mut history,
    )
}

/// A nonempty open set all of whose nonempty open subsets `sigma` plays in
/// reply to some dense-union family after `prefix`: the least nonempty open
/// set missing every never-played nonempty open.
pub fn claim_open(
    space: &FiniteSpace,
    sigma: &dyn Strategy,
    prefix: &[OpenFamily],
) -> Result<PointSet> {
    check_seat(sigma, GameKind::SelODOD, Player::Two)?;
    let mut history = replay(sigma, prefix)?;
    claim_open_after(
        space,
        &OpenLattice::new(space),
        sigma,
        &enumerate_dense_families(space)?,
        &mut history,
    )
}

impl TransducedStrategy {
    pub fn construction(&self) -> Construction {
        self.inner.construction
    }

    pub fn horizon(&self) -> usize {
        self.inner.horizon
    }

    pub fn source(&self) -> &Arc<dyn Strategy> {
        &self.inner.source
    }

    /// Answers `history` and reports the bookkeeping behind the answer.
    pub fn auxiliary(&self, history: &[Move]) -> Result<Auxiliary> {
        let player = self.inner.construction.target().1;
        let mover = Position::from_history(history).mover();
        if mover != player {
            return Err(Error::WrongMover {
                expected: mover,
                actual: player,
            });
        }
        let inn = &*self.inner;
        let sigma = &*inn.source;
        let innings = history.len() / 2;
        match inn.construction {
            Construction::WlToPointOpen => {
                let mut source_history = Vec::with_capacity(history.len() + 1);
                for beta in 0..innings {
                    let w = expect_pick(&history[2 * beta + 1], beta)?;
                    let cover = self.reconstruct_family(&mut source_history, w, beta)?;
                    source_history.push(Move::Family(cover));
                    source_history.push(Move::Pick(w));
                }
                let x = claim_point_after(
                    &inn.space,
                    &inn.lattice,
                    sigma,
                    &inn.families,
                    &mut source_history,
                )?;
                Ok(Auxiliary {
                    source_history,
                    witnesses: Vec::new(),
                    response: Move::Point(x),
                })
            }
            Construction::SelTwoToOoOne => {
                let mut source_history = Vec::with_capacity(history.len() + 1);
                for beta in 0..innings {
                    let w = expect_pick(&history[2 * beta + 1], beta)?;
                    let family = self.reconstruct_family(&mut source_history, w, beta)?;
                    source_history.push(Move::Family(family));
                    source_history.push(Move::Pick(w));
                }
                let v = claim_open_after(
                    &inn.space,
                    &inn.lattice,
                    sigma,
                    &inn.families,
                    &mut source_history,
                )?;
                Ok(Auxiliary {
                    source_history,
                    witnesses: Vec::new(),
                    response: Move::Pick(v),
                })
            }
            Construction::OoOneToSelTwo => {
                // the source plays the open-open game against the traces U ∩ G
                let mut source_history = Vec::with_capacity(history.len() + 1);
                let mut witnesses = Vec::with_capacity(innings + 1);
                let mut pick = PointSet::EMPTY;
                for beta in 0..=innings {
                    let family = expect_family(&history[2 * beta], beta)?;
                    let u = source_pick(sigma, &source_history)?;
                    let g =
                        family
                            .first_meeting(u)
                            .ok_or_else(|| Error::ReconstructionFailure {
                                inning: beta,
                                observed: history[2 * beta].clone(),
                            })?;
                    source_history.push(Move::Pick(u));
                    source_history.push(Move::Pick(u & g));
                    witnesses.push(u & g);
                    pick = g;
                }
                Ok(Auxiliary {
                    source_history,
                    witnesses,
                    response: Move::Pick(pick),
                })
            }
            Construction::SelOneToOoTwo => {
                let mut source_history = Vec::with_capacity(history.len() + 1);
                let mut witnesses = Vec::with_capacity(innings + 1);
                for beta in 0..=innings {
                    let u = expect_pick(&history[2 * beta], beta)?;
                    let family = source_family(sigma, &source_history)?;
                    let g =
                        family
                            .first_meeting(u)
                            .ok_or_else(|| Error::ReconstructionFailure {
                                inning: beta,
                                observed: history[2 * beta].clone(),
                            })?;
                    source_history.push(Move::Family(family));
                    source_history.push(Move::Pick(g));
                    witnesses.push(u & g);
                }
                let response = Move::Pick(*witnesses.last().expect("at least one inning"));
                Ok(Auxiliary {
                    source_history,
                    witnesses,
                    response,
                })
            }
            Construction::OoTwoToSelOne => {
                let mut source_history = Vec::with_capacity(history.len() + 1);
                for beta in 0..innings {
                    let g = expect_pick(&history[2 * beta + 1], beta)?;
                    let mut found = None;
                    for &o in inn.lattice.nonempty() {
                        source_history.push(Move::Pick(o));
                        let reply = source_pick(sigma, &source_history);
                        source_history.pop();
                        if reply? == g {
                            found = Some(o);
                            break;
                        }
                    }
                    let o = found.ok_or(Error::ReconstructionFailure {
                        inning: beta,
                        observed: Move::Pick(g),
                    })?;
                    source_history.push(Move::Pick(o));
                    source_history.push(Move::Pick(g));
                }
                let mut family = Vec::with_capacity(inn.lattice.nonempty().len());
                for &o in inn.lattice.nonempty() {
                    source_history.push(Move::Pick(o));
                    let reply = source_pick(sigma, &source_history);
                    source_history.pop();
                    family.push(reply?);
                }
                Ok(Auxiliary {
                    source_history,
                    witnesses: Vec::new(),
                    response: Move::Family(family.into_iter().collect()),
                })
            }
            Construction::CodToOdodTwo => {
                let mut source_history = Vec::with_capacity(history.len() + 1);
                let mut witnesses = Vec::with_capacity(innings + 1);
                for beta in 0..=innings {
                    let family = expect_family(&history[2 * beta], beta)?;
                    let refinement =
                        maximal_disjoint_refinement(&inn.space, family).map_err(|_| {
                            Error::ReconstructionFailure {
                                inning: beta,
                                observed: history[2 * beta].clone(),
                            }
                        })?;
                    source_history.push(Move::Family(refinement.family().clone()));
                    let p = source_pick(sigma, &source_history)?;
                    source_history.push(Move::Pick(p));
                    let w = refinement.witness_of(p).ok_or_else(|| Error::IllegalMove {
                        inning: beta,
                        mover: Player::Two,
                        mv: Move::Pick(p),
                        history: source_history.clone(),
                    })?;
                    witnesses.push(w);
                }
                let response = Move::Pick(*witnesses.last().expect("at least one inning"));
                Ok(Auxiliary {
                    source_history,
                    witnesses,
                    response,
                })
            }
            Construction::OdodToCodOne => {
                let mut source_history = Vec::with_capacity(history.len() + 1);
                let mut witnesses = Vec::with_capacity(innings);
                for beta in 0..=innings {
                    let family = source_family(sigma, &source_history)?;
                    let refinement =
                        maximal_disjoint_refinement(&inn.space, &family).map_err(|_| {
                            Error::IllegalMove {
                                inning: beta,
                                mover: Player::One,
                                mv: Move::Family(family.clone()),
                                history: source_history.clone(),
                            }
                        })?;
                    source_history.push(Move::Family(family));
                    if beta == innings {
                        return Ok(Auxiliary {
                            source_history,
                            witnesses,
                            response: Move::Family(refinement.family().clone()),
                        });
                    }
                    let p = expect_pick(&history[2 * beta + 1], beta)?;
                    let w = refinement
                        .witness_of(p)
                        .ok_or(Error::ReconstructionFailure {
                            inning: beta,
                            observed: Move::Pick(p),
                        })?;
                    source_history.push(Move::Pick(w));
                    witnesses.push(w);
                }
                unreachable!("the last inning returns")
            }
            Construction::OdodTwoAsCodTwo | Construction::CodOneAsOdodOne => Ok(Auxiliary {
                source_history: history.to_vec(),
                witnesses: Vec::new(),
                response: sigma.respond(history)?,
            }),
        }
    }

    /// Least enumerated family to which the source replies `w` after
    /// `source_history`.
    fn reconstruct_family(
        &self,
        source_history: &mut Vec<Move>,
        w: PointSet,
        inning: usize,
    ) -> Result<OpenFamily> {
        let sigma = &*self.inner.source;
        for f in &self.inner.families {
            source_history.push(Move::Family(f.clone()));
            let reply = source_pick(sigma, source_history);
            source_history.pop();
            if reply? == w {
                return Ok(f.clone());
            }
        }
        Err(Error::ReconstructionFailure {
            inning,
            observed: Move::Pick(w),
        })
    }
}

impl Strategy for TransducedStrategy {
    fn kind(&self) -> GameKind {
        self.inner.construction.target().0
    }

    fn player(&self) -> Player {
        self.inner.construction.target().1
    }

    fn provenance(&self) -> Provenance {
        Provenance::Transducer(self.inner.construction.name().to_string())
    }

    fn respond(&self, history: &[Move]) -> Result<Move> {
        Ok(self.auxiliary(history)?.response)
    }

    fn is_positional(&self) -> bool {
        matches!(
            self.inner.construction,
            Construction::OdodTwoAsCodTwo | Construction::CodOneAsOdodOne
        ) && self.inner.source.is_positional()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{verify_winning, GreedyCellularity, ScriptedStrategy};
    use crate::spacegen::{discrete, indiscrete, partition, sierpinski};

    fn set(points: &[usize]) -> PointSet {
        points.iter().copied().collect()
    }

    fn solver(space: &FiniteSpace, kind: GameKind, h: usize) -> Arc<dyn Strategy> {
        Arc::new(solve(space, kind, h).unwrap().strategy)
    }

    fn wins(space: &FiniteSpace, s: &TransducedStrategy, h: usize) -> bool {
        verify_winning(space, s.kind(), h, s).unwrap().is_winning()
    }

    #[test]
    fn claim_point_examples() {
        let s = sierpinski();
        let greedy = GreedyCellularity::new(&s, GameKind::SelOOD).unwrap();
        assert_eq!(claim_point(&s, &greedy, &[]).unwrap(), 0);

        let d = discrete(2);
        let first =
            ScriptedStrategy::new(GameKind::SelOOD, Player::Two, "first", |h| match h.last() {
                Some(Move::Family(f)) => Ok(Move::Pick(f.members()[0])),
                _ => Err(Error::InvalidParams("no pending cover".into())),
            });
        assert_eq!(claim_point(&d, &first, &[]).unwrap(), 0);

        let p = partition(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let sigma = solver(&p, GameKind::SelOOD, 2);
        assert!(claim_point(&p, &*sigma, &[]).is_ok());
    }

    #[test]
    fn claim_open_examples() {
        let s = sierpinski();
        let greedy = GreedyCellularity::new(&s, GameKind::SelODOD).unwrap();
        assert_eq!(claim_open(&s, &greedy, &[]).unwrap(), set(&[1]));

        let any =
            ScriptedStrategy::new(GameKind::SelODOD, Player::Two, "any", |h| match h.last() {
                Some(Move::Family(f)) => Ok(Move::Pick(f.members()[0])),
                _ => Err(Error::InvalidParams("no pending family".into())),
            });
        assert_eq!(claim_open(&indiscrete(2), &any, &[]).unwrap(), set(&[0, 1]));

        let d = discrete(2);
        let sigma = solver(&d, GameKind::SelODOD, 2);
        assert!(claim_open(&d, &*sigma, &[]).is_ok());
    }

    #[test]
    fn point_open_from_weak_lindelof() {
        let s = sierpinski();
        let tau = wl_to_pointopen(&s, solver(&s, GameKind::SelOOD, 1), 1).unwrap();
        assert!(wins(&s, &tau, 1));
        let d = discrete(2);
        let tau = wl_to_pointopen(&d, solver(&d, GameKind::SelOOD, 2), 2).unwrap();
        assert!(wins(&d, &tau, 2));
        let d3 = discrete(3);
        let sigma = solver(&d3, GameKind::SelOOD, 2);
        assert!(matches!(
            wl_to_pointopen(&d3, sigma, 2).unwrap_err(),
            Error::WinnerMismatch { .. }
        ));
    }

    #[test]
    fn open_open_one_to_selection_two() {
        let s = sierpinski();
        let always = ScriptedStrategy::new(GameKind::OpenOpen, Player::One, "always-1", |_| {
            Ok(Move::Pick(PointSet::singleton(1)))
        });
        let sigma = oo_one_to_sel_two(&s, Arc::new(always), 1).unwrap();
        assert!(wins(&s, &sigma, 1));
        let d = discrete(3);
        let sigma = oo_one_to_sel_two(&d, solver(&d, GameKind::OpenOpen, 3), 3).unwrap();
        assert!(wins(&d, &sigma, 3));
    }

    #[test]
    fn selection_two_to_open_open_one() {
        let p = partition(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        for (space, h) in [(sierpinski(), 1), (discrete(2), 2), (p, 2)] {
            let tau = sel_two_to_oo_one(&space, solver(&space, GameKind::SelODOD, h), h).unwrap();
            assert!(wins(&space, &tau, h));
        }
    }

    #[test]
    fn open_open_two_to_selection_one() {
        let d = discrete(2);
        let least =
            ScriptedStrategy::new(GameKind::OpenOpen, Player::Two, "least-nbhd", |h| {
                match h.last() {
                    Some(Move::Pick(u)) => Ok(Move::Pick(PointSet::singleton(
                        u.first().expect("nonempty"),
                    ))),
                    _ => Err(Error::InvalidParams("no pending open".into())),
                }
            });
        let sigma = oo_two_to_sel_one(&d, Arc::new(least), 1).unwrap();
        assert_eq!(
            sigma.respond(&[]).unwrap(),
            Move::Family([set(&[0]), set(&[1])].into_iter().collect())
        );
        assert!(wins(&d, &sigma, 1));
        let d3 = discrete(3);
        let sigma = oo_two_to_sel_one(&d3, solver(&d3, GameKind::OpenOpen, 2), 2).unwrap();
        assert!(wins(&d3, &sigma, 2));
        let s = sierpinski();
        let tau = ScriptedStrategy::new(GameKind::OpenOpen, Player::Two, "echo", |h| {
            h.last()
                .cloned()
                .ok_or(Error::InvalidParams("no pending open".into()))
        });
        assert!(matches!(
            oo_two_to_sel_one(&s, Arc::new(tau), 1).unwrap_err(),
            Error::WinnerMismatch { .. }
        ));
    }

    #[test]
    fn selection_one_to_open_open_two() {
        for (space, h) in [(discrete(2), 1), (discrete(4), 2)] {
            let tau = sel_one_to_oo_two(&space, solver(&space, GameKind::SelODOD, h), h).unwrap();
            assert!(wins(&space, &tau, h));
        }
        let i = indiscrete(3);
        let whole = ScriptedStrategy::new(GameKind::SelODOD, Player::One, "whole", |_| {
            Ok(Move::Family(OpenFamily::new([PointSet::full(3)])))
        });
        assert!(matches!(
            sel_one_to_oo_two(&i, Arc::new(whole), 1).unwrap_err(),
            Error::WinnerMismatch { .. }
        ));
    }

    #[test]
    fn refinement_transductions() {
        let s = sierpinski();
        let greedy: Arc<dyn Strategy> =
            Arc::new(GreedyCellularity::new(&s, GameKind::SelCOD).unwrap());
        let two = cod_to_odod_two(&s, greedy, 1).unwrap();
        assert!(wins(&s, &two, 1));
        let d = discrete(2);
        let one = odod_to_cod_one(&d, solver(&d, GameKind::SelODOD, 1), 1).unwrap();
        assert!(wins(&d, &one, 1));
        for space in [s, d, discrete(3)] {
            let h = crate::invariants::cellularity(&space);
            let adapted =
                odod_two_as_cod_two(&space, solver(&space, GameKind::SelODOD, h), h).unwrap();
            assert!(adapted.is_positional());
            assert!(wins(&space, &adapted, h));
        }
    }

    #[test]
    fn auxiliary_tracks_intersections() {
        let d = discrete(2);
        let sigma = solver(&d, GameKind::SelODOD, 1);
        let tau = sel_one_to_oo_two(&d, sigma, 1).unwrap();
        let aux = tau.auxiliary(&[Move::Pick(d.points())]).unwrap();
        assert_eq!(aux.source_history.len(), 2);
        assert_eq!(aux.witnesses.len(), 1);
        assert_eq!(aux.response, Move::Pick(aux.witnesses[0]));
        assert!(tau.auxiliary(&[]).is_err());
    }

    #[test]
    fn construction_names_roundtrip() {
        for c in Construction::ALL {
            assert_eq!(c.name().parse::<Construction>().unwrap(), c);
        }
    }
}
