use super::strategy::{Provenance, Strategy};
use super::{GameKind, Move, Player, Position};
use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::space::FiniteSpace;

/// Two's strategy in the selection games that keeps a disjoint witness.
///
/// Each inning the witness `V` is the least minimal neighbourhood disjoint
/// from the accumulated union, and two answers with the least member of
/// one's family meeting `V`. Such a member exists because the family has
/// dense union. The member meets `V` in a nonempty open set, which contains
/// an atom (a minimal nonempty open set) lying outside the accumulated union.
/// So every inning claims a new atom and two is dense after at most as many
/// innings as there are atoms, which is the cellularity. A non-dense open
/// union always misses some atom entirely, so a witness exists whenever two
/// has not yet won.
#[derive(Clone, Debug)]
pub struct GreedyCellularity {
    kind: GameKind,
    nbhds: Vec<PointSet>,
}

impl GreedyCellularity {
    pub fn new(space: &FiniteSpace, kind: GameKind) -> Result<Self> {
        if !matches!(
            kind,
            GameKind::SelOOD | GameKind::SelCOD | GameKind::SelODOD
        ) {
            return Err(Error::InvalidParams(format!(
                "the greedy strategy plays sel-o-od, sel-c-od or sel-od-od, not {kind}"
            )));
        }
        let mut nbhds = space.distinct_minimal_nbhds();
        nbhds.sort_unstable();
        Ok(GreedyCellularity { kind, nbhds })
    }

    /// The witness for the next inning, or `None` once every minimal
    /// neighbourhood meets the accumulated union (that is, once it is dense).
    pub fn witness(&self, accumulated: PointSet) -> Option<PointSet> {
        self.nbhds
            .iter()
            .copied()
            .find(|v| !v.intersects(accumulated))
    }
}

impl Strategy for GreedyCellularity {
    fn kind(&self) -> GameKind {
        self.kind
    }

    fn player(&self) -> Player {
        Player::Two
    }

    fn provenance(&self) -> Provenance {
        Provenance::Greedy
    }

    fn respond(&self, history: &[Move]) -> Result<Move> {
        let position = Position::from_history(history);
        let family = match &position.pending {
            Some(Move::Family(f)) if !f.is_empty() => f,
            Some(other) => {
                return Err(Error::IllegalMove {
                    inning: position.inning,
                    mover: Player::One,
                    mv: other.clone(),
                    history: history.to_vec(),
                })
            }
            None => {
                return Err(Error::WrongMover {
                    expected: Player::One,
                    actual: Player::Two,
                })
            }
        };
        let pick = match self.witness(position.accumulated) {
            Some(v) => family.first_meeting(v).unwrap_or(family.members()[0]),
            None => family.members()[0],
        };
        Ok(Move::Pick(pick))
    }

    fn is_positional(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{verify_winning, Verdict};
    use crate::invariants::cellularity;
    use crate::spacegen::{discrete, fan, partition};

    #[test]
    fn wins_within_cellularity() {
        let spaces = [
            discrete(3),
            fan(3),
            partition(4, &[vec![0, 1], vec![2], vec![3]]).unwrap(),
        ];
        for s in spaces {
            let c = cellularity(&s);
            for kind in [GameKind::SelOOD, GameKind::SelCOD, GameKind::SelODOD] {
                let g = GreedyCellularity::new(&s, kind).unwrap();
                assert!(matches!(
                    verify_winning(&s, kind, c, &g).unwrap(),
                    Verdict::Winning
                ));
            }
        }
    }

    #[test]
    fn sierpinski_trace() {
        let s = crate::spacegen::sierpinski();
        let g = GreedyCellularity::new(&s, GameKind::SelOOD).unwrap();
        let one = PointSet::singleton(1);
        assert_eq!(g.witness(PointSet::EMPTY), Some(one));
        let cover = Move::Family([one, s.points()].into_iter().collect());
        assert_eq!(g.respond(&[cover]).unwrap(), Move::Pick(one));
        assert_eq!(g.witness(one), None);
    }

    #[test]
    fn rejects_other_games() {
        assert!(GreedyCellularity::new(&discrete(2), GameKind::OpenOpen).is_err());
    }
}
