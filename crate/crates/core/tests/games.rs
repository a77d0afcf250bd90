use rayon::prelude::*;
use std::sync::Arc;
use topogame_core::checks::spaces_up_to;
use topogame_core::game::{
    play, solve, solve_with, verify_winning, GameKind, GreedyCellularity, Move, Player,
    ScriptedStrategy, SolveOptions, SolvedGame, Strategy,
};
use topogame_core::invariants::{cellularity, wl_degree};
use topogame_core::spacegen::{discrete, fan, indiscrete, sierpinski};
use topogame_core::{Error, OpenFamily, PointSet};

fn set(points: &[usize]) -> PointSet {
    points.iter().copied().collect()
}

#[test]
fn determinacy_and_solver_strategies() {
    let spaces = spaces_up_to(4);
    let failures: Vec<String> = spaces
        .par_iter()
        .flat_map_iter(|s| {
            let mut kinds = GameKind::ALL_UNCAPPED.to_vec();
            if s.n() <= 3 {
                kinds.extend((1..=2).map(|cap| GameKind::SelFinOOD { cap }));
            }
            let mut bad = Vec::new();
            for kind in kinds {
                for h in 1..=4 {
                    let sol = solve(s, kind, h).unwrap();
                    let verdict = verify_winning(s, kind, h, &sol.strategy).unwrap();
                    if !verdict.is_winning() {
                        bad.push(format!("{kind} h={h} on {s:?}"));
                    }
                    // the loser has no winning strategy: its solver strategy loses
                    let game = sol.strategy.game().clone();
                    let loser = game.strategy(sol.winner.other(), h).unwrap();
                    if verify_winning(s, kind, h, &loser).unwrap().is_winning() {
                        bad.push(format!("{kind} h={h}: both players win on {s:?}"));
                    }
                }
            }
            bad
        })
        .collect();
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn winners_are_monotone_in_the_horizon() {
    for s in spaces_up_to(4) {
        for kind in GameKind::ALL_UNCAPPED {
            let g = SolvedGame::new(&s, kind, 5, SolveOptions::default()).unwrap();
            let favoured = kind.dense_winner();
            for h in 1..5 {
                if g.winner(h).unwrap() == favoured {
                    assert_eq!(g.winner(h + 1).unwrap(), favoured, "{kind} h={h} on {s:?}");
                }
            }
        }
    }
}

#[test]
fn finite_selection_is_trivial_with_a_large_cap() {
    for s in spaces_up_to(3) {
        let kind = GameKind::SelFinOOD { cap: 8 };
        assert_eq!(solve(&s, kind, 1).unwrap().winner, Player::Two);
    }
    for s in spaces_up_to(4) {
        let kind = GameKind::SelFinOOD { cap: 16 };
        let w = solve_with(&s, kind, 1, SolveOptions::reduced())
            .unwrap()
            .winner;
        assert_eq!(w, Player::Two);
    }
}

#[test]
fn open_open_needs_cellularity_innings_not_weak_lindelof() {
    let f = fan(2);
    assert_eq!(wl_degree(&f), 1);
    assert_eq!(cellularity(&f), 2);
    assert_eq!(
        solve(&f, GameKind::OpenOpen, 1).unwrap().winner,
        Player::Two
    );
    assert_eq!(
        solve(&f, GameKind::OpenOpen, 2).unwrap().winner,
        Player::One
    );
    for s in spaces_up_to(4) {
        let c = cellularity(&s);
        let g = SolvedGame::new(&s, GameKind::OpenOpen, c, SolveOptions::default()).unwrap();
        assert_eq!(g.winner(c).unwrap(), Player::One);
        if c > 1 {
            assert_eq!(g.winner(c - 1).unwrap(), Player::Two);
        }
    }
}

#[test]
fn play_examples() {
    let i3 = indiscrete(3);
    let solver_one = solve(&i3, GameKind::OpenOpen, 1).unwrap().strategy;
    let game = solver_one.game().clone();
    let two = game.strategy(Player::Two, 1).unwrap();
    assert_eq!(
        play(&i3, GameKind::OpenOpen, 1, &solver_one, &two)
            .unwrap()
            .winner,
        Player::One
    );

    let d2 = discrete(2);
    let point_zero = ScriptedStrategy::new(GameKind::PointOpen, Player::One, "zero", |_| {
        Ok(Move::Point(0))
    });
    let nbhd = ScriptedStrategy::new(GameKind::PointOpen, Player::Two, "nbhd", |h| {
        match h.last() {
            Some(Move::Point(x)) => Ok(Move::Pick(PointSet::singleton(*x))),
            _ => Err(Error::InvalidParams("no point to answer".into())),
        }
    });
    let t = play(&d2, GameKind::PointOpen, 2, &point_zero, &nbhd).unwrap();
    assert_eq!(t.winner, Player::Two);
    assert_eq!(t.accumulated, set(&[0]));
    assert_eq!(t.innings.len(), 4);

    let s = sierpinski();
    let cover = OpenFamily::new([set(&[1]), set(&[0, 1])]);
    let one = ScriptedStrategy::new(GameKind::SelOOD, Player::One, "cover", move |_| {
        Ok(Move::Family(cover.clone()))
    });
    let greedy = GreedyCellularity::new(&s, GameKind::SelOOD).unwrap();
    let t = play(&s, GameKind::SelOOD, 1, &one, &greedy).unwrap();
    assert_eq!(t.winner, Player::Two);
    assert_eq!(t.moves()[1], Move::Pick(set(&[1])));
}

#[test]
fn play_rejects_illegal_and_mismatched_strategies() {
    let s = sierpinski();
    let bad = ScriptedStrategy::new(GameKind::OpenOpen, Player::One, "zero", |_| {
        Ok(Move::Pick(set(&[0])))
    });
    let two = ScriptedStrategy::new(GameKind::OpenOpen, Player::Two, "echo", |h| {
        Ok(h[h.len() - 1].clone())
    });
    let err = play(&s, GameKind::OpenOpen, 1, &bad, &two).unwrap_err();
    assert!(matches!(
        err,
        Error::IllegalMove {
            inning: 0,
            mover: Player::One,
            ..
        }
    ));
    let err = play(&s, GameKind::PointOpen, 1, &bad, &two).unwrap_err();
    assert!(matches!(err, Error::StrategyMismatch { .. }));
}

#[test]
fn greedy_on_discrete_three_exhausts_the_singletons() {
    let d = discrete(3);
    let singletons = OpenFamily::new((0..3).map(PointSet::singleton));
    let one = ScriptedStrategy::new(GameKind::SelOOD, Player::One, "singletons", move |_| {
        Ok(Move::Family(singletons.clone()))
    });
    let greedy = GreedyCellularity::new(&d, GameKind::SelOOD).unwrap();
    let t = play(&d, GameKind::SelOOD, 3, &one, &greedy).unwrap();
    let picks: Vec<Move> = t.moves().into_iter().skip(1).step_by(2).collect();
    assert_eq!(
        picks,
        (0..3)
            .map(|x| Move::Pick(PointSet::singleton(x)))
            .collect::<Vec<_>>()
    );
    assert_eq!(t.winner, Player::Two);
    assert!(verify_winning(&d, GameKind::SelOOD, 3, &greedy)
        .unwrap()
        .is_winning());

    let i4 = indiscrete(4);
    for kind in [GameKind::SelOOD, GameKind::SelCOD, GameKind::SelODOD] {
        let g = GreedyCellularity::new(&i4, kind).unwrap();
        assert!(verify_winning(&i4, kind, 1, &g).unwrap().is_winning());
    }
}

#[test]
fn strategies_are_shareable_across_threads() {
    let s: Arc<dyn Strategy> =
        Arc::new(solve(&discrete(3), GameKind::OpenOpen, 3).unwrap().strategy);
    let moves: Vec<Move> = (0..8)
        .into_par_iter()
        .map(|_| s.respond(&[]).unwrap())
        .collect();
    assert!(moves.windows(2).all(|w| w[0] == w[1]));
}
