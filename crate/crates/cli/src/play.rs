//! `topogame play`: a terminal front end over [`Session`].

use crate::session::Session;
use crate::{load_space, options, CliResult, PlayArgs};
use std::fs::OpenOptions;
use std::io::{self, BufRead, Write};
use topogame_core::{Move, Transcript};

/// Moves listed before the list is cut short.
const SHOWN_MOVES: usize = 40;

pub fn run(a: PlayArgs) -> CliResult {
    let space = load_space(&a.space)?;
    let session = Session::new(space, a.kind, a.horizon, a.player, options(a.mode))?;
    let stdin = io::stdin();
    let transcript = drive(session, stdin.lock(), io::stdout().lock())?;
    if let (Some(t), Some(path)) = (&transcript, &a.record) {
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(f, "{}", serde_json::to_string(t)?)?;
    }
    Ok(0)
}

/// Reads moves from `input` until the game ends or the player quits.
/// Returns the transcript of a finished game.
pub fn drive<R: BufRead, W: Write>(
    mut session: Session,
    mut input: R,
    mut out: W,
) -> CliResult<Option<Transcript>> {
    let engine = session.human().other();
    writeln!(
        out,
        "{} on a {}-point space; you are player {}, the engine is player {engine}.",
        session.kind(),
        session.space().n(),
        session.human()
    )?;
    if let Some(mv) = &session.position().pending {
        writeln!(out, "engine: {mv}")?;
    }
    loop {
        let state = session.state()?;
        if state.done {
            let winner = state.winner.expect("finished games have a winner");
            let who = if winner == session.human() {
                "you win"
            } else {
                "the engine wins"
            };
            writeln!(
                out,
                "game over after {} innings: player {winner} wins ({who}); accumulated {}",
                state.horizon, state.position.accumulated
            )?;
            return Ok(Some(session.transcript()));
        }
        writeln!(
            out,
            "inning {} of {}, accumulated {}, best play wins for player {}",
            state.position.inning + 1,
            state.horizon,
            state.position.accumulated,
            state.evaluation
        )?;
        for (i, mv) in state.legal_moves.iter().take(SHOWN_MOVES).enumerate() {
            writeln!(out, "  [{i}] {mv}")?;
        }
        if state.legal_moves.len() > SHOWN_MOVES {
            writeln!(
                out,
                "  ... {} more; any move may also be typed as JSON",
                state.legal_moves.len() - SHOWN_MOVES
            )?;
        }
        write!(out, "your move (number, JSON, or q)> ")?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(None);
        }
        let line = line.trim();
        if line == "q" || line == "quit" {
            return Ok(None);
        }
        let mv: Move = match line.parse::<usize>() {
            Ok(i) => match state.legal_moves.get(i) {
                Some(mv) => mv.clone(),
                None => {
                    writeln!(out, "no move numbered {i}")?;
                    continue;
                }
            },
            Err(_) => match serde_json::from_str(line) {
                Ok(mv) => mv,
                Err(e) => {
                    writeln!(out, "could not read a move: {e}")?;
                    continue;
                }
            },
        };
        match session.apply(mv) {
            Ok(outcome) => {
                if let Some(reply) = outcome.engine_reply {
                    writeln!(out, "engine: {reply}")?;
                }
            }
            Err(e) => writeln!(out, "{e}")?,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use topogame_core::game::SolveOptions;
    use topogame_core::spacegen::sierpinski;
    use topogame_core::{GameKind, Player};

    #[test]
    fn scripted_session_finishes() {
        let s = Session::new(
            sierpinski(),
            GameKind::PointOpen,
            1,
            Player::One,
            SolveOptions::default(),
        )
        .unwrap();
        let mut shown = Vec::new();
        let t = drive(s, "x\n9\n{\"point\":1}\n".as_bytes(), &mut shown)
            .unwrap()
            .unwrap();
        let text = String::from_utf8(shown).unwrap();
        assert!(text.contains("could not read a move"));
        assert!(text.contains("no move numbered 9"));
        assert!(text.contains("game over"));
        assert_eq!(t.innings.len(), 2);
        assert_eq!(t.winner, Player::One);
    }

    #[test]
    fn end_of_input_quits() {
        let s = Session::new(
            sierpinski(),
            GameKind::SelOOD,
            2,
            Player::Two,
            SolveOptions::default(),
        )
        .unwrap();
        assert!(drive(s, "".as_bytes(), Vec::new()).unwrap().is_none());
    }
}
