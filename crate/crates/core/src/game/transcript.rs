use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{BoardState, GameConfig, GameOutcome, Mode, Outcome, Player};
use crate::error::GameError;
use crate::graph::{Color, Edge, TargetGraph};
use crate::strategies::Strategy;

/// A player lost by failing to supply a legal move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Forfeit {
    pub player: Player,
    pub reason: String,
}

/// Full record of one match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchTranscript {
    pub config: GameConfig,
    pub moves: Vec<(Edge, Color)>,
    pub outcome: GameOutcome,
    pub forfeit: Option<Forfeit>,
    pub diagnostics: Vec<String>,
}

/// Runs two strategies against each other until the game ends.
///
/// A strategy error or illegal move ends the match as a forfeit for that
/// side; the reason is kept in the transcript.
pub fn play_match(alice: &mut dyn Strategy, bob: &mut dyn Strategy, config: GameConfig) -> MatchTranscript {
    let mut state = BoardState::from_config(config.clone());
    let mut forfeit = None;
    let mut diagnostics = Vec::new();
    while !state.is_over() {
        let (mover, _) = state.whose_turn();
        let strategy: &mut dyn Strategy = match mover {
            Player::Alice => &mut *alice,
            Player::Bob => &mut *bob,
        };
        let chosen = strategy.choose(&state);
        let result = match chosen {
            Ok(e) => state.play(e, mover).map_err(|err| format!("illegal move {e}: {err}")),
            Err(err) => Err(err.to_string()),
        };
        if let Err(reason) = result {
            diagnostics.push(format!("{} ({mover:?}) forfeits: {reason}", strategy.name()));
            state.force_outcome(mover.opponent());
            forfeit = Some(Forfeit { player: mover, reason });
        }
    }
    MatchTranscript { config, moves: state.move_log().to_vec(), outcome: state.outcome(), forfeit, diagnostics }
}

impl MatchTranscript {
    /// Replays the moves and checks that the recorded outcome is reproduced.
    pub fn replay(&self) -> Result<BoardState, GameError> {
        let mut state = BoardState::replay(self.config.clone(), &self.moves)?;
        if let Some(f) = &self.forfeit {
            if state.is_over() {
                return Err(GameError::Transcript { line: 0, message: "forfeit after the game ended".into() });
            }
            state.force_outcome(f.player.opponent());
        }
        if state.outcome() != self.outcome {
            return Err(GameError::Transcript {
                line: 0,
                message: format!("replay gives {:?}, transcript records {:?}", state.outcome(), self.outcome),
            });
        }
        Ok(state)
    }

    /// Line format:
    ///
    /// ```text
    /// N=6 p=1 q=1 mode=strong
    /// target=6; 1-2 2-3 3-4 4-5 5-6
    /// 1 1-2 B
    /// 2 3-4 R
    /// ...
    /// outcome=AliceWin move=9
    /// ```
    ///
    /// A forfeit adds `forfeit=Alice|Bob <reason>` before the outcome line.
    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        writeln!(out, "N={} p={} q={} mode={}", c.order, c.p, c.q, c.mode).unwrap();
        writeln!(out, "target={}", c.target.to_text()).unwrap();
        for (k, (e, color)) in self.moves.iter().enumerate() {
            writeln!(out, "{} {} {}", k + 1, e, color.letter()).unwrap();
        }
        if let Some(f) = &self.forfeit {
            writeln!(out, "forfeit={:?} {}", f.player, f.reason.replace('\n', " ")).unwrap();
        }
        match self.outcome.winning_move_index {
            Some(i) => writeln!(out, "outcome={} move={}", self.outcome.value, i + 1).unwrap(),
            None => writeln!(out, "outcome={}", self.outcome.value).unwrap(),
        }
        out
    }

    /// Parses [`MatchTranscript::to_text`] output and validates it by replay.
    pub fn from_text(text: &str) -> Result<Self, GameError> {
        let err = |line: usize, message: String| GameError::Transcript { line, message };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));

        let (ln, header) = lines.next().ok_or_else(|| err(1, "empty transcript".into()))?;
        let mut order = None;
        let mut p = None;
        let mut q = None;
        let mut mode = None;
        for field in header.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| err(ln + 1, format!("bad field {field:?}")))?;
            let bad = |_| err(ln + 1, format!("bad value in {field:?}"));
            match key {
                "N" => order = Some(value.parse::<usize>().map_err(bad)?),
                "p" => p = Some(value.parse::<usize>().map_err(bad)?),
                "q" => q = Some(value.parse::<usize>().map_err(bad)?),
                "mode" => mode = Some(value.parse::<Mode>().map_err(|m| err(ln + 1, m))?),
                other => return Err(err(ln + 1, format!("unknown header key {other:?}"))),
            }
        }
        let missing = |what: &str| err(ln + 1, format!("header lacks {what}"));
        let (order, p, q, mode) = (
            order.ok_or_else(|| missing("N"))?,
            p.ok_or_else(|| missing("p"))?,
            q.ok_or_else(|| missing("q"))?,
            mode.ok_or_else(|| missing("mode"))?,
        );

        let (ln, target_line) = lines.next().ok_or_else(|| err(2, "missing target line".into()))?;
        let target_text = target_line
            .strip_prefix("target=")
            .ok_or_else(|| err(ln + 1, "expected target=...".into()))?;
        let target = TargetGraph::parse(target_text)?;
        let config = GameConfig::new(order, p, q, target, mode)?;

        let mut moves = Vec::new();
        let mut forfeit = None;
        let mut recorded = None;
        for (ln, line) in lines {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("forfeit=") {
                let (who, reason) = rest.split_once(' ').unwrap_or((rest, ""));
                let player = who.parse::<Player>().map_err(|m| err(ln + 1, m))?;
                forfeit = Some(Forfeit { player, reason: reason.to_string() });
            } else if let Some(rest) = line.strip_prefix("outcome=") {
                let mut parts = rest.split_whitespace();
                let value: Outcome = parts
                    .next()
                    .unwrap_or_default()
                    .parse()
                    .map_err(|m| err(ln + 1, m))?;
                let index = match parts.next() {
                    Some(m) => {
                        let k: usize = m
                            .strip_prefix("move=")
                            .and_then(|k| k.parse().ok())
                            .ok_or_else(|| err(ln + 1, format!("bad move field {m:?}")))?;
                        Some(k.checked_sub(1).ok_or_else(|| err(ln + 1, "move index is one-based".into()))?)
                    }
                    None => None,
                };
                recorded = Some(GameOutcome { value, winning_move_index: index });
            } else {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(err(ln + 1, format!("expected \"k u-v B|R\", got {line:?}")));
                }
                let k: usize = parts[0].parse().map_err(|_| err(ln + 1, "bad move number".into()))?;
                if k != moves.len() + 1 {
                    return Err(err(ln + 1, format!("move number {k} out of sequence")));
                }
                let (a, b) = parts[1]
                    .split_once('-')
                    .ok_or_else(|| err(ln + 1, format!("bad edge {:?}", parts[1])))?;
                let a: usize = a.parse().map_err(|_| err(ln + 1, "bad vertex".into()))?;
                let b: usize = b.parse().map_err(|_| err(ln + 1, "bad vertex".into()))?;
                let e = (a >= 1 && b >= 1)
                    .then(|| Edge::try_new(a - 1, b - 1))
                    .flatten()
                    .ok_or_else(|| err(ln + 1, format!("bad edge {:?}", parts[1])))?;
                let color = match parts[2] {
                    "B" => Color::Blue,
                    "R" => Color::Red,
                    other => return Err(err(ln + 1, format!("bad colour {other:?}"))),
                };
                moves.push((e, color));
            }
        }

        let mut state = BoardState::replay(config.clone(), &moves)?;
        if let Some(f) = &forfeit {
            state.force_outcome(f.player.opponent());
        }
        if let Some(rec) = recorded {
            if rec != state.outcome() {
                return Err(err(0, format!("replay gives {:?}, file records {:?}", state.outcome(), rec)));
            }
        }
        Ok(MatchTranscript { config, moves, outcome: state.outcome(), forfeit, diagnostics: Vec::new() })
    }

    pub fn target(&self) -> &Arc<TargetGraph> {
        &self.config.target
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::{Baseline, BaselineKind};

    #[test]
    fn k2_single_edge_target_wins_on_first_move() {
        let config = GameConfig::new(2, 1, 1, TargetGraph::path(2), Mode::Strong).unwrap();
        let mut a = Baseline::new(BaselineKind::UniformRandom { seed: 1 });
        let mut b = Baseline::new(BaselineKind::UniformRandom { seed: 2 });
        let t = play_match(&mut a, &mut b, config);
        assert_eq!(t.outcome, GameOutcome { value: Outcome::AliceWin, winning_move_index: Some(0) });
    }

    #[test]
    fn text_roundtrip_and_replay() {
        let config = GameConfig::new(6, 2, 1, TargetGraph::path(4), Mode::Strong).unwrap();
        let mut a = Baseline::new(BaselineKind::UniformRandom { seed: 7 });
        let mut b = Baseline::new(BaselineKind::GreedyDegreeBlocker);
        let t = play_match(&mut a, &mut b, config);
        let text = t.to_text();
        let back = MatchTranscript::from_text(&text).unwrap();
        assert_eq!(back.moves, t.moves);
        assert_eq!(back.outcome, t.outcome);
        assert_eq!(back.to_text(), text);
        t.replay().unwrap();
    }

    #[test]
    fn rejects_tampered_transcripts() {
        let text = "N=3 p=1 q=1 mode=strong\ntarget=3; 1-2 2-3\n1 1-2 B\n2 1-2 R\noutcome=Ongoing\n";
        assert!(matches!(MatchTranscript::from_text(text), Err(GameError::AlreadyColored(_))));
        let text = "N=3 p=1 q=1 mode=strong\ntarget=3; 1-2 2-3\n1 1-2 B\noutcome=AliceWin move=1\n";
        assert!(matches!(MatchTranscript::from_text(text), Err(GameError::Transcript { .. })));
        let text = "N=3 p=1 q=1 mode=strong\ntarget=3; 1-2 2-3\n2 1-2 B\n";
        assert!(matches!(MatchTranscript::from_text(text), Err(GameError::Transcript { .. })));
    }
}
