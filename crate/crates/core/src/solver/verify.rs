use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::game::{BoardState, Forfeit, GameConfig, MatchTranscript, Outcome, Player};
use crate::strategies::Strategy;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Maximum number of positions visited.
    pub budget: u64,
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: 500_000_000, threads: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifyOutcome {
    Verified { leaves: u64, nodes: u64 },
    /// A line on which the fixed side misses its goal.
    Counterexample(Box<MatchTranscript>),
}

impl VerifyOutcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, VerifyOutcome::Verified { .. })
    }
}

struct Walk {
    side: Player,
    nodes: AtomicU64,
    leaves: AtomicU64,
    budget: u64,
}

type Found = Result<Option<MatchTranscript>, SolverError>;

impl Walk {
    fn goal(&self, outcome: Outcome) -> bool {
        match self.side {
            Player::Alice => outcome == Outcome::AliceWin,
            Player::Bob => outcome != Outcome::AliceWin,
        }
    }

    fn transcript(state: &BoardState, forfeit: Option<Forfeit>) -> MatchTranscript {
        let mut outcome = state.outcome();
        if let Some(f) = &forfeit {
            outcome = crate::game::GameOutcome { value: f.player.opponent().win(), winning_move_index: None };
        }
        MatchTranscript {
            config: state.config().clone(),
            moves: state.move_log().to_vec(),
            outcome,
            forfeit,
            diagnostics: Vec::new(),
        }
    }

    fn tick(&self) -> Result<(), SolverError> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(SolverError::Unsolved { budget: self.budget });
        }
        Ok(())
    }

    /// Plays the fixed side forward until the opponent must move or the
    /// game ends. `Err(transcript)` is a failure of the fixed side.
    fn advance(&self, state: &mut BoardState, strat: &mut dyn Strategy) -> Result<Option<MatchTranscript>, SolverError> {
        while !state.is_over() && state.whose_turn().0 == self.side {
            self.tick()?;
            let e = match strat.choose(state) {
                Ok(e) => e,
                Err(err) => {
                    let f = Forfeit { player: self.side, reason: err.to_string() };
                    return Ok(Some(Self::transcript(state, Some(f))));
                }
            };
            if let Err(err) = state.play(e, self.side) {
                let f = Forfeit { player: self.side, reason: format!("illegal move {e}: {err}") };
                return Ok(Some(Self::transcript(state, Some(f))));
            }
        }
        if state.is_over() {
            self.leaves.fetch_add(1, Ordering::Relaxed);
            if !self.goal(state.outcome().value) {
                return Ok(Some(Self::transcript(state, None)));
            }
        }
        Ok(None)
    }

    fn children(&self, state: &BoardState, strat: &dyn Strategy) -> Vec<(BoardState, Box<dyn Strategy>)> {
        let opp = self.side.opponent();
        state
            .board()
            .uncolored_edges()
            .map(|e| {
                let mut next = state.clone();
                next.play(e, opp).expect("uncoloured edge on the opponent's turn");
                (next, strat.box_clone())
            })
            .collect()
    }

    fn dfs(&self, mut state: BoardState, mut strat: Box<dyn Strategy>) -> Found {
        if let Some(t) = self.advance(&mut state, strat.as_mut())? {
            return Ok(Some(t));
        }
        if state.is_over() {
            return Ok(None);
        }
        self.tick()?;
        for (next, s) in self.children(&state, strat.as_ref()) {
            if let Some(t) = self.dfs(next, s)? {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }
}

/// Exhaustively checks `fixed` for `side` against every opponent reply.
///
/// Alice's goal is an Alice win; Bob's goal is to prevent one. The fixed
/// strategy is cloned at every opponent branch so its memory follows the
/// line being explored.
pub fn verify_strategy(
    fixed: &dyn Strategy,
    side: Player,
    config: GameConfig,
    opts: &VerifyOptions,
) -> Result<VerifyOutcome, SolverError> {
    let walk = Walk { side, nodes: AtomicU64::new(0), leaves: AtomicU64::new(0), budget: opts.budget };
    let mut state = BoardState::from_config(config);
    let mut strat = fixed.box_clone();
    let found = if opts.threads <= 1 {
        walk.dfs(state, strat)?
    } else {
        match walk.advance(&mut state, strat.as_mut())? {
            Some(t) => Some(t),
            None if state.is_over() => None,
            None => {
                walk.tick()?;
                let children = walk.children(&state, strat.as_ref());
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.threads)
                    .build()
                    .map_err(|_| SolverError::Unsolved { budget: opts.budget })?;
                let results: Vec<Found> = pool.install(|| children.into_par_iter().map(|(st, s)| walk.dfs(st, s)).collect());
                let mut first = None;
                for r in results {
                    if let Some(t) = r? {
                        first = Some(t);
                        break;
                    }
                }
                first
            }
        }
    };
    Ok(match found {
        Some(t) => VerifyOutcome::Counterexample(Box::new(t)),
        None => VerifyOutcome::Verified {
            leaves: walk.leaves.load(Ordering::Relaxed),
            nodes: walk.nodes.load(Ordering::Relaxed),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Mode;
    use crate::graph::TargetGraph;
    use crate::strategies::{PathBuilder, TreeBuilder};

    #[test]
    fn path_builder_on_k5() {
        let config = GameConfig::new(5, 1, 1, TargetGraph::path(5), Mode::Strong).unwrap();
        let r = verify_strategy(&PathBuilder::new(), Player::Alice, config, &VerifyOptions::default()).unwrap();
        assert!(r.is_verified(), "{r:?}");
    }

    #[test]
    fn tree_builder_fails_on_small_board() {
        let config = GameConfig::new(3, 1, 1, TargetGraph::path(4), Mode::Strong).unwrap();
        let r = verify_strategy(&TreeBuilder::new(), Player::Alice, config, &VerifyOptions::default()).unwrap();
        let VerifyOutcome::Counterexample(t) = r else { panic!("expected a counterexample") };
        t.replay().unwrap();
        assert_ne!(t.outcome.value, Outcome::AliceWin);
    }

    #[test]
    fn parallel_matches_serial() {
        let config = GameConfig::new(6, 1, 1, TargetGraph::star(3), Mode::Strong).unwrap();
        let serial = verify_strategy(&TreeBuilder::new(), Player::Alice, config.clone(), &VerifyOptions::default()).unwrap();
        let par = verify_strategy(&TreeBuilder::new(), Player::Alice, config, &VerifyOptions { threads: 3, ..Default::default() })
            .unwrap();
        assert_eq!(serial, par);
    }
}
