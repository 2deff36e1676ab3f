use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GameOutcome, Mode, Outcome, Player};
use crate::error::GameError;
use crate::graph::{contains_copy, edge_count, Color, ColoredBoard, Edge, TargetGraph, MAX_BOARD_ORDER};

/// Fixed parameters of one game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub order: usize,
    pub p: usize,
    pub q: usize,
    pub mode: Mode,
    pub target: Arc<TargetGraph>,
}

impl GameConfig {
    pub fn new(order: usize, p: usize, q: usize, target: TargetGraph, mode: Mode) -> Result<Self, GameError> {
        if p == 0 || q == 0 {
            return Err(GameError::ZeroBlock);
        }
        if p < q {
            return Err(GameError::BiasOrder { p, q });
        }
        if order < 2 {
            return Err(GameError::BoardTooSmall(order));
        }
        if order > MAX_BOARD_ORDER {
            return Err(GameError::BoardTooLarge { order, cap: MAX_BOARD_ORDER });
        }
        Ok(GameConfig { order, p, q, mode, target: Arc::new(target) })
    }

    pub fn edge_total(&self) -> usize {
        edge_count(self.order)
    }
}

/// Mover and edges left in the mover's block, from colour counts alone.
///
/// Bob's completed blocks fix how many Alice blocks are complete; anything
/// beyond that is Alice's open block. The block is truncated to the
/// number of uncoloured edges left.
pub fn turn_for(blue: usize, red: usize, p: usize, q: usize, uncolored: usize) -> (Player, usize) {
    let bob_blocks = red / q;
    let bob_partial = red % q;
    let (player, left) = if bob_partial > 0 {
        (Player::Bob, q - bob_partial)
    } else {
        let alice_in_block = blue.saturating_sub(bob_blocks * p);
        if alice_in_block < p {
            (Player::Alice, p - alice_in_block)
        } else {
            (Player::Bob, q)
        }
    };
    (player, left.min(uncolored))
}

/// A position: configuration, coloured board and the move log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoardState {
    config: GameConfig,
    board: ColoredBoard,
    log: Vec<(Edge, Color)>,
    outcome: GameOutcome,
}

impl BoardState {
    /// Empty `K_N` with Alice to move.
    pub fn new_game(order: usize, p: usize, q: usize, target: TargetGraph, mode: Mode) -> Result<Self, GameError> {
        Ok(Self::from_config(GameConfig::new(order, p, q, target, mode)?))
    }

    pub fn from_config(config: GameConfig) -> Self {
        let board = ColoredBoard::empty(config.order);
        BoardState { config, board, log: Vec::new(), outcome: GameOutcome::ONGOING }
    }

    /// Replays `moves` from the empty board, checking legality of each.
    pub fn replay(config: GameConfig, moves: &[(Edge, Color)]) -> Result<Self, GameError> {
        let mut state = Self::from_config(config);
        for &(e, c) in moves {
            state.play(e, Player::of_color(c))?;
        }
        Ok(state)
    }

    #[inline]
    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    #[inline]
    pub fn board(&self) -> &ColoredBoard {
        &self.board
    }

    #[inline]
    pub fn target(&self) -> &TargetGraph {
        &self.config.target
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.config.order
    }

    #[inline]
    pub fn mode(&self) -> Mode {
        self.config.mode
    }

    pub fn move_log(&self) -> &[(Edge, Color)] {
        &self.log
    }

    #[inline]
    pub fn outcome(&self) -> GameOutcome {
        self.outcome
    }

    #[inline]
    pub fn is_over(&self) -> bool {
        self.outcome.is_over()
    }

    /// `(player to move, edges left in that player's block)`.
    pub fn whose_turn(&self) -> (Player, usize) {
        turn_for(
            self.board.count(Color::Blue),
            self.board.count(Color::Red),
            self.config.p,
            self.config.q,
            self.board.uncolored_count(),
        )
    }

    /// Value-producing move: returns the successor state and its outcome.
    pub fn apply_edge(&self, e: Edge, by: Player) -> Result<(BoardState, GameOutcome), GameError> {
        let mut next = self.clone();
        let outcome = next.play(e, by)?;
        Ok((next, outcome))
    }

    /// In-place move with full legality checking.
    pub fn play(&mut self, e: Edge, by: Player) -> Result<GameOutcome, GameError> {
        if self.is_over() {
            return Err(GameError::GameOver);
        }
        if !self.board.contains_edge(e) {
            return Err(GameError::OffBoard(e.to_string()));
        }
        if !self.board.is_uncolored(e) {
            return Err(GameError::AlreadyColored(e.to_string()));
        }
        let (mover, _) = self.whose_turn();
        if mover != by {
            return Err(GameError::OutOfTurn(by));
        }
        let color = by.color();
        self.board.set(e, Some(color));
        self.log.push((e, color));

        let may_win = by == Player::Alice || self.config.mode == Mode::Strong;
        if may_win && contains_copy(&self.board, &self.config.target, color).is_some() {
            self.outcome = GameOutcome { value: by.win(), winning_move_index: Some(self.log.len() - 1) };
        } else if self.board.uncolored_count() == 0 {
            let value = match self.config.mode {
                Mode::Strong => Outcome::Draw,
                Mode::Weak => Outcome::BobWin,
            };
            self.outcome = GameOutcome { value, winning_move_index: None };
        }
        Ok(self.outcome)
    }

    /// Ends the game in favour of `winner` without a move (forfeits).
    pub(crate) fn force_outcome(&mut self, winner: Player) {
        self.outcome = GameOutcome { value: winner.win(), winning_move_index: None };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> TargetGraph {
        TargetGraph::path(n)
    }

    #[test]
    fn new_game_validation() {
        let s = BoardState::new_game(5, 1, 1, p(4), Mode::Strong).unwrap();
        assert_eq!(s.board().uncolored_count(), 10);
        assert_eq!(s.whose_turn(), (Player::Alice, 1));
        let s = BoardState::new_game(4, 2, 1, p(3), Mode::Strong).unwrap();
        assert_eq!(s.whose_turn(), (Player::Alice, 2));
        assert_eq!(
            BoardState::new_game(3, 1, 2, p(3), Mode::Strong).unwrap_err(),
            GameError::BiasOrder { p: 1, q: 2 }
        );
        assert_eq!(BoardState::new_game(1, 1, 1, p(2), Mode::Strong).unwrap_err(), GameError::BoardTooSmall(1));
    }

    #[test]
    fn turn_accounting_examples() {
        assert_eq!(turn_for(0, 0, 2, 1, 10), (Player::Alice, 2));
        assert_eq!(turn_for(2, 0, 2, 1, 10), (Player::Bob, 1));
        assert_eq!(turn_for(3, 1, 2, 1, 10), (Player::Alice, 1));
        assert_eq!(turn_for(3, 1, 3, 2, 10), (Player::Bob, 1));
        // truncated final block
        assert_eq!(turn_for(2, 0, 2, 2, 1), (Player::Bob, 1));
    }

    #[test]
    fn completing_path_wins_immediately() {
        let mut s = BoardState::new_game(5, 1, 1, p(4), Mode::Strong).unwrap();
        s.play(Edge::new(0, 1), Player::Alice).unwrap();
        s.play(Edge::new(3, 4), Player::Bob).unwrap();
        s.play(Edge::new(1, 2), Player::Alice).unwrap();
        s.play(Edge::new(0, 4), Player::Bob).unwrap();
        let out = s.play(Edge::new(2, 3), Player::Alice).unwrap();
        assert_eq!(out, GameOutcome { value: Outcome::AliceWin, winning_move_index: Some(4) });
        assert_eq!(s.play(Edge::new(0, 2), Player::Bob), Err(GameError::GameOver));
    }

    #[test]
    fn red_p3_wins_strong_game_on_k3() {
        let mut s = BoardState::new_game(3, 1, 1, p(3), Mode::Strong).unwrap();
        s.play(Edge::new(0, 1), Player::Alice).unwrap();
        s.play(Edge::new(1, 2), Player::Bob).unwrap();
        // Alice's second edge completes blue P3 first
        let out = s.play(Edge::new(0, 2), Player::Alice).unwrap();
        assert_eq!(out.value, Outcome::AliceWin);

        // with p=2 Bob never gets two edges, so check red completion directly
        let mut s = BoardState::new_game(4, 1, 1, p(3), Mode::Strong).unwrap();
        s.play(Edge::new(0, 1), Player::Alice).unwrap();
        s.play(Edge::new(1, 2), Player::Bob).unwrap();
        s.play(Edge::new(2, 3), Player::Alice).unwrap();
        let out = s.play(Edge::new(0, 2), Player::Bob).unwrap();
        assert_eq!(out, GameOutcome { value: Outcome::BobWin, winning_move_index: Some(3) });
    }

    #[test]
    fn weak_mode_ignores_red_copies() {
        let mut s = BoardState::new_game(4, 1, 1, p(3), Mode::Weak).unwrap();
        s.play(Edge::new(0, 1), Player::Alice).unwrap();
        s.play(Edge::new(1, 2), Player::Bob).unwrap();
        s.play(Edge::new(2, 3), Player::Alice).unwrap();
        let out = s.play(Edge::new(0, 2), Player::Bob).unwrap();
        assert_eq!(out.value, Outcome::Ongoing);
    }

    #[test]
    fn illegal_moves() {
        let mut s = BoardState::new_game(4, 1, 1, p(3), Mode::Strong).unwrap();
        assert_eq!(s.play(Edge::new(0, 1), Player::Bob), Err(GameError::OutOfTurn(Player::Bob)));
        s.play(Edge::new(0, 1), Player::Alice).unwrap();
        assert!(matches!(s.play(Edge::new(0, 1), Player::Bob), Err(GameError::AlreadyColored(_))));
        assert!(matches!(s.play(Edge::new(0, 5), Player::Bob), Err(GameError::OffBoard(_))));
        let (next, out) = s.apply_edge(Edge::new(2, 3), Player::Bob).unwrap();
        assert_eq!(out.value, Outcome::Ongoing);
        assert_eq!(next.move_log().len(), 2);
        assert_eq!(s.move_log().len(), 1);
    }

    #[test]
    fn exhausted_board_draws_or_breaker_wins() {
        // K2 with target P3: one edge, nobody can win
        let mut s = BoardState::new_game(2, 1, 1, p(3), Mode::Strong).unwrap();
        assert_eq!(s.play(Edge::new(0, 1), Player::Alice).unwrap().value, Outcome::Draw);
        let mut s = BoardState::new_game(2, 1, 1, p(3), Mode::Weak).unwrap();
        assert_eq!(s.play(Edge::new(0, 1), Player::Alice).unwrap().value, Outcome::BobWin);
        let mut s = BoardState::new_game(2, 1, 1, p(2), Mode::Strong).unwrap();
        assert_eq!(s.play(Edge::new(0, 1), Player::Alice).unwrap().value, Outcome::AliceWin);
    }
}
