//! Rules of the biased achievement game `(p,q; K_N, F)`.
//!
//! Alice colours `p` edges blue, then Bob colours `q` edges red, repeating.
//! Whose turn it is follows from the colour counts alone, see
//! [`turn_for`]. A win is checked after every single edge, so a copy
//! completed in the middle of a block ends the game at once. When fewer
//! uncoloured edges remain than the current block needs, the mover colours
//! all of them.
//!
//! In [`Mode::Weak`] only Alice can win by building `F`. If the board runs
//! out without a blue copy the result is reported as [`Outcome::BobWin`],
//! which in the weak game means Breaker succeeded.

mod engine;
mod transcript;

pub use engine::{turn_for, BoardState, GameConfig};
pub use transcript::{play_match, Forfeit, MatchTranscript};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::Color;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    Alice,
    Bob,
}

impl Player {
    pub fn color(self) -> Color {
        match self {
            Player::Alice => Color::Blue,
            Player::Bob => Color::Red,
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }

    pub fn of_color(color: Color) -> Player {
        match color {
            Color::Blue => Player::Alice,
            Color::Red => Player::Bob,
        }
    }

    pub fn win(self) -> Outcome {
        match self {
            Player::Alice => Outcome::AliceWin,
            Player::Bob => Outcome::BobWin,
        }
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "alice" | "maker" => Ok(Player::Alice),
            "bob" | "breaker" => Ok(Player::Bob),
            other => Err(format!("unknown side {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// First to complete `F` in their own colour wins; otherwise a draw.
    Strong,
    /// Maker-Breaker: Alice wins by completing blue `F`, otherwise Bob wins.
    Weak,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strong => "strong",
            Mode::Weak => "weak",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "strong" => Ok(Mode::Strong),
            "weak" => Ok(Mode::Weak),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    AliceWin,
    BobWin,
    Draw,
    Ongoing,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::AliceWin => "AliceWin",
            Outcome::BobWin => "BobWin",
            Outcome::Draw => "Draw",
            Outcome::Ongoing => "Ongoing",
        })
    }
}

impl FromStr for Outcome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "AliceWin" => Ok(Outcome::AliceWin),
            "BobWin" => Ok(Outcome::BobWin),
            "Draw" => Ok(Outcome::Draw),
            "Ongoing" => Ok(Outcome::Ongoing),
            other => Err(format!("unknown outcome {other:?}")),
        }
    }
}

/// Result of a game so far. `winning_move_index` is the zero-based log
/// position of the edge that completed the winning copy; it is `None` for
/// draws, board exhaustion in the weak game and forfeits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameOutcome {
    pub value: Outcome,
    pub winning_move_index: Option<usize>,
}

impl GameOutcome {
    pub const ONGOING: GameOutcome = GameOutcome { value: Outcome::Ongoing, winning_move_index: None };

    pub fn is_over(&self) -> bool {
        self.value != Outcome::Ongoing
    }
}
