//! Exact evaluation of small achievement games.
//!
//! Positions are pairs of edge masks on `K_N` with `N ≤ 8`. The search is
//! plain three-valued minimax (AliceWin > Draw > BobWin) with a transposition
//! table keyed by the canonical code of the colouring. The side to move is
//! a function of the colour counts, so the code alone identifies a node.

mod search;
mod verify;

pub use search::{
    achievement_number, cross_check_weak_vs_strong, solve, solve_position, AchievementReport, CrossCheck, SolveOptions,
    SolveResult, SOLVER_MAX_ORDER,
};
pub use verify::{verify_strategy, VerifyOptions, VerifyOutcome};
