//! Biased Ramsey achievement games on complete boards.
//!
//! Two players colour the edges of `K_N`: Alice colours `p` edges blue, then
//! Bob colours `q` edges red, and so on. In the strong game whoever first
//! completes a copy of the target graph `F` in their own colour wins; in the
//! weak (Maker-Breaker) game only Alice can win by building `F` and Bob wins
//! by preventing it until the board is exhausted.
//!
//! The crate provides
//!
//! * [`graph`]: target graphs, colored boards, copy detection and a
//!   canonical form for edge-3-colored complete graphs;
//! * [`game`]: turn structure, move application and match transcripts;
//! * [`strategies`]: the tree builder, the potential-based star blocker, the
//!   path builder and a pool of baseline players;
//! * [`solver`]: exact minimax with a canonical transposition table,
//!   exhaustive strategy verification and achievement numbers;
//! * [`bounds`]: closed-form bounds and the discrepancy-game construction;
//! * [`acceptance`]: the end-to-end reproduction checks used by the CLI and
//!   the `acceptance` test target.

pub mod acceptance;
pub mod bounds;
pub mod error;
pub mod game;
pub mod graph;
pub mod reference;
pub mod solver;
pub mod strategies;

pub use error::{BoundsError, GameError, GraphError, SolverError, StrategyError};
pub use game::{BoardState, GameConfig, GameOutcome, MatchTranscript, Mode, Outcome, Player};
pub use graph::{Color, ColoredBoard, Edge, Embedding, TargetGraph};
