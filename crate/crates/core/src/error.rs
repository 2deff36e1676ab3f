use thiserror::Error;

use crate::game::Player;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph text: {0}")]
    Malformed(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("order {order} exceeds the cap of {cap}")]
    TooLarge { order: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("Alice's block p={p} must be at least Bob's q={q}")]
    BiasOrder { p: usize, q: usize },
    #[error("block sizes must be positive")]
    ZeroBlock,
    #[error("board order {0} is below 2")]
    BoardTooSmall(usize),
    #[error("board order {order} exceeds the cap of {cap}")]
    BoardTooLarge { order: usize, cap: usize },
    #[error("edge {0} is not on the board")]
    OffBoard(String),
    #[error("edge {0} is already colored")]
    AlreadyColored(String),
    #[error("{0:?} moved out of turn")]
    OutOfTurn(Player),
    #[error("game is already over")]
    GameOver,
    #[error("transcript line {line}: {message}")]
    Transcript { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StrategyError {
    #[error("no legal move available")]
    NoMove,
    #[error("{strategy} cannot continue: {reason}")]
    Stuck { strategy: &'static str, reason: String },
    #[error("{strategy} invariant violated: {reason}")]
    InvariantViolated { strategy: &'static str, reason: String },
    #[error("{strategy} does not support this configuration: {reason}")]
    Unsupported { strategy: &'static str, reason: String },
    #[error("no alpha > 1 with f(alpha) < 0 found below {cap} (p={p}, q={q}, eps={eps})")]
    NoAlpha { p: usize, q: usize, eps: f64, cap: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("search budget of {budget} nodes exhausted; position unsolved")]
    Unsolved { budget: u64 },
    #[error("board order {order} exceeds the solver cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("invalid bound input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}
