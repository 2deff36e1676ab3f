//! Move suppliers. Each strategy owns its private memory and is meant for a
//! single match; clone it to branch.

mod baseline;
mod path_builder;
mod star_blocker;
mod tree_builder;

pub use baseline::{Baseline, BaselineKind};
pub use path_builder::PathBuilder;
pub use star_blocker::{
    audit_star_blocker, choose_alpha, compute_n0, potential_phi, potential_sum, star_blocker_moves, BlockPlan,
    BlockerParams, StarAudit, StarBlocker, ALPHA_CAP, ALPHA_GRID_BITS, ALPHA_MARGIN,
};
pub use tree_builder::TreeBuilder;

use crate::error::StrategyError;
use crate::game::BoardState;
use crate::graph::Edge;

pub trait Strategy: Send {
    fn name(&self) -> &'static str;

    /// Next edge for the side to move in `state`.
    fn choose(&mut self, state: &BoardState) -> Result<Edge, StrategyError>;

    fn box_clone(&self) -> Box<dyn Strategy>;
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

/// Names accepted by [`by_name`].
pub const STRATEGY_NAMES: &[&str] = &[
    "tree-builder",
    "path-builder",
    "star-blocker",
    "random",
    "greedy-blocker",
    "greedy-extender",
    "greedy-star",
];

/// Builds a named strategy. `eps` and `n` only matter for the star blocker,
/// `seed` only for the random player.
pub fn by_name(name: &str, p: usize, q: usize, eps: f64, n: usize, seed: u64) -> Result<Box<dyn Strategy>, StrategyError> {
    Ok(match name {
        "tree-builder" => Box::new(TreeBuilder::new()),
        "path-builder" => Box::new(PathBuilder::new()),
        "star-blocker" => Box::new(StarBlocker::new(BlockerParams::new(p, q, eps, n)?)),
        "random" => Box::new(Baseline::new(BaselineKind::UniformRandom { seed })),
        "greedy-blocker" => Box::new(Baseline::new(BaselineKind::GreedyDegreeBlocker)),
        "greedy-extender" => Box::new(Baseline::new(BaselineKind::GreedyExtender)),
        "greedy-star" => Box::new(Baseline::new(BaselineKind::GreedyStar { tie_seed: None })),
        other => {
            return Err(StrategyError::Unsupported {
                strategy: "by_name",
                reason: format!("unknown strategy {other:?}; expected one of {}", STRATEGY_NAMES.join(", ")),
            })
        }
    })
}
