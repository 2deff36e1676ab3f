use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Strategy;
use crate::error::StrategyError;
use crate::game::BoardState;
use crate::graph::{Color, ColoredBoard, Edge};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaselineKind {
    /// First uncoloured edge of a seeded permutation of all edges.
    UniformRandom { seed: u64 },
    /// Lowest uncoloured edge at the opponent's highest-degree vertex.
    GreedyDegreeBlocker,
    /// Edge that makes the largest own-colour component.
    GreedyExtender,
    /// Lowest uncoloured edge at the own highest-degree vertex. With a
    /// seed, ties among vertices and partners follow a seeded order instead.
    GreedyStar { tie_seed: Option<u64> },
}

#[derive(Clone, Debug)]
pub struct Baseline {
    kind: BaselineKind,
    order: Vec<usize>,
}

impl Baseline {
    pub fn new(kind: BaselineKind) -> Self {
        Baseline { kind, order: Vec::new() }
    }

    pub fn kind(&self) -> BaselineKind {
        self.kind
    }
}

impl Strategy for Baseline {
    fn name(&self) -> &'static str {
        match self.kind {
            BaselineKind::UniformRandom { .. } => "random",
            BaselineKind::GreedyDegreeBlocker => "greedy-blocker",
            BaselineKind::GreedyExtender => "greedy-extender",
            BaselineKind::GreedyStar { .. } => "greedy-star",
        }
    }

    fn choose(&mut self, state: &BoardState) -> Result<Edge, StrategyError> {
        let board = state.board();
        if board.uncolored_count() == 0 {
            return Err(StrategyError::NoMove);
        }
        let own = state.whose_turn().0.color();
        let e = match self.kind {
            BaselineKind::UniformRandom { seed } => {
                if self.order.len() != board.edge_total() {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    self.order = (0..board.edge_total()).collect();
                    self.order.shuffle(&mut rng);
                }
                let i = self.order.iter().copied().find(|&i| board.colors()[i].is_none());
                i.map(Edge::from_index)
            }
            BaselineKind::GreedyDegreeBlocker => at_max_degree(board, own.opposite()),
            BaselineKind::GreedyStar { tie_seed: None } => at_max_degree(board, own),
            BaselineKind::GreedyStar { tie_seed: Some(seed) } => {
                if self.order.len() != board.order() {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    self.order = (0..board.order()).collect();
                    self.order.shuffle(&mut rng);
                }
                seeded_star(board, own, &self.order)
            }
            BaselineKind::GreedyExtender => extender(board, own),
        };
        e.ok_or(StrategyError::NoMove)
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

fn at_max_degree(board: &ColoredBoard, color: Color) -> Option<Edge> {
    let v = (0..board.order())
        .filter(|&v| board.uncolored_adjacency(v) != 0)
        .max_by_key(|&v| (board.degree(color, v), std::cmp::Reverse(v)))?;
    board.lowest_uncolored_at(v, u128::MAX)
}

/// `rank` lists vertices in preference order.
fn seeded_star(board: &ColoredBoard, color: Color, rank: &[usize]) -> Option<Edge> {
    let v = rank
        .iter()
        .copied()
        .filter(|&v| board.uncolored_adjacency(v) != 0)
        .fold(None, |best: Option<usize>, v| match best {
            Some(b) if board.degree(color, b) >= board.degree(color, v) => Some(b),
            _ => Some(v),
        })?;
    let free = board.uncolored_adjacency(v);
    rank.iter().find(|&&w| free >> w & 1 == 1).map(|&w| Edge::new(v, w))
}

fn extender(board: &ColoredBoard, color: Color) -> Option<Edge> {
    let n = board.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in board.edges_of(color) {
        let (a, b) = (find(&mut parent, e.lo()), find(&mut parent, e.hi()));
        parent[a] = b;
    }
    let mut size = vec![0usize; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        size[r] += 1;
    }
    let mut best: Option<(usize, Edge)> = None;
    for e in board.uncolored_edges() {
        let (a, b) = (find(&mut parent, e.lo()), find(&mut parent, e.hi()));
        let merged = if a == b { size[a] } else { size[a] + size[b] };
        if best.is_none_or(|(s, _)| merged > s) {
            best = Some((merged, e));
        }
    }
    best.map(|(_, e)| e)
}
