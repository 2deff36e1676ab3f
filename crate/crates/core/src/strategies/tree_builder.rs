use super::Strategy;
use crate::error::StrategyError;
use crate::game::{BoardState, Player};
use crate::graph::{Color, DfsOrder, Edge, Embedding};

/// Alice grows the target tree vertex by vertex along its DFS order.
///
/// The first edge is the lowest uncoloured one and carries `v_0 v_1`. After
/// that the next DFS vertex is attached to the image of its parent by the
/// lowest uncoloured edge leaving the current image.
#[derive(Clone, Debug, Default)]
pub struct TreeBuilder {
    dfs: Option<DfsOrder>,
    embedding: Option<Embedding>,
    placed: usize,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Current partial embedding of the target tree.
    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    /// Number of DFS vertices embedded so far.
    pub fn embedded(&self) -> usize {
        self.placed
    }
}

impl Strategy for TreeBuilder {
    fn name(&self) -> &'static str {
        "tree-builder"
    }

    fn choose(&mut self, state: &BoardState) -> Result<Edge, StrategyError> {
        let stuck = |reason: String| StrategyError::Stuck { strategy: "tree-builder", reason };
        if state.whose_turn().0 != Player::Alice {
            return Err(StrategyError::Unsupported { strategy: "tree-builder", reason: "plays Alice only".into() });
        }
        let target = state.target();
        if self.dfs.is_none() {
            self.dfs = Some(target.dfs_order().map_err(|_| StrategyError::Unsupported {
                strategy: "tree-builder",
                reason: "target is not a tree".into(),
            })?);
        }
        let dfs = self.dfs.as_ref().unwrap();
        let board = state.board();
        let blue = board.count(Color::Blue);
        if blue + 1 != self.placed.max(1) {
            return Err(StrategyError::InvariantViolated {
                strategy: "tree-builder",
                reason: format!("{blue} blue edges but {} tree vertices embedded", self.placed),
            });
        }

        let Some(emb) = self.embedding.as_mut() else {
            let e = board.uncolored_edges().next().ok_or(StrategyError::NoMove)?;
            let mut emb = Embedding::empty(target.vertex_count());
            emb.assign(dfs.order[0], e.lo());
            emb.assign(dfs.order[1], e.hi());
            self.embedding = Some(emb);
            self.placed = 2;
            return Ok(e);
        };

        let i = self.placed;
        if i >= dfs.order.len() {
            return Err(stuck("tree already complete".into()));
        }
        let t = dfs.order[i];
        let parent = dfs.parent[i].expect("non-root DFS vertex has a parent");
        let u = emb.image(parent).expect("parent is embedded before its child");
        let outside = !emb.image_mask();
        let e = board
            .lowest_uncolored_at(u, outside)
            .ok_or_else(|| stuck(format!("no uncoloured edge leaves the embedding at vertex {}", u + 1)))?;
        emb.assign(t, e.other(u).unwrap());
        self.placed += 1;
        Ok(e)
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Mode;
    use crate::graph::TargetGraph;

    #[test]
    fn first_move_is_lowest_edge() {
        let st = BoardState::new_game(4, 1, 1, TargetGraph::path(3), Mode::Strong).unwrap();
        assert_eq!(TreeBuilder::new().choose(&st).unwrap(), Edge::new(0, 1));
    }

    #[test]
    fn star_leaf_avoids_red() {
        let mut st = BoardState::new_game(5, 1, 1, TargetGraph::star(3), Mode::Strong).unwrap();
        let mut s = TreeBuilder::new();
        let e = s.choose(&st).unwrap();
        st.play(e, Player::Alice).unwrap();
        st.play(Edge::new(0, 2), Player::Bob).unwrap();
        assert_eq!(s.choose(&st).unwrap(), Edge::new(0, 3));
    }
}
