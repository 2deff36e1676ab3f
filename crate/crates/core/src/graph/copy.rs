use serde::{Deserialize, Serialize};

use super::{bits, Color, ColoredBoard, TargetGraph};

/// Partial injective map from target vertices to board vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    map: Vec<Option<usize>>,
}

impl Embedding {
    pub fn empty(target_order: usize) -> Self {
        Embedding { map: vec![None; target_order] }
    }

    pub fn from_full(images: Vec<usize>) -> Self {
        Embedding { map: images.into_iter().map(Some).collect() }
    }

    #[inline]
    pub fn image(&self, t: usize) -> Option<usize> {
        self.map[t]
    }

    /// Maps `t` to `b`. Panics if `t` is already mapped or `b` is already used.
    pub fn assign(&mut self, t: usize, b: usize) {
        assert!(self.map[t].is_none(), "target vertex {t} already mapped");
        assert!(!self.uses(b), "board vertex {b} already used");
        self.map[t] = Some(b);
    }

    pub fn uses(&self, b: usize) -> bool {
        self.map.contains(&Some(b))
    }

    /// Bitset of board vertices in the image.
    pub fn image_mask(&self) -> u128 {
        self.map.iter().flatten().fold(0, |m, &b| m | 1 << b)
    }

    pub fn mapped_count(&self) -> usize {
        self.map.iter().flatten().count()
    }

    pub fn is_full(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.map
    }

    /// Every target edge between mapped vertices lands on a `color` edge.
    pub fn is_valid_for(&self, board: &ColoredBoard, target: &TargetGraph, color: Color) -> bool {
        target.edges().iter().all(|e| match (self.map[e.lo()], self.map[e.hi()]) {
            (Some(a), Some(b)) => a != b && board.color_at(a, b) == Some(color),
            _ => true,
        })
    }
}

/// Finds a copy of `target` inside the `color` class of `board`.
///
/// Stars (including `P_2`/`P_3`) use an exact max-degree test; everything
/// else is a degree-pruned backtracking search. The search visits target
/// vertices in a fixed connectivity-first order and board vertices in
/// increasing index, so the result is deterministic.
pub fn contains_copy(board: &ColoredBoard, target: &TargetGraph, color: Color) -> Option<Embedding> {
    let n = board.order();
    let k = target.vertex_count();
    if k > n || target.edge_count() > board.count(color) {
        return None;
    }
    if let Some(leaves) = target.star_leaves() {
        return star_copy(board, target, color, leaves);
    }

    let order = search_order(target);
    // back[i] lists the positions j < i adjacent to order[i] in the target
    let back: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &t)| (0..i).filter(|&j| target.has_edge(t, order[j])).collect())
        .collect();
    let need: Vec<usize> = order.iter().map(|&t| target.degree(t)).collect();
    let degree: Vec<usize> = (0..n).map(|v| board.degree(color, v)).collect();
    let adj: Vec<u128> = (0..n).map(|v| board.adjacency(color, v)).collect();

    let mut images = vec![0usize; k];
    let mut used: u128 = 0;
    if extend(0, &order, &back, &need, &degree, &adj, n, &mut images, &mut used) {
        let mut map = vec![0; k];
        for (i, &t) in order.iter().enumerate() {
            map[t] = images[i];
        }
        Some(Embedding::from_full(map))
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    back: &[Vec<usize>],
    need: &[usize],
    degree: &[usize],
    adj: &[u128],
    n: usize,
    images: &mut [usize],
    used: &mut u128,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let all: u128 = if n == 128 { u128::MAX } else { (1 << n) - 1 };
    let mut candidates = all & !*used;
    for &j in &back[depth] {
        candidates &= adj[images[j]];
    }
    for b in bits(candidates) {
        if degree[b] < need[depth] {
            continue;
        }
        images[depth] = b;
        *used |= 1 << b;
        if extend(depth + 1, order, back, need, degree, adj, n, images, used) {
            return true;
        }
        *used &= !(1 << b);
    }
    false
}

/// Highest-degree vertex first, then repeatedly the vertex with the most
/// already-placed neighbours (ties: higher degree, lower index).
fn search_order(target: &TargetGraph) -> Vec<usize> {
    let k = target.vertex_count();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&t| !placed[t])
            .max_by_key(|&t| {
                let links = order.iter().filter(|&&o| target.has_edge(t, o)).count();
                (links, target.degree(t), std::cmp::Reverse(t))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

fn star_copy(board: &ColoredBoard, target: &TargetGraph, color: Color, leaves: usize) -> Option<Embedding> {
    let center_t = (0..target.vertex_count()).find(|&t| target.degree(t) == leaves)?;
    let center_b = (0..board.order()).find(|&v| board.degree(color, v) >= leaves)?;
    let mut map = vec![0; target.vertex_count()];
    map[center_t] = center_b;
    let mut nbrs = bits(board.adjacency(color, center_b));
    for (t, slot) in map.iter_mut().enumerate() {
        if t != center_t {
            *slot = nbrs.next().expect("degree checked");
        }
    }
    Some(Embedding::from_full(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn board(n: usize, blue: &[(usize, usize)]) -> ColoredBoard {
        let blue: Vec<Edge> = blue.iter().map(|&(a, b)| Edge::new(a, b)).collect();
        ColoredBoard::from_edges(n, &blue, &[])
    }

    #[test]
    fn finds_exact_path() {
        let b = board(3, &[(0, 1), (1, 2)]);
        let emb = contains_copy(&b, &TargetGraph::path(3), Color::Blue).unwrap();
        assert!(emb.is_full());
        assert!(emb.is_valid_for(&b, &TargetGraph::path(3), Color::Blue));
    }

    #[test]
    fn matching_is_not_a_path() {
        let b = board(4, &[(0, 1), (2, 3)]);
        assert!(contains_copy(&b, &TargetGraph::path(3), Color::Blue).is_none());
        assert!(contains_copy(&b, &TargetGraph::path(3), Color::Red).is_none());
    }

    #[test]
    fn star_and_cycle() {
        let b = board(6, &[(5, 0), (5, 1), (5, 2), (0, 1), (1, 2), (2, 3), (3, 0)]);
        let emb = contains_copy(&b, &TargetGraph::star(3), Color::Blue).unwrap();
        assert_eq!(emb.image(0), Some(0));
        assert!(contains_copy(&b, &TargetGraph::star(4), Color::Blue).is_none());
        let c4 = TargetGraph::cycle(4);
        let emb = contains_copy(&b, &c4, Color::Blue).unwrap();
        assert!(emb.is_valid_for(&b, &c4, Color::Blue));
        assert!(contains_copy(&b, &TargetGraph::cycle(5), Color::Blue).is_some());
        assert!(contains_copy(&b, &TargetGraph::complete(4), Color::Blue).is_none());
    }

    #[test]
    fn embedding_bookkeeping() {
        let mut e = Embedding::empty(3);
        e.assign(0, 4);
        e.assign(2, 1);
        assert_eq!(e.mapped_count(), 2);
        assert_eq!(e.image_mask(), 0b10010);
        assert!(!e.is_full());
    }
}
