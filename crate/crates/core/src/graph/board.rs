use serde::{Deserialize, Serialize};

use super::edge::{edge_count, edge_endpoints, Edge, MAX_BOARD_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Blue => 'B',
            Color::Red => 'R',
        }
    }
}

/// Partial blue/red coloring of the edges of `K_N`.
///
/// Keeps per-color adjacency bitsets alongside the colex-indexed color
/// array so degree and neighbourhood queries are O(1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredBoard {
    order: usize,
    colors: Vec<Option<Color>>,
    blue_adj: Vec<u128>,
    red_adj: Vec<u128>,
    blue_count: usize,
    red_count: usize,
}

impl ColoredBoard {
    /// Uncolored `K_order`. Panics above [`MAX_BOARD_ORDER`].
    pub fn empty(order: usize) -> Self {
        assert!(order <= MAX_BOARD_ORDER, "board order {order} above cap");
        ColoredBoard {
            order,
            colors: vec![None; edge_count(order)],
            blue_adj: vec![0; order],
            red_adj: vec![0; order],
            blue_count: 0,
            red_count: 0,
        }
    }

    /// Board with the given blue and red edges (later entries win on overlap).
    pub fn from_edges(order: usize, blue: &[Edge], red: &[Edge]) -> Self {
        let mut board = Self::empty(order);
        for &e in blue {
            board.set(e, Some(Color::Blue));
        }
        for &e in red {
            board.set(e, Some(Color::Red));
        }
        board
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn edge_total(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn contains_edge(&self, e: Edge) -> bool {
        e.hi() < self.order
    }

    #[inline]
    pub fn color(&self, e: Edge) -> Option<Color> {
        self.colors[e.index()]
    }

    #[inline]
    pub fn color_at(&self, a: usize, b: usize) -> Option<Color> {
        self.color(Edge::new(a, b))
    }

    #[inline]
    pub fn is_uncolored(&self, e: Edge) -> bool {
        self.colors[e.index()].is_none()
    }

    /// Overwrites the color of `e`, keeping counters consistent.
    pub fn set(&mut self, e: Edge, color: Option<Color>) {
        let (u, v) = e.endpoints();
        match self.colors[e.index()] {
            Some(Color::Blue) => {
                self.blue_count -= 1;
                self.blue_adj[u] &= !(1 << v);
                self.blue_adj[v] &= !(1 << u);
            }
            Some(Color::Red) => {
                self.red_count -= 1;
                self.red_adj[u] &= !(1 << v);
                self.red_adj[v] &= !(1 << u);
            }
            None => {}
        }
        match color {
            Some(Color::Blue) => {
                self.blue_count += 1;
                self.blue_adj[u] |= 1 << v;
                self.blue_adj[v] |= 1 << u;
            }
            Some(Color::Red) => {
                self.red_count += 1;
                self.red_adj[u] |= 1 << v;
                self.red_adj[v] |= 1 << u;
            }
            None => {}
        }
        self.colors[e.index()] = color;
    }

    /// Value-producing variant of [`ColoredBoard::set`].
    pub fn with(&self, e: Edge, color: Color) -> Self {
        let mut next = self.clone();
        next.set(e, Some(color));
        next
    }

    #[inline]
    pub fn count(&self, color: Color) -> usize {
        match color {
            Color::Blue => self.blue_count,
            Color::Red => self.red_count,
        }
    }

    #[inline]
    pub fn uncolored_count(&self) -> usize {
        self.colors.len() - self.blue_count - self.red_count
    }

    #[inline]
    pub fn adjacency(&self, color: Color, v: usize) -> u128 {
        match color {
            Color::Blue => self.blue_adj[v],
            Color::Red => self.red_adj[v],
        }
    }

    #[inline]
    pub fn degree(&self, color: Color, v: usize) -> usize {
        self.adjacency(color, v).count_ones() as usize
    }

    /// Vertices joined to `v` by an uncolored edge.
    #[inline]
    pub fn uncolored_adjacency(&self, v: usize) -> u128 {
        let all = if self.order == 128 { u128::MAX } else { (1u128 << self.order) - 1 };
        all & !(1 << v) & !self.blue_adj[v] & !self.red_adj[v]
    }

    #[inline]
    pub fn is_saturated(&self, v: usize) -> bool {
        self.degree(Color::Blue, v) + self.degree(Color::Red, v) == self.order - 1
    }

    pub fn edges_of(&self, color: Color) -> impl Iterator<Item = Edge> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter(move |(_, c)| **c == Some(color))
            .map(|(i, _)| Edge::from_index(i))
    }

    /// Uncolored edges in increasing index order.
    pub fn uncolored_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| Edge::from_index(i))
    }

    /// Lowest-index uncolored edge at `v`, optionally restricted to
    /// partners in `allowed`.
    pub fn lowest_uncolored_at(&self, v: usize, allowed: u128) -> Option<Edge> {
        let partners = self.uncolored_adjacency(v) & allowed;
        // colex index of (v, w) grows with w on both sides of v
        (partners != 0).then(|| Edge::new(v, partners.trailing_zeros() as usize))
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    /// Board after relabelling vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order);
        let mut out = Self::empty(self.order);
        for (i, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                let (u, v) = edge_endpoints(i);
                out.set(Edge::new(perm[u], perm[v]), Some(*c));
            }
        }
        out
    }

    /// Upper-triangle character grid: `B`, `R` or `.` per pair.
    pub fn grid(&self) -> String {
        let mut out = String::new();
        out.push_str("   ");
        for j in 0..self.order {
            out.push_str(&format!("{:>3}", j + 1));
        }
        out.push('\n');
        for i in 0..self.order {
            out.push_str(&format!("{:>3}", i + 1));
            for j in 0..self.order {
                let cell = if j <= i {
                    ' '
                } else {
                    match self.color_at(i, j) {
                        Some(c) => c.letter(),
                        None => '.',
                    }
                };
                out.push_str(&format!("{cell:>3}"));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_tracks_degrees() {
        let mut b = ColoredBoard::empty(4);
        b.set(Edge::new(0, 1), Some(Color::Blue));
        b.set(Edge::new(1, 2), Some(Color::Red));
        assert_eq!(b.degree(Color::Blue, 1), 1);
        assert_eq!(b.degree(Color::Red, 1), 1);
        assert_eq!(b.uncolored_count(), 4);
        b.set(Edge::new(1, 2), Some(Color::Blue));
        assert_eq!(b.count(Color::Red), 0);
        assert_eq!(b.count(Color::Blue), 2);
        assert_eq!(b.uncolored_adjacency(1), 0b1000);
        b.set(Edge::new(1, 3), Some(Color::Red));
        assert!(b.is_saturated(1));
    }

    #[test]
    fn lowest_uncolored_prefers_small_partner() {
        let mut b = ColoredBoard::empty(5);
        b.set(Edge::new(0, 2), Some(Color::Red));
        assert_eq!(b.lowest_uncolored_at(0, !0b10), Some(Edge::new(0, 3)));
        assert_eq!(b.lowest_uncolored_at(3, u128::MAX), Some(Edge::new(0, 3)));
    }

    #[test]
    fn grid_shape() {
        let b = ColoredBoard::from_edges(3, &[Edge::new(0, 1)], &[Edge::new(1, 2)]);
        let g = b.grid();
        assert!(g.contains("  1     B  ."));
        assert!(g.contains("  2        R"));
    }
}
