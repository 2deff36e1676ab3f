use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest board order supported by [`ColoredBoard`](super::ColoredBoard).
///
/// Adjacency rows are stored as `u128` bitsets.
pub const MAX_BOARD_ORDER: usize = 128;

/// Unordered vertex pair `{u, v}` with `u < v`, zero-based.
///
/// Edges are indexed in colexicographic order: `(u, v) -> v(v-1)/2 + u`.
/// Under this order the edges of `K_N` are exactly the first `C(N,2)`
/// indices for every `N`, which keeps move logs stable across board sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    u: u8,
    v: u8,
}

impl Edge {
    /// Builds the edge joining `a` and `b` in either order.
    ///
    /// Panics on a self-loop or an endpoint beyond [`MAX_BOARD_ORDER`].
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "self-loop {a}-{a}");
        assert!(a.max(b) < MAX_BOARD_ORDER, "vertex out of range");
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Edge { u: u as u8, v: v as u8 }
    }

    /// Fallible constructor for user input.
    pub fn try_new(a: usize, b: usize) -> Option<Self> {
        (a != b && a.max(b) < MAX_BOARD_ORDER).then(|| Edge::new(a, b))
    }

    #[inline]
    pub fn lo(self) -> usize {
        self.u as usize
    }

    #[inline]
    pub fn hi(self) -> usize {
        self.v as usize
    }

    #[inline]
    pub fn endpoints(self) -> (usize, usize) {
        (self.lo(), self.hi())
    }

    #[inline]
    pub fn index(self) -> usize {
        edge_index(self.lo(), self.hi())
    }

    pub fn from_index(index: usize) -> Self {
        let (u, v) = edge_endpoints(index);
        Edge::new(u, v)
    }

    #[inline]
    pub fn touches(self, x: usize) -> bool {
        self.lo() == x || self.hi() == x
    }

    /// The endpoint other than `x`, if `x` is an endpoint.
    pub fn other(self, x: usize) -> Option<usize> {
        if self.lo() == x {
            Some(self.hi())
        } else if self.hi() == x {
            Some(self.lo())
        } else {
            None
        }
    }
}

/// One-based `u-v`, the notation used by every text format.
impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo() + 1, self.hi() + 1)
    }
}

#[inline]
pub fn edge_count(order: usize) -> usize {
    order * order.saturating_sub(1) / 2
}

/// Colex rank of `{u, v}`; argument order does not matter.
#[inline]
pub fn edge_index(a: usize, b: usize) -> usize {
    let (u, v) = if a < b { (a, b) } else { (b, a) };
    v * (v - 1) / 2 + u
}

/// Inverse of [`edge_index`].
pub fn edge_endpoints(index: usize) -> (usize, usize) {
    // largest v with v(v-1)/2 <= index
    let mut v = ((((8 * index + 1) as f64).sqrt() + 1.0) / 2.0) as usize;
    while v * (v - 1) / 2 > index {
        v -= 1;
    }
    while (v + 1) * v / 2 <= index {
        v += 1;
    }
    (index - v * (v - 1) / 2, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_ranks_small_board() {
        let order: Vec<(usize, usize)> = (0..6).map(edge_endpoints).collect();
        assert_eq!(order, vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]);
    }

    #[test]
    fn index_roundtrip_up_to_cap() {
        for i in 0..edge_count(MAX_BOARD_ORDER) {
            let (u, v) = edge_endpoints(i);
            assert!(u < v);
            assert_eq!(edge_index(u, v), i);
        }
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(Edge::new(2, 0).to_string(), "1-3");
        assert_eq!(Edge::new(0, 2).other(2), Some(0));
        assert_eq!(Edge::new(0, 2).other(1), None);
    }
}
