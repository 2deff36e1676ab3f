//! Canonical labelling of edge-3-colored complete graphs.
//!
//! Vertices are first split by `(blue degree, red degree)` and then by
//! colour refinement (counts of blue/red neighbours per cell) until stable.
//! Cells are ordered by their invariant signature, so the partition is
//! relabelling-invariant. The canonical ordering is the lexicographically
//! smallest colex code string over all vertex orderings that list the cells
//! in that order. Search is exact branch-and-bound; two unplaced vertices
//! with identical colour rows (twins) are interchangeable, so only one of
//! them is tried at each level.

use super::{ColoredBoard, Color};
use crate::error::GraphError;

/// Largest board order accepted by [`canonical_form`]. Codes are packed two
/// bits per edge into a `u64`, which caps `C(N,2)` at 28.
pub const CANON_MAX_ORDER: usize = 8;

const MAX_EDGES: usize = 28;

/// Canonical byte string of `board`: the order followed by the eight
/// big-endian bytes of the packed minimal code. Equal strings iff the two
/// colorings are isomorphic.
pub fn canonical_form(board: &ColoredBoard) -> Result<Vec<u8>, GraphError> {
    let n = board.order();
    if n > CANON_MAX_ORDER {
        return Err(GraphError::TooLarge { order: n, cap: CANON_MAX_ORDER });
    }
    let mut blue = [0u8; CANON_MAX_ORDER];
    let mut red = [0u8; CANON_MAX_ORDER];
    for v in 0..n {
        blue[v] = board.adjacency(Color::Blue, v) as u8;
        red[v] = board.adjacency(Color::Red, v) as u8;
    }
    let code = canonical_code(n, &blue[..n], &red[..n]);
    let mut out = Vec::with_capacity(9);
    out.push(n as u8);
    out.extend_from_slice(&code.to_be_bytes());
    Ok(out)
}

/// Packed canonical code from per-vertex adjacency bytes. The first colex
/// edge occupies the most significant bits, so numeric order on codes is
/// lexicographic order on code strings.
pub fn canonical_code(n: usize, blue: &[u8], red: &[u8]) -> u64 {
    debug_assert!(n <= CANON_MAX_ORDER);
    if n < 2 {
        return 0;
    }
    let mut color = [[0u8; CANON_MAX_ORDER]; CANON_MAX_ORDER];
    for u in 0..n {
        for v in 0..n {
            if blue[u] >> v & 1 == 1 {
                color[u][v] = 1;
            } else if red[u] >> v & 1 == 1 {
                color[u][v] = 2;
            }
        }
    }
    let cells = refine(n, &color);
    let mut slots = [0u8; CANON_MAX_ORDER];
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by_key(|&v| cells[v]);
    for (k, &v) in sorted.iter().enumerate() {
        slots[k] = cells[v];
    }

    let mut twins = [0u8; CANON_MAX_ORDER];
    for u in 0..n {
        for w in 0..n {
            if u != w && (0..n).all(|x| x == u || x == w || color[u][x] == color[w][x]) {
                twins[u] |= 1 << w;
            }
        }
    }

    let mut search = Search {
        n,
        color,
        cells,
        slots,
        twins,
        perm: [0; CANON_MAX_ORDER],
        cur: [0; MAX_EDGES],
        // above every real code, so the first leaf always wins
        best: [3; MAX_EDGES],
    };
    search.descend(0, 0, false);

    let total = n * (n - 1) / 2;
    search.best[..total].iter().fold(0u64, |acc, &c| acc << 2 | c as u64)
}

/// Cell rank per vertex after refinement to a stable partition.
fn refine(n: usize, color: &[[u8; CANON_MAX_ORDER]; CANON_MAX_ORDER]) -> [u8; CANON_MAX_ORDER] {
    let mut cells = [0u8; CANON_MAX_ORDER];
    let initial: Vec<(usize, usize)> = (0..n)
        .map(|v| {
            let b = (0..n).filter(|&x| color[v][x] == 1).count();
            let r = (0..n).filter(|&x| color[v][x] == 2).count();
            (b, r)
        })
        .collect();
    let mut count = rank_into(&initial, &mut cells);
    loop {
        let sigs: Vec<(u8, Vec<(u8, u8)>)> = (0..n)
            .map(|v| {
                let mut per_cell = vec![(0u8, 0u8); count];
                for x in 0..n {
                    match color[v][x] {
                        1 => per_cell[cells[x] as usize].0 += 1,
                        2 => per_cell[cells[x] as usize].1 += 1,
                        _ => {}
                    }
                }
                (cells[v], per_cell)
            })
            .collect();
        let next = rank_into(&sigs, &mut cells);
        if next == count {
            return cells;
        }
        count = next;
    }
}

fn rank_into<T: Ord + Clone>(keys: &[T], cells: &mut [u8; CANON_MAX_ORDER]) -> usize {
    let mut distinct: Vec<T> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    for (v, key) in keys.iter().enumerate() {
        cells[v] = distinct.binary_search(key).expect("key present") as u8;
    }
    distinct.len()
}

struct Search {
    n: usize,
    color: [[u8; CANON_MAX_ORDER]; CANON_MAX_ORDER],
    cells: [u8; CANON_MAX_ORDER],
    slots: [u8; CANON_MAX_ORDER],
    twins: [u8; CANON_MAX_ORDER],
    perm: [usize; CANON_MAX_ORDER],
    cur: [u8; MAX_EDGES],
    best: [u8; MAX_EDGES],
}

impl Search {
    /// `less` is true when the placed prefix is strictly below `best`.
    /// Returns whether `best` was replaced somewhere below this frame.
    fn descend(&mut self, k: usize, used: u8, mut less: bool) -> bool {
        if k == self.n {
            if less {
                self.best = self.cur;
            }
            return less;
        }
        let base = k * k.saturating_sub(1) / 2;
        let mut tried: u8 = 0;
        let mut improved = false;
        for v in 0..self.n {
            if used >> v & 1 == 1 || self.cells[v] != self.slots[k] {
                continue;
            }
            if self.twins[v] & tried & !used != 0 {
                continue;
            }
            tried |= 1 << v;

            let mut now_less = less;
            let mut prune = false;
            for j in 0..k {
                let c = self.color[self.perm[j]][v];
                self.cur[base + j] = c;
                if !now_less {
                    let b = self.best[base + j];
                    if c > b {
                        prune = true;
                        break;
                    }
                    if c < b {
                        now_less = true;
                    }
                }
            }
            if prune {
                continue;
            }
            self.perm[k] = v;
            if self.descend(k + 1, used | 1 << v, now_less) {
                // best now extends this prefix
                less = false;
                improved = true;
            }
        }
        improved
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn board(n: usize, blue: &[(usize, usize)], red: &[(usize, usize)]) -> ColoredBoard {
        let b: Vec<Edge> = blue.iter().map(|&(x, y)| Edge::new(x, y)).collect();
        let r: Vec<Edge> = red.iter().map(|&(x, y)| Edge::new(x, y)).collect();
        ColoredBoard::from_edges(n, &b, &r)
    }

    #[test]
    fn empty_boards_agree() {
        let a = canonical_form(&ColoredBoard::empty(5)).unwrap();
        let b = canonical_form(&ColoredBoard::empty(5)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, canonical_form(&ColoredBoard::empty(4)).unwrap());
    }

    #[test]
    fn path_positions_and_star() {
        let p1 = board(4, &[(0, 1), (1, 2)], &[]);
        let p2 = board(4, &[(1, 2), (2, 3)], &[]);
        let star = board(4, &[(0, 1), (0, 2), (0, 3)], &[]);
        let two = board(4, &[(0, 1), (0, 2)], &[]);
        assert_eq!(canonical_form(&p1).unwrap(), canonical_form(&p2).unwrap());
        assert_eq!(canonical_form(&p1).unwrap(), canonical_form(&two).unwrap());
        assert_ne!(canonical_form(&p1).unwrap(), canonical_form(&star).unwrap());
    }

    #[test]
    fn colors_are_distinguished() {
        let a = board(4, &[(0, 1)], &[(2, 3)]);
        let b = board(4, &[(2, 3)], &[(0, 1)]);
        let c = board(4, &[(0, 1)], &[(1, 2)]);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&c).unwrap());
    }

    #[test]
    fn refinement_splits_regular_graphs() {
        // two disjoint triangles vs a six-cycle: both 2-regular in blue
        let tri = board(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], &[]);
        let hex = board(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)], &[]);
        assert_ne!(canonical_form(&tri).unwrap(), canonical_form(&hex).unwrap());
    }

    #[test]
    fn rejects_large_boards() {
        assert!(canonical_form(&ColoredBoard::empty(9)).is_err());
    }
}
