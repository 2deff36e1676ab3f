use std::collections::VecDeque;

use super::Strategy;
use crate::error::StrategyError;
use crate::game::{BoardState, Player};
use crate::graph::{Color, ColoredBoard, Edge, GraphKind};

const NAME: &str = "path-builder";

/// Pairs of endgame labels, `(0,1)` meaning `t1 t2`.
type Pair = (usize, usize);

/// One row of the endgame table, keyed by Bob's reply `f_{n-4}`.
struct Row {
    f: Pair,
    e1: Pair,
    /// The reply `f_{n-3}` that selects the first branch.
    x: Pair,
    if_e2: Pair,
    if_last: &'static [Pair],
    else_e2: Pair,
    else_last: &'static [Pair],
}

// t1..t5 are 0..4; t1t5 is red on entry.
const TABLE: [Row; 5] = [
    Row { f: (1, 4), e1: (3, 4), x: (2, 4), if_e2: (1, 2), if_last: &[(0, 3), (2, 3)], else_e2: (2, 4), else_last: &[(0, 3), (1, 3), (0, 2), (1, 2)] },
    Row { f: (1, 3), e1: (3, 4), x: (2, 4), if_e2: (2, 3), if_last: &[(0, 2), (1, 2), (1, 4)], else_e2: (2, 4), else_last: &[(0, 2), (1, 2), (0, 3)] },
    Row { f: (0, 2), e1: (2, 4), x: (3, 4), if_e2: (2, 3), if_last: &[(0, 3), (1, 3), (1, 4)], else_e2: (3, 4), else_last: &[(0, 3), (1, 3), (1, 2)] },
    Row { f: (2, 4), e1: (3, 4), x: (0, 2), if_e2: (1, 2), if_last: &[(0, 3), (2, 3)], else_e2: (0, 2), else_last: &[(1, 3), (1, 4), (2, 3)] },
    Row { f: (2, 3), e1: (3, 4), x: (0, 2), if_e2: (2, 4), if_last: &[(0, 2), (0, 3), (1, 2), (1, 3)], else_e2: (0, 2), else_last: &[(1, 3), (1, 4), (2, 4)] },
];

#[derive(Clone, Debug)]
enum Phase {
    Start,
    /// `P_4` on `K_5`: waiting to play the disjoint second edge, then the link.
    Short { first: Edge, second: Option<Edge> },
    Extend,
    Endgame { t: [usize; 5], row: usize, step: usize, branch_if: bool },
}

/// Alice builds a Hamiltonian blue path for `p = q = 1`.
///
/// While the path is short it is extended at an endpoint so that the
/// endpoint `u` has at most one red edge into the unused vertices plus
/// `v`, the endpoint `v` has none and no red edge lies among unused
/// vertices. `marked` is the unused vertex joined to `u` in red, if any.
/// With three unused vertices left the five remaining vertices are
/// relabelled `t1..t5` and a fixed table finishes the path.
#[derive(Clone, Debug)]
pub struct PathBuilder {
    phase: Phase,
    path: VecDeque<usize>,
    marked: Option<usize>,
}

impl Default for PathBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl PathBuilder {
    pub fn new() -> Self {
        PathBuilder { phase: Phase::Start, path: VecDeque::new(), marked: None }
    }

    /// The blue path in order, endpoint `u` first.
    pub fn path(&self) -> Vec<usize> {
        self.path.iter().copied().collect()
    }

    pub fn marked(&self) -> Option<usize> {
        self.marked
    }

    /// Checks the extend-phase invariant on `board`.
    pub fn check_invariant(&self, board: &ColoredBoard) -> Result<(), StrategyError> {
        let (u, v) = (self.path[0], *self.path.back().unwrap());
        let unused = self.unused_mask(board.order());
        let f_mask = unused | 1 << u | 1 << v;
        let a = (board.adjacency(Color::Red, u) & f_mask).count_ones();
        let b = (board.adjacency(Color::Red, v) & f_mask).count_ones();
        let d: u32 = crate::graph::bits(unused).map(|x| (board.adjacency(Color::Red, x) & unused).count_ones()).sum::<u32>() / 2;
        let marked_ok = match self.marked {
            Some(m) => a == 1 && board.color_at(u, m) == Some(Color::Red),
            None => a == 0,
        };
        if a > 1 || b != 0 || d != 0 || !marked_ok {
            return Err(StrategyError::InvariantViolated {
                strategy: NAME,
                reason: format!("a={a} b={b} d={d} marked={:?} at path {:?}", self.marked, self.path),
            });
        }
        Ok(())
    }

    fn unused_mask(&self, order: usize) -> u128 {
        let all = if order == 128 { u128::MAX } else { (1u128 << order) - 1 };
        self.path.iter().fold(all, |m, &x| m & !(1u128 << x))
    }

    fn extend(&mut self, board: &ColoredBoard, last: Edge) -> Result<Edge, StrategyError> {
        let (u, v) = (self.path[0], *self.path.back().unwrap());
        let unused = self.unused_mask(board.order());
        let avoid = self.marked.map_or(0, |m| 1u128 << m);
        let stuck = |at: usize| StrategyError::Stuck { strategy: NAME, reason: format!("no free extension at vertex {}", at + 1) };
        let (x, y) = last.endpoints();
        let in_unused = |z: usize| unused >> z & 1 == 1;
        if last.touches(u) {
            let e = board.lowest_uncolored_at(u, unused).ok_or_else(|| stuck(u))?;
            self.path.push_front(e.other(u).unwrap());
            self.marked = None;
            Ok(e)
        } else if last.touches(v) {
            let e = board.lowest_uncolored_at(v, unused & !avoid).ok_or_else(|| stuck(v))?;
            self.path.push_back(e.other(v).unwrap());
            Ok(e)
        } else if !(in_unused(x) && in_unused(y)) {
            let e = board.lowest_uncolored_at(u, unused & !avoid).ok_or_else(|| stuck(u))?;
            self.path.push_front(e.other(u).unwrap());
            self.marked = None;
            Ok(e)
        } else {
            // Bob's edge lies among unused vertices: step onto the end of it
            // that is not joined to u in red
            let (next, other) = if Some(x) == self.marked { (y, x) } else { (x, y) };
            let e = Edge::new(u, next);
            if !board.is_uncolored(e) {
                return Err(stuck(u));
            }
            self.path.push_front(next);
            self.marked = Some(other);
            Ok(e)
        }
    }

    fn start_endgame(&mut self, board: &ColoredBoard, last: Edge) -> Result<Edge, StrategyError> {
        let (u, v) = (self.path[0], *self.path.back().unwrap());
        let unused: Vec<usize> = crate::graph::bits(self.unused_mask(board.order())).collect();
        let t5 = self.marked.unwrap_or(*unused.last().ok_or(StrategyError::NoMove)?);
        let rest: Vec<usize> = unused.iter().copied().filter(|&z| z != t5).take(2).collect();
        if rest.len() < 2 {
            return Err(StrategyError::Stuck { strategy: NAME, reason: "fewer than three unused vertices".into() });
        }
        let mut t = [u, v, rest[0], rest[1], t5];
        let label = |t: &[usize; 5], e: Edge| -> Option<Pair> {
            let i = t.iter().position(|&z| z == e.lo())?;
            let j = t.iter().position(|&z| z == e.hi())?;
            Some((i.min(j), i.max(j)))
        };
        let swap = |pr: Pair| {
            let s = |i: usize| match i {
                2 => 3,
                3 => 2,
                i => i,
            };
            let (a, b) = (s(pr.0), s(pr.1));
            (a.min(b), a.max(b))
        };
        let listed = |pr: Pair| TABLE.iter().position(|r| r.f == pr);
        // unlisted replies are answered as if Bob had played t3t4
        let row = match label(&t, last) {
            Some(pr) => match (listed(pr), listed(swap(pr))) {
                (Some(r), _) => r,
                (None, Some(r)) => {
                    t.swap(2, 3);
                    r
                }
                (None, None) => 4,
            },
            None => 4,
        };
        self.phase = Phase::Endgame { t, row, step: 1, branch_if: false };
        self.play_pair(board, t, TABLE[row].e1)
    }

    fn play_pair(&self, board: &ColoredBoard, t: [usize; 5], pr: Pair) -> Result<Edge, StrategyError> {
        let e = Edge::new(t[pr.0], t[pr.1]);
        if board.is_uncolored(e) {
            Ok(e)
        } else {
            Err(StrategyError::InvariantViolated { strategy: NAME, reason: format!("endgame edge {e} is not free") })
        }
    }

    fn last_red(state: &BoardState) -> Option<Edge> {
        state.move_log().last().filter(|(_, c)| *c == Color::Red).map(|&(e, _)| e)
    }
}

impl Strategy for PathBuilder {
    fn name(&self) -> &'static str {
        NAME
    }

    fn choose(&mut self, state: &BoardState) -> Result<Edge, StrategyError> {
        let cfg = state.config();
        let unsupported = |reason: &str| StrategyError::Unsupported { strategy: NAME, reason: reason.into() };
        if cfg.p != 1 || cfg.q != 1 {
            return Err(unsupported("needs p = q = 1"));
        }
        if state.target().kind() != GraphKind::Path {
            return Err(unsupported("target is not a path"));
        }
        if state.whose_turn().0 != Player::Alice {
            return Err(unsupported("plays Alice only"));
        }
        let n = state.target().vertex_count();
        let board = state.board();
        if board.order() < n {
            return Err(unsupported("board smaller than the path"));
        }
        let last = Self::last_red(state);

        match self.phase.clone() {
            Phase::Start => {
                let e = board.uncolored_edges().next().ok_or(StrategyError::NoMove)?;
                self.path = [e.lo(), e.hi()].into_iter().collect();
                self.phase = match n {
                    4 => Phase::Short { first: e, second: None },
                    2 | 3 => Phase::Extend,
                    _ => Phase::Extend,
                };
                Ok(e)
            }
            Phase::Short { first, second: None } => {
                let f = last.ok_or(StrategyError::NoMove)?;
                let (a, b) = first.endpoints();
                let pick = board.uncolored_edges().find(|e| {
                    let (x, y) = e.endpoints();
                    let fresh = board.degree(Color::Blue, x) == 0 && board.degree(Color::Blue, y) == 0;
                    let hits = [a, b, x, y].iter().filter(|&&z| f.touches(z)).count();
                    fresh && hits == 1
                });
                let e = pick.ok_or_else(|| StrategyError::Stuck { strategy: NAME, reason: "no second edge".into() })?;
                self.phase = Phase::Short { first, second: Some(e) };
                Ok(e)
            }
            Phase::Short { first, second: Some(second) } => {
                let (a, b) = first.endpoints();
                let (x, y) = second.endpoints();
                [(a, x), (a, y), (b, x), (b, y)]
                    .into_iter()
                    .map(|(s, t)| Edge::new(s, t))
                    .find(|&e| board.is_uncolored(e))
                    .ok_or_else(|| StrategyError::Stuck { strategy: NAME, reason: "both ends cut off".into() })
            }
            Phase::Extend => {
                let f = last.ok_or(StrategyError::NoMove)?;
                let edges = self.path.len() - 1;
                if n <= 3 {
                    // any edge at an endpoint finishes P_3
                    let (u, v) = (self.path[0], self.path[1]);
                    let unused = self.unused_mask(board.order());
                    return board
                        .lowest_uncolored_at(u, unused)
                        .or_else(|| board.lowest_uncolored_at(v, unused))
                        .ok_or_else(|| StrategyError::Stuck { strategy: NAME, reason: "no edge at the endpoints".into() });
                }
                if edges + 4 == n {
                    return self.start_endgame(board, f);
                }
                let e = self.extend(board, f)?;
                self.check_invariant(&board.with(e, Color::Blue))?;
                Ok(e)
            }
            Phase::Endgame { t, row, step, branch_if } => {
                let f = last.ok_or(StrategyError::NoMove)?;
                let r = &TABLE[row];
                match step {
                    1 => {
                        let pr = (t.iter().position(|&z| z == f.lo()), t.iter().position(|&z| z == f.hi()));
                        let hit = matches!(pr, (Some(i), Some(j)) if (i.min(j), i.max(j)) == r.x);
                        self.phase = Phase::Endgame { t, row, step: 2, branch_if: hit };
                        self.play_pair(board, t, if hit { r.if_e2 } else { r.else_e2 })
                    }
                    _ => {
                        let options = if branch_if { r.if_last } else { r.else_last };
                        options
                            .iter()
                            .map(|&(i, j)| Edge::new(t[i], t[j]))
                            .find(|&e| board.is_uncolored(e))
                            .ok_or_else(|| StrategyError::Stuck { strategy: NAME, reason: "every closing edge is red".into() })
                    }
                }
            }
        }
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Mode, Outcome};
    use crate::graph::TargetGraph;

    fn play(n: usize, order: usize, bob: &[(usize, usize)]) -> (BoardState, Result<(), StrategyError>) {
        let mut st = BoardState::new_game(order, 1, 1, TargetGraph::path(n), Mode::Strong).unwrap();
        let mut s = PathBuilder::new();
        let mut replies = bob.iter();
        while !st.is_over() {
            match st.whose_turn().0 {
                Player::Alice => match s.choose(&st) {
                    Ok(e) => {
                        st.play(e, Player::Alice).unwrap();
                    }
                    Err(err) => return (st, Err(err)),
                },
                Player::Bob => {
                    // scripted reply, or the lowest free edge once it is taken
                    let scripted = replies.next().map(|&(a, b)| Edge::new(a, b));
                    let e = scripted
                        .filter(|&e| st.board().is_uncolored(e))
                        .or_else(|| st.board().uncolored_edges().next())
                        .unwrap();
                    st.play(e, Player::Bob).unwrap();
                }
            }
        }
        (st, Ok(()))
    }

    #[test]
    fn endgame_reply_to_t2t5() {
        // n = 5: after e1 = 1-2 the labels are t1=1, t2=2, t3=3, t4=4, t5=5
        let mut st = BoardState::new_game(5, 1, 1, TargetGraph::path(5), Mode::Strong).unwrap();
        let mut s = PathBuilder::new();
        let e = s.choose(&st).unwrap();
        assert_eq!(e, Edge::new(0, 1));
        st.play(e, Player::Alice).unwrap();
        st.play(Edge::new(1, 4), Player::Bob).unwrap();
        assert_eq!(s.choose(&st).unwrap(), Edge::new(3, 4));
    }

    #[test]
    fn endgame_reply_to_t1t3() {
        let mut st = BoardState::new_game(5, 1, 1, TargetGraph::path(5), Mode::Strong).unwrap();
        let mut s = PathBuilder::new();
        st.play(s.choose(&st).unwrap(), Player::Alice).unwrap();
        st.play(Edge::new(0, 2), Player::Bob).unwrap();
        assert_eq!(s.choose(&st).unwrap(), Edge::new(2, 4));
    }

    #[test]
    fn wins_sample_lines() {
        let (st, r) = play(6, 6, &[(2, 3), (0, 4), (1, 5), (3, 5), (0, 5)]);
        r.unwrap();
        assert_eq!(st.outcome().value, Outcome::AliceWin);
        let (st, r) = play(4, 5, &[(0, 2), (1, 3), (2, 4)]);
        r.unwrap();
        assert_eq!(st.outcome().value, Outcome::AliceWin);
        let (st, r) = play(3, 3, &[(1, 2)]);
        r.unwrap();
        assert_eq!(st.outcome().value, Outcome::AliceWin);
    }
}
