//! Slow, independent oracles used to cross-check the fast code paths.
//!
//! Nothing here shares logic with the implementations it checks: copies are
//! found by enumerating every injection, canonical codes by trying every
//! permutation, trees are deduplicated by AHU encoding, games are solved
//! without symmetry, and real constants are evaluated in fixed-point
//! arithmetic with 60 decimal digits.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::game::{Mode, Outcome, Player};
use crate::graph::{Color, ColoredBoard, TargetGraph};

/// Whether some injection of the target's vertices maps every target edge
/// onto a `color` edge.
pub fn contains_copy_brute(board: &ColoredBoard, target: &TargetGraph, color: Color) -> bool {
    let n = board.order();
    let k = target.vertex_count();
    if k > n {
        return false;
    }
    let mut map = vec![0usize; k];
    let mut used = vec![false; n];
    fn rec(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        board: &ColoredBoard,
        target: &TargetGraph,
        color: Color,
    ) -> bool {
        if i == map.len() {
            return target.edges().iter().all(|e| board.color_at(map[e.lo()], map[e.hi()]) == Some(color));
        }
        for b in 0..board.order() {
            if !used[b] {
                used[b] = true;
                map[i] = b;
                let found = rec(i + 1, map, used, board, target, color);
                used[b] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    rec(0, &mut map, &mut used, board, target, color)
}

/// Lexicographically least colour string over all vertex permutations, in
/// colex edge order with `0 = uncoloured, 1 = blue, 2 = red`.
pub fn canonical_brute(board: &ColoredBoard) -> Vec<u8> {
    let n = board.order();
    let code = |perm: &[usize]| -> Vec<u8> {
        let mut out = Vec::with_capacity(n * (n.max(1) - 1) / 2);
        for v in 1..n {
            for u in 0..v {
                out.push(match board.color_at(perm[u], perm[v]) {
                    None => 0,
                    Some(Color::Blue) => 1,
                    Some(Color::Red) => 2,
                });
            }
        }
        out
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = code(&perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let cand = code(&perm);
            if cand < best {
                best = cand;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Mover of each of the `total` edge placements, by literally dealing out
/// blocks of `p` and `q`.
pub fn turn_sequence(p: usize, q: usize, total: usize) -> Vec<Player> {
    let mut seq = Vec::with_capacity(total);
    'outer: loop {
        for (who, k) in [(Player::Alice, p), (Player::Bob, q)] {
            for _ in 0..k {
                if seq.len() == total {
                    break 'outer;
                }
                seq.push(who);
            }
        }
    }
    seq
}

/// AHU encoding of a tree rooted at `root`.
fn ahu(adj: &[Vec<usize>], v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| Some(w) != parent).map(|&w| ahu(adj, w, Some(v))).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Isomorphism-invariant string of a tree: AHU code at its centre(s).
pub fn tree_code(tree: &TargetGraph) -> String {
    let n = tree.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| tree.neighbors(v).collect()).collect();
    // peel leaves to find the centre
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| ahu(&adj, c, None)).min().unwrap_or_default()
}

/// All trees of order `n` up to isomorphism, grown by attaching leaves.
pub fn nonisomorphic_trees(n: usize) -> Vec<TargetGraph> {
    assert!(n >= 2, "trees need at least two vertices");
    let mut level = vec![TargetGraph::path(2)];
    for k in 3..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..k - 1 {
                let mut pairs: Vec<(usize, usize)> = t.edges().iter().map(|e| (e.lo(), e.hi())).collect();
                pairs.push((v, k - 1));
                let grown = TargetGraph::new(k, &pairs).expect("leaf extension is a tree");
                if seen.insert(tree_code(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

/// All graphs on exactly `n` vertices with no isolated vertex, up to
/// isomorphism (by brute-force canonical codes).
pub fn graphs_without_isolated(n: usize) -> Vec<TargetGraph> {
    let m = n * (n - 1) / 2;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        let bits: String = (0..m).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect();
        let Ok(g) = TargetGraph::from_bitstring(&bits) else { continue };
        if g.vertex_count() != n {
            continue;
        }
        let board = ColoredBoard::from_edges(n, g.edges(), &[]);
        if seen.insert(canonical_brute(&board)) {
            out.push(g);
        }
    }
    out
}

/// Game value by plain minimax over exact colourings, memoised without any
/// symmetry reduction. Meant for `C(N,2) ≤ 15`.
pub fn solve_brute(order: usize, p: usize, q: usize, target: &TargetGraph, mode: Mode) -> Outcome {
    let m = order * (order - 1) / 2;
    assert!(m <= 16, "brute solver is for tiny boards");
    let mut memo: HashMap<(u32, u32), Outcome> = HashMap::new();
    let seq = turn_sequence(p, q, m);
    fn board_of(order: usize, blue: u32, red: u32) -> ColoredBoard {
        let mut b = ColoredBoard::empty(order);
        for i in 0..b.edge_total() {
            let e = crate::graph::Edge::from_index(i);
            if blue >> i & 1 == 1 {
                b.set(e, Some(Color::Blue));
            } else if red >> i & 1 == 1 {
                b.set(e, Some(Color::Red));
            }
        }
        b
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        blue: u32,
        red: u32,
        order: usize,
        m: usize,
        seq: &[Player],
        target: &TargetGraph,
        mode: Mode,
        memo: &mut HashMap<(u32, u32), Outcome>,
    ) -> Outcome {
        if let Some(&v) = memo.get(&(blue, red)) {
            return v;
        }
        let placed = (blue | red).count_ones() as usize;
        let mover = seq[placed];
        let rank = |o: Outcome| match o {
            Outcome::AliceWin => 2,
            Outcome::Draw => 1,
            _ => 0,
        };
        let mut best: Option<Outcome> = None;
        for i in 0..m {
            if (blue | red) >> i & 1 == 1 {
                continue;
            }
            let (b2, r2) = match mover {
                Player::Alice => (blue | 1 << i, red),
                Player::Bob => (blue, red | 1 << i),
            };
            let board = board_of(order, b2, r2);
            let can_win = mover == Player::Alice || mode == Mode::Strong;
            let v = if can_win && contains_copy_brute(&board, target, mover.color()) {
                mover.win()
            } else if placed + 1 == m {
                if mode == Mode::Strong {
                    Outcome::Draw
                } else {
                    Outcome::BobWin
                }
            } else {
                rec(b2, r2, order, m, seq, target, mode, memo)
            };
            best = Some(match best {
                None => v,
                Some(b) if mover == Player::Alice && rank(v) > rank(b) => v,
                Some(b) if mover == Player::Bob && rank(v) < rank(b) => v,
                Some(b) => b,
            });
        }
        let v = best.expect("non-terminal position has a move");
        memo.insert((blue, red), v);
        v
    }
    if m == 0 {
        return if mode == Mode::Strong { Outcome::Draw } else { Outcome::BobWin };
    }
    rec(0, 0, order, m, &seq, target, mode, &mut memo)
}

/// Fixed-point reals with 60 decimal digits.
pub mod hp {
    use super::*;

    pub const DIGITS: u32 = 60;

    /// A value `x` stored as `round(x · 10^60)`.
    #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
    pub struct Fixed(pub BigInt);

    fn scale() -> BigInt {
        BigInt::from(10u8).pow(DIGITS)
    }

    impl Fixed {
        pub fn int(n: i64) -> Self {
            Fixed(BigInt::from(n) * scale())
        }

        pub fn ratio(num: i64, den: i64) -> Self {
            Fixed(BigInt::from(num) * scale() / BigInt::from(den))
        }

        pub fn add(&self, o: &Fixed) -> Fixed {
            Fixed(&self.0 + &o.0)
        }

        pub fn sub(&self, o: &Fixed) -> Fixed {
            Fixed(&self.0 - &o.0)
        }

        pub fn mul(&self, o: &Fixed) -> Fixed {
            Fixed(&self.0 * &o.0 / scale())
        }

        pub fn div(&self, o: &Fixed) -> Fixed {
            Fixed(&self.0 * scale() / &o.0)
        }

        pub fn sqrt(&self) -> Fixed {
            assert!(!self.0.is_negative(), "sqrt of a negative value");
            Fixed((&self.0 * scale()).sqrt())
        }

        pub fn is_positive(&self) -> bool {
            self.0.is_positive()
        }

        pub fn to_f64(&self) -> f64 {
            // split to keep 17 significant digits
            let s = scale();
            let whole = (&self.0 / &s).to_f64().unwrap_or(f64::NAN);
            let frac = (&self.0 % &s).to_f64().unwrap_or(f64::NAN) / 1e60;
            whole + frac
        }
    }

    /// `atanh(z)` for `0 ≤ z < 1`, as a power series.
    fn atanh(z: &Fixed) -> Fixed {
        let z2 = z.mul(z);
        let mut term = z.clone();
        let mut sum = Fixed(BigInt::zero());
        let mut k = 1i64;
        while !term.0.is_zero() {
            sum = sum.add(&Fixed(&term.0 / BigInt::from(k)));
            term = term.mul(&z2);
            k += 2;
        }
        sum
    }

    fn ln2() -> Fixed {
        atanh(&Fixed::ratio(1, 3)).mul(&Fixed::int(2))
    }

    /// Natural log of a positive integer.
    pub fn ln_int(m: &BigInt) -> Fixed {
        assert!(m.is_positive(), "log of a non-positive integer");
        let k = m.bits() - 1;
        // r = m / 2^k in [1, 2)
        let r = Fixed((m * scale()) >> k);
        let one = Fixed::int(1);
        let z = r.sub(&one).div(&r.add(&one));
        let ln_r = atanh(&z).mul(&Fixed::int(2));
        ln2().mul(&Fixed(BigInt::from(k) * scale())).add(&ln_r)
    }

    /// Natural log of `num/den`.
    pub fn ln_ratio(num: &BigInt, den: &BigInt) -> Fixed {
        ln_int(num).sub(&ln_int(den))
    }

    pub fn big(n: u64) -> BigInt {
        BigInt::from(n)
    }

    /// `2n-2-√((4n-8)·ln(4n-4))`.
    pub fn star_lower_classical(n: u64) -> Fixed {
        let l = ln_int(&big(4 * n - 4));
        let inner = Fixed::int((4 * n - 8) as i64).mul(&l);
        Fixed::int((2 * n - 2) as i64).sub(&inner.sqrt())
    }

    /// `(1 + q/2p - ε)·n` with `ε = eps_num/eps_den`.
    pub fn star_lower_biased(n: u64, p: u64, q: u64, eps_num: i64, eps_den: i64) -> Fixed {
        let factor = Fixed::int(1).add(&Fixed::ratio(q as i64, 2 * p as i64)).sub(&Fixed::ratio(eps_num, eps_den));
        factor.mul(&Fixed::int(n as i64))
    }

    /// `n0` by scanning `n = 1..limit` with exact-grid `α = (2^20+k)/2^20`.
    pub fn n0_scan(p: u64, q: u64, eps_num: i64, eps_den: i64, alpha_k: u64, limit: u64) -> Option<u64> {
        let grid = BigInt::one() << 20u32;
        let ln_alpha = ln_ratio(&(&grid + big(alpha_k)), &grid);
        let (pi, qi) = (p as i64, q as i64);
        // c·ε = (2p²-2p+q)·eps_num / (2pq·eps_den)
        let c_eps = Fixed::ratio((2 * pi * pi - 2 * pi + qi) * eps_num, 2 * pi * qi * eps_den);
        let mut last_bad = 0;
        for n in 1..=limit {
            let lhs = ln_ratio(&big((2 * p + q) * n), &big(2 * p)).div(&ln_alpha).add(&Fixed::int(pi));
            let rhs = c_eps.mul(&Fixed::int(n as i64));
            if lhs.sub(&rhs).is_positive() {
                last_bad = n;
            }
        }
        (last_bad < limit).then_some(last_bad + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (2..=8).map(|n| nonisomorphic_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn graph_counts() {
        let counts: Vec<usize> = (2..=4).map(|n| graphs_without_isolated(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7]);
    }

    #[test]
    fn turn_sequence_blocks() {
        use Player::*;
        assert_eq!(turn_sequence(2, 1, 7), vec![Alice, Alice, Bob, Alice, Alice, Bob, Alice]);
    }

    #[test]
    fn hp_constants() {
        let l = hp::ln_int(&BigInt::from(2u8)).to_f64();
        assert!((l - std::f64::consts::LN_2).abs() < 1e-16);
        let l = hp::ln_int(&BigInt::from(36u8)).to_f64();
        assert!((l - 36f64.ln()).abs() < 1e-14);
        assert!((hp::star_lower_classical(10).to_f64() - 7.292).abs() < 1e-3);
    }

    #[test]
    fn brute_solver_small_cases() {
        assert_eq!(solve_brute(3, 1, 1, &TargetGraph::path(3), Mode::Strong), Outcome::AliceWin);
        assert_ne!(solve_brute(4, 1, 1, &TargetGraph::path(4), Mode::Strong), Outcome::AliceWin);
    }
}
