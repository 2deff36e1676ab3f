use std::collections::VecDeque;

use super::Strategy;
use crate::error::StrategyError;
use crate::game::{BoardState, GameConfig, GameOutcome, Player};
use crate::graph::{Color, ColoredBoard, Edge};

/// `α` is searched on the grid `1 + k·2^-ALPHA_GRID_BITS`.
pub const ALPHA_GRID_BITS: u32 = 20;
/// Largest `α` the search will consider.
pub const ALPHA_CAP: f64 = 4.0;
/// `f(α)` must be below `-ALPHA_MARGIN` to be accepted.
pub const ALPHA_MARGIN: f64 = 1e-9;

/// Parameters of Bob's potential strategy against a star `K_{1,n}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockerParams {
    pub p: usize,
    pub q: usize,
    pub eps: f64,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl BlockerParams {
    /// Picks `α` with [`choose_alpha`].
    pub fn new(p: usize, q: usize, eps: f64, n: usize) -> Result<Self, StrategyError> {
        let alpha = choose_alpha(p, q, eps)?;
        Ok(Self::with_alpha(p, q, eps, n, alpha))
    }

    pub fn with_alpha(p: usize, q: usize, eps: f64, n: usize, alpha: f64) -> Self {
        BlockerParams { p, q, eps, n, alpha, beta: (2 * p) as f64 / q as f64 + eps / q as f64 }
    }

    /// `2p - 1 + x^(-βq) - 2p/x`.
    pub fn f(&self, x: f64) -> f64 {
        alpha_f(self.p, self.eps, x)
    }

    pub fn n0(&self) -> u64 {
        compute_n0(self.p, self.q, self.eps, self.alpha)
    }
}

fn alpha_f(p: usize, eps: f64, x: f64) -> f64 {
    let two_p = (2 * p) as f64;
    // βq = 2p + ε
    (two_p - 1.0) + x.powf(-(two_p + eps)) - two_p / x
}

/// Largest grid point `α = 1 + k·2^-20 ≤ 4` with `f(α) < -1e-9`.
///
/// `f(1) = 0`, `f'(1) = -ε` and `f` has a single interior minimum at
/// `x* = ((2p+ε)/2p)^(1/(2p+ε-1))`, so the accepted set is one interval of
/// grid points. Start from the grid point nearest `x*`, scan upward with
/// doubling steps until `f` fails, then bisect.
pub fn choose_alpha(p: usize, q: usize, eps: f64) -> Result<f64, StrategyError> {
    let no_alpha = StrategyError::NoAlpha { p, q, eps, cap: ALPHA_CAP };
    if p < q || q == 0 || !(eps > 0.0) || !eps.is_finite() {
        return Err(no_alpha);
    }
    let scale = (1u64 << ALPHA_GRID_BITS) as f64;
    let grid = |k: u64| 1.0 + k as f64 / scale;
    let ok = |k: u64| alpha_f(p, eps, grid(k)) < -ALPHA_MARGIN;
    let k_cap = ((ALPHA_CAP - 1.0) * scale) as u64;

    let a = (2 * p) as f64 + eps;
    let x_min = (a / (2 * p) as f64).powf(1.0 / (a - 1.0));
    let centre = (((x_min - 1.0) * scale).round() as u64).clamp(1, k_cap);
    let mut good = (centre.saturating_sub(2).max(1)..=(centre + 2).min(k_cap))
        .filter(|&k| ok(k))
        .max()
        .ok_or(no_alpha)?;

    let mut step = 1u64;
    let bad = loop {
        let next = good + step;
        if next > k_cap {
            if ok(k_cap) {
                return Ok(grid(k_cap));
            }
            break k_cap;
        }
        if !ok(next) {
            break next;
        }
        good = next;
        step *= 2;
    };
    let mut hi = bad;
    while hi - good > 1 {
        let mid = good + (hi - good) / 2;
        if ok(mid) {
            good = mid;
        } else {
            hi = mid;
        }
    }
    Ok(grid(good))
}

/// Smallest `n_0` such that
/// `log_α((2p+q)n/2p) + p ≤ ((2p²-2p+q)/2pq)·ε·n` for every `n ≥ n_0`.
///
/// The left minus right side `g` is concave with its peak at
/// `n* = 1/(c·ε·ln α)`, so past the peak it is decreasing and one
/// crossing search there suffices.
pub fn compute_n0(p: usize, q: usize, eps: f64, alpha: f64) -> u64 {
    let (pf, qf) = (p as f64, q as f64);
    let c = (2.0 * pf * pf - 2.0 * pf + qf) / (2.0 * pf * qf);
    let ln_a = alpha.ln();
    let g = |n: u64| {
        let n = n as f64;
        ((2.0 * pf + qf) * n / (2.0 * pf)).ln() / ln_a + pf - c * eps * n
    };
    let peak = (1.0 / (c * eps * ln_a)).floor().max(1.0) as u64;
    if g(peak) <= 0.0 && g(peak + 1) <= 0.0 {
        return 1;
    }
    let mut lo = peak;
    let mut hi = peak + 1;
    while g(hi) > 0.0 {
        lo = hi;
        hi *= 2;
    }
    // g(lo) > 0 or lo is the peak itself, g(hi) <= 0, g decreasing on (lo, hi]
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if g(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `φ(v)`: zero when `v` is saturated, otherwise `α^(d_B - β·d_R)`.
pub fn potential_phi(board: &ColoredBoard, v: usize, params: &BlockerParams) -> f64 {
    if board.is_saturated(v) {
        return 0.0;
    }
    let db = board.degree(Color::Blue, v) as f64;
    let dr = board.degree(Color::Red, v) as f64;
    params.alpha.powf(db - params.beta * dr)
}

pub fn potential_sum(board: &ColoredBoard, params: &BlockerParams) -> f64 {
    (0..board.order()).map(|v| potential_phi(board, v, params)).sum()
}

/// One planned Bob block.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockPlan {
    /// The argmax vertex, `None` on a full board.
    pub w: Option<usize>,
    pub edges: Vec<Edge>,
    /// How many of `edges` touch `w`.
    pub at_w: usize,
}

/// Plans `k` red edges: the lowest uncoloured edges at the vertex of
/// largest potential, then at the next-ranked vertices if `w` runs out.
pub fn plan_block(board: &ColoredBoard, params: &BlockerParams, k: usize) -> BlockPlan {
    let mut ranked: Vec<(f64, usize)> = (0..board.order())
        .filter(|&v| board.uncolored_adjacency(v) != 0)
        .map(|v| (potential_phi(board, v, params), v))
        .collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let w = ranked.first().map(|&(_, v)| v);
    let mut edges: Vec<Edge> = Vec::with_capacity(k);
    for &(_, v) in &ranked {
        if edges.len() == k {
            break;
        }
        let mut partners = board.uncolored_adjacency(v);
        while partners != 0 && edges.len() < k {
            let x = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            let e = Edge::new(v, x);
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    let at_w = w.map_or(0, |w| edges.iter().filter(|e| e.touches(w)).count());
    BlockPlan { w, edges, at_w }
}

/// The edges Bob colours in his current block.
pub fn star_blocker_moves(state: &BoardState, params: &BlockerParams) -> Vec<Edge> {
    let board = state.board();
    let k = match state.whose_turn() {
        (Player::Bob, left) => left,
        _ => params.q.min(board.uncolored_count()),
    };
    plan_block(board, params, k).edges
}

/// Bob colours at the vertex of maximum potential.
#[derive(Clone, Debug)]
pub struct StarBlocker {
    params: BlockerParams,
    pending: VecDeque<Edge>,
    last_plan: Option<BlockPlan>,
}

impl StarBlocker {
    pub fn new(params: BlockerParams) -> Self {
        StarBlocker { params, pending: VecDeque::new(), last_plan: None }
    }

    pub fn params(&self) -> &BlockerParams {
        &self.params
    }

    /// Plan of the most recent block.
    pub fn last_plan(&self) -> Option<&BlockPlan> {
        self.last_plan.as_ref()
    }
}

impl Strategy for StarBlocker {
    fn name(&self) -> &'static str {
        "star-blocker"
    }

    fn choose(&mut self, state: &BoardState) -> Result<Edge, StrategyError> {
        let (mover, left) = state.whose_turn();
        if mover != Player::Bob {
            return Err(StrategyError::Unsupported { strategy: "star-blocker", reason: "plays Bob only".into() });
        }
        let board = state.board();
        if self.pending.len() != left || self.pending.iter().any(|&e| !board.is_uncolored(e)) {
            let plan = plan_block(board, &self.params, left);
            self.pending = plan.edges.iter().copied().collect();
            self.last_plan = Some(plan);
        }
        self.pending.pop_front().ok_or(StrategyError::NoMove)
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Result of running the potential checks over one match.
#[derive(Clone, Debug, PartialEq)]
pub struct StarAudit {
    pub rounds: usize,
    pub qualifying: usize,
    pub checks: usize,
    pub violations: Vec<String>,
    pub outcome: GameOutcome,
    pub max_blue_degree: usize,
    pub forfeit: Option<String>,
}

/// Plays `alice` against [`StarBlocker`] and checks after every round:
///
/// * strict decrease of `Σφ` across each round where Bob put all `q`
///   edges at the argmax vertex;
/// * `Σφ ≤ N` after Bob's block while every round so far qualified;
/// * `d_B - β·d_R ≤ log_α N + p` for every vertex after both half-rounds
///   while every earlier round qualified.
///
/// The argmax is recomputed here rather than read from the strategy.
pub fn audit_star_blocker(alice: &mut dyn Strategy, config: GameConfig, params: BlockerParams) -> StarAudit {
    const SLACK: f64 = 1e-9;
    let order = config.order;
    let mut bob = StarBlocker::new(params);
    let mut state = BoardState::from_config(config);
    let mut audit = StarAudit {
        rounds: 0,
        qualifying: 0,
        checks: 0,
        violations: Vec::new(),
        outcome: GameOutcome::ONGOING,
        max_blue_degree: 0,
        forfeit: None,
    };
    let degree_cap = (order as f64).ln() / params.alpha.ln() + params.p as f64 + SLACK;
    let mut prev_sum = order as f64;
    let mut all_qualified = true;

    let check_degrees = |board: &ColoredBoard, label: &str, audit: &mut StarAudit| {
        for v in 0..board.order() {
            let lhs = board.degree(Color::Blue, v) as f64 - params.beta * board.degree(Color::Red, v) as f64;
            audit.checks += 1;
            if lhs > degree_cap {
                audit.violations.push(format!("{label}: vertex {} has d_B - beta d_R = {lhs} > {degree_cap}", v + 1));
            }
        }
    };

    while !state.is_over() {
        let (mover, left) = state.whose_turn();
        if mover == Player::Alice {
            let e = match alice.choose(&state) {
                Ok(e) => e,
                Err(err) => {
                    audit.forfeit = Some(err.to_string());
                    break;
                }
            };
            if let Err(err) = state.play(e, Player::Alice) {
                audit.forfeit = Some(err.to_string());
                break;
            }
            continue;
        }

        // start of a Bob block: checkpoint (i,1)
        audit.rounds += 1;
        let i = audit.rounds;
        let board = state.board().clone();
        if all_qualified {
            check_degrees(&board, &format!("round {i} after Alice"), &mut audit);
        }
        let mut best = (f64::NEG_INFINITY, usize::MAX);
        for v in 0..order {
            if board.uncolored_adjacency(v) == 0 {
                continue;
            }
            let phi = potential_phi(&board, v, &params);
            if phi > best.0 {
                best = (phi, v);
            }
        }
        let w = best.1;
        let mut placed = Vec::new();
        for _ in 0..left {
            if state.is_over() {
                break;
            }
            let e = bob.choose(&state).expect("star blocker has a move while edges remain");
            state.play(e, Player::Bob).expect("star blocker plays legal edges");
            placed.push(e);
        }
        let qualifies = placed.len() == params.q && placed.iter().all(|e| e.touches(w));

        // checkpoint (i,2)
        let board = state.board();
        let sum = potential_sum(board, &params);
        if all_qualified {
            check_degrees(board, &format!("round {i} after Bob"), &mut audit);
        }
        if qualifies {
            audit.qualifying += 1;
            audit.checks += 1;
            if !(sum < prev_sum) {
                audit.violations.push(format!("round {i}: potential sum {sum} did not drop below {prev_sum}"));
            }
        } else {
            all_qualified = false;
        }
        if all_qualified {
            audit.checks += 1;
            if sum > order as f64 + SLACK {
                audit.violations.push(format!("round {i}: potential sum {sum} exceeds N = {order}"));
            }
        }
        prev_sum = sum;
    }
    let board = state.board();
    audit.max_blue_degree = (0..order).map(|v| board.degree(Color::Blue, v)).max().unwrap_or(0);
    audit.outcome = state.outcome();
    audit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Mode;
    use crate::graph::TargetGraph;

    fn f(p: usize, eps: f64, x: f64) -> f64 {
        alpha_f(p, eps, x)
    }

    #[test]
    fn f_vanishes_at_one() {
        for p in 1..6 {
            for eps in [0.01, 0.25, 0.5, 1.0, 3.0] {
                assert_eq!(f(p, eps, 1.0), 0.0);
            }
        }
    }

    #[test]
    fn alpha_examples() {
        assert!((f(1, 0.5, 1.1) - (-0.0303)).abs() < 1e-3);
        let a = choose_alpha(1, 1, 0.5).unwrap();
        assert!(a >= 1.1);
        assert!(f(1, 0.5, a) < -ALPHA_MARGIN);
        // one grid step further fails
        assert!(f(1, 0.5, a + 1.0 / (1u64 << ALPHA_GRID_BITS) as f64) >= -ALPHA_MARGIN);
        assert!((f(2, 1.0, 1.05) - (-0.026)).abs() < 1e-3);
        assert!(choose_alpha(2, 1, 1.0).unwrap() >= 1.05);
    }

    #[test]
    fn alpha_rejects_bad_inputs() {
        assert!(matches!(choose_alpha(1, 1, 0.0), Err(StrategyError::NoAlpha { .. })));
        assert!(matches!(choose_alpha(1, 2, 0.5), Err(StrategyError::NoAlpha { .. })));
    }

    #[test]
    fn n0_scan_agrees_with_brute_force() {
        for &(p, q, eps, alpha) in &[(1, 1, 0.5, 1.1), (2, 1, 1.0, 1.05), (2, 2, 0.25, 1.02), (3, 2, 0.1, 1.01)] {
            let n0 = compute_n0(p, q, eps, alpha);
            let (pf, qf) = (p as f64, q as f64);
            let c = (2.0 * pf * pf - 2.0 * pf + qf) / (2.0 * pf * qf);
            let g = |n: u64| ((2.0 * pf + qf) * n as f64 / (2.0 * pf)).log(alpha) + pf - c * eps * n as f64;
            let last_bad = (1..n0 * 4 + 1000).filter(|&n| g(n) > 0.0).max().unwrap_or(0);
            assert_eq!(n0, last_bad + 1, "p={p} q={q} eps={eps}");
        }
        let n0 = compute_n0(1, 1, 0.5, 1.1);
        assert!((245..=265).contains(&n0), "{n0}");
        assert!(compute_n0(1, 1, 0.5, 1.2) <= n0);
    }

    #[test]
    fn phi_values() {
        let params = BlockerParams::with_alpha(1, 1, 0.5, 10, 1.1);
        let mut b = ColoredBoard::empty(6);
        assert_eq!(potential_phi(&b, 0, &params), 1.0);
        b.set(Edge::new(0, 1), Some(Color::Blue));
        b.set(Edge::new(0, 2), Some(Color::Blue));
        b.set(Edge::new(0, 3), Some(Color::Red));
        assert!((potential_phi(&b, 0, &params) - 0.95346).abs() < 1e-5);
        b.set(Edge::new(0, 4), Some(Color::Red));
        b.set(Edge::new(0, 5), Some(Color::Red));
        assert_eq!(potential_phi(&b, 0, &params), 0.0);
    }

    #[test]
    fn block_planning() {
        let params = BlockerParams::with_alpha(1, 1, 0.5, 5, 1.1);
        let st = BoardState::new_game(8, 1, 1, TargetGraph::star(5), Mode::Weak).unwrap();
        assert_eq!(star_blocker_moves(&st, &params), vec![Edge::new(0, 1)]);

        let mut b = ColoredBoard::empty(8);
        for x in [0, 1, 2] {
            b.set(Edge::new(6, x), Some(Color::Blue));
        }
        let plan = plan_block(&b, &params, 1);
        assert_eq!(plan.w, Some(6));
        assert_eq!(plan.edges, vec![Edge::new(6, 3)]);

        // w = 0 has a single uncoloured edge left; the second edge goes to the
        // next-ranked vertex
        let params = BlockerParams::with_alpha(2, 2, 0.5, 5, 1.1);
        let mut b = ColoredBoard::empty(5);
        b.set(Edge::new(0, 1), Some(Color::Blue));
        b.set(Edge::new(0, 2), Some(Color::Blue));
        b.set(Edge::new(0, 3), Some(Color::Blue));
        b.set(Edge::new(1, 2), Some(Color::Blue));
        let plan = plan_block(&b, &params, 2);
        assert_eq!(plan.w, Some(0));
        assert_eq!(plan.at_w, 1);
        assert_eq!(plan.edges, vec![Edge::new(0, 4), Edge::new(1, 3)]);
    }
}
