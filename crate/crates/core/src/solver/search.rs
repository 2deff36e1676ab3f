use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::game::{turn_for, BoardState, GameConfig, Mode, Outcome, Player};
use crate::graph::{canonical_code, edge_count, edge_endpoints, Color, Edge, TargetGraph, CANON_MAX_ORDER};

/// Largest board the solver accepts (edge masks are `u32`).
pub const SOLVER_MAX_ORDER: usize = CANON_MAX_ORDER;

const BOB: u8 = 0;
const DRAW: u8 = 1;
const ALICE: u8 = 2;

fn to_outcome(v: u8) -> Outcome {
    match v {
        ALICE => Outcome::AliceWin,
        DRAW => Outcome::Draw,
        _ => Outcome::BobWin,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Node budget; exceeding it yields [`SolverError::Unsolved`].
    pub budget: u64,
    pub threads: usize,
    pub use_table: bool,
    pub want_pv: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: 2_000_000_000, threads: 1, use_table: true, want_pv: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub nodes_expanded: u64,
    pub table_hits: u64,
    pub table_size: usize,
    /// One optimal line from the solved position.
    pub pv: Vec<(Edge, Color)>,
}

/// Copies of the target as edge masks, plus per-game constants.
struct Rules {
    n: usize,
    p: usize,
    q: usize,
    mode: Mode,
    full: u32,
    ends: Vec<(usize, usize)>,
    copies: Vec<u32>,
}

struct Scan {
    blue_alive: bool,
    red_alive: bool,
    blue_threats: u32,
    red_threats: u32,
}

impl Rules {
    fn new(config: &GameConfig) -> Self {
        let n = config.order;
        let m = edge_count(n);
        let ends = (0..m).map(edge_endpoints).collect();
        let mut copies = Vec::new();
        let target = &config.target;
        if target.vertex_count() <= n {
            let mut map = vec![usize::MAX; target.vertex_count()];
            let mut used = vec![false; n];
            enumerate_copies(target, n, 0, &mut map, &mut used, &mut copies);
            copies.sort_unstable();
            copies.dedup();
        }
        Rules {
            n,
            p: config.p,
            q: config.q,
            mode: config.mode,
            full: if m == 32 { u32::MAX } else { (1u32 << m) - 1 },
            ends,
            copies,
        }
    }

    fn scan(&self, blue: u32, red: u32) -> Scan {
        let strong = self.mode == Mode::Strong;
        let mut s = Scan { blue_alive: false, red_alive: false, blue_threats: 0, red_threats: 0 };
        for &c in &self.copies {
            if c & red == 0 {
                s.blue_alive = true;
                let missing = c & !blue;
                if missing.count_ones() == 1 {
                    s.blue_threats |= missing;
                }
            }
            if strong && c & blue == 0 {
                s.red_alive = true;
                let missing = c & !red;
                if missing.count_ones() == 1 {
                    s.red_threats |= missing;
                }
            }
        }
        s
    }

    fn exhausted(&self) -> u8 {
        match self.mode {
            Mode::Strong => DRAW,
            Mode::Weak => BOB,
        }
    }

    fn turn(&self, blue: u32, red: u32) -> (Player, usize) {
        let free = (self.full & !(blue | red)).count_ones() as usize;
        turn_for(blue.count_ones() as usize, red.count_ones() as usize, self.p, self.q, free)
    }

    fn key(&self, blue: u32, red: u32) -> u64 {
        let mut b = [0u8; CANON_MAX_ORDER];
        let mut r = [0u8; CANON_MAX_ORDER];
        for (i, &(x, y)) in self.ends.iter().enumerate() {
            if blue >> i & 1 == 1 {
                b[x] |= 1 << y;
                b[y] |= 1 << x;
            } else if red >> i & 1 == 1 {
                r[x] |= 1 << y;
                r[y] |= 1 << x;
            }
        }
        canonical_code(self.n, &b[..self.n], &r[..self.n])
    }

    /// Candidate edges, busiest blue vertices first.
    fn ordered(&self, blue: u32, candidates: u32) -> Vec<usize> {
        let mut deg = [0u32; CANON_MAX_ORDER];
        for (i, &(x, y)) in self.ends.iter().enumerate() {
            if blue >> i & 1 == 1 {
                deg[x] += 1;
                deg[y] += 1;
            }
        }
        let mut moves: Vec<usize> = (0..self.ends.len()).filter(|&i| candidates >> i & 1 == 1).collect();
        moves.sort_by_key(|&i| {
            let (x, y) = self.ends[i];
            std::cmp::Reverse(deg[x] + deg[y])
        });
        moves
    }
}

fn enumerate_copies(
    target: &TargetGraph,
    n: usize,
    k: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<u32>,
) {
    if k == map.len() {
        let mask = target
            .edges()
            .iter()
            .fold(0u32, |m, e| m | 1 << Edge::new(map[e.lo()], map[e.hi()]).index());
        out.push(mask);
        return;
    }
    for b in 0..n {
        if !used[b] {
            used[b] = true;
            map[k] = b;
            enumerate_copies(target, n, k + 1, map, used, out);
            used[b] = false;
        }
    }
}

struct Search<'a> {
    rules: &'a Rules,
    table: Option<DashMap<u64, u8>>,
    nodes: AtomicU64,
    hits: AtomicU64,
    budget: u64,
    out_of_budget: AtomicBool,
}

/// Outcome of a move for the mover, known without search.
enum Step {
    Known(u8),
    Node { blue: u32, red: u32 },
}

impl<'a> Search<'a> {
    fn new(rules: &'a Rules, opts: &SolveOptions) -> Self {
        Search {
            rules,
            table: opts.use_table.then(DashMap::new),
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
            budget: opts.budget,
            out_of_budget: AtomicBool::new(false),
        }
    }

    fn step(&self, blue: u32, red: u32, e: usize, mover: Player) -> Step {
        let bit = 1u32 << e;
        let (blue, red) = match mover {
            Player::Alice => (blue | bit, red),
            Player::Bob => (blue, red | bit),
        };
        if (blue | red) == self.rules.full {
            // wins were ruled out by the caller's threat scan
            return Step::Known(self.rules.exhausted());
        }
        Step::Node { blue, red }
    }

    /// Immediate result at a node, or the moves that need searching.
    fn expand(&self, blue: u32, red: u32) -> Result<u8, (Player, Vec<usize>)> {
        let r = self.rules;
        let free = r.full & !(blue | red);
        let (mover, left) = r.turn(blue, red);
        let s = r.scan(blue, red);
        let (mine, theirs) = match mover {
            Player::Alice => (s.blue_threats, s.red_threats),
            Player::Bob => (s.red_threats, s.blue_threats),
        };
        if mine & free != 0 {
            return Ok(if mover == Player::Alice { ALICE } else { BOB });
        }
        if !s.blue_alive && !s.red_alive {
            return Ok(r.exhausted());
        }
        let mut candidates = free;
        let theirs = theirs & free;
        if left == 1 && free.count_ones() > 1 && theirs != 0 {
            if theirs.count_ones() >= 2 {
                return Ok(if mover == Player::Alice { BOB } else { ALICE });
            }
            candidates = theirs;
        }
        Err((mover, r.ordered(blue, candidates)))
    }

    fn lookup(&self, key: u64) -> Option<u8> {
        let v = self.table.as_ref()?.get(&key).map(|v| *v);
        if v.is_some() {
            self.hits.fetch_add(1, Ordering::Relaxed);
        }
        v
    }

    fn value(&self, blue: u32, red: u32, key: u64) -> Option<u8> {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed);
        if count >= self.budget || self.out_of_budget.load(Ordering::Relaxed) {
            self.out_of_budget.store(true, Ordering::Relaxed);
            return None;
        }
        let (mover, moves) = match self.expand(blue, red) {
            Ok(v) => return Some(v),
            Err(x) => x,
        };
        let target = if mover == Player::Alice { ALICE } else { BOB };
        let mut best = if mover == Player::Alice { BOB } else { ALICE };
        let mut seen: Vec<u64> = Vec::with_capacity(moves.len());
        for e in moves {
            let v = match self.step(blue, red, e, mover) {
                Step::Known(v) => v,
                Step::Node { blue, red } => {
                    if self.table.is_some() {
                        let k = self.rules.key(blue, red);
                        if seen.contains(&k) {
                            continue;
                        }
                        seen.push(k);
                        match self.lookup(k) {
                            Some(v) => v,
                            None => self.value(blue, red, k)?,
                        }
                    } else {
                        self.value(blue, red, 0)?
                    }
                }
            };
            best = if mover == Player::Alice { best.max(v) } else { best.min(v) };
            if best == target {
                break;
            }
        }
        if let Some(t) = &self.table {
            t.insert(key, best);
        }
        Some(best)
    }

    /// Root evaluation, spreading the root moves over `threads` workers.
    fn root(&self, blue: u32, red: u32, threads: usize) -> Option<u8> {
        let key = if self.table.is_some() { self.rules.key(blue, red) } else { 0 };
        if threads <= 1 {
            return self.value(blue, red, key);
        }
        let (mover, moves) = match self.expand(blue, red) {
            Ok(v) => return Some(v),
            Err(x) => x,
        };
        let mut children: Vec<Step> = Vec::new();
        let mut seen = Vec::new();
        for e in moves {
            let st = self.step(blue, red, e, mover);
            if let (Step::Node { blue, red }, true) = (&st, self.table.is_some()) {
                let k = self.rules.key(*blue, *red);
                if seen.contains(&k) {
                    continue;
                }
                seen.push(k);
            }
            children.push(st);
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().ok()?;
        let values: Vec<Option<u8>> = pool.install(|| {
            children
                .par_iter()
                .map(|st| match *st {
                    Step::Known(v) => Some(v),
                    Step::Node { blue, red } => {
                        let k = if self.table.is_some() { self.rules.key(blue, red) } else { 0 };
                        self.lookup(k).or_else(|| self.value(blue, red, k))
                    }
                })
                .collect()
        });
        let mut best = if mover == Player::Alice { BOB } else { ALICE };
        for v in values {
            let v = v?;
            best = if mover == Player::Alice { best.max(v) } else { best.min(v) };
        }
        if let Some(t) = &self.table {
            t.insert(key, best);
        }
        Some(best)
    }

    fn child_value(&self, blue: u32, red: u32, e: usize, mover: Player) -> Option<u8> {
        let r = self.rules;
        let bit = 1u32 << e;
        let s = r.scan(blue, red);
        let wins = match mover {
            Player::Alice => s.blue_threats & bit != 0,
            Player::Bob => s.red_threats & bit != 0,
        };
        if wins {
            return Some(if mover == Player::Alice { ALICE } else { BOB });
        }
        match self.step(blue, red, e, mover) {
            Step::Known(v) => Some(v),
            Step::Node { blue, red } => {
                let k = if self.table.is_some() { r.key(blue, red) } else { 0 };
                self.lookup(k).or_else(|| self.value(blue, red, k))
            }
        }
    }

    /// Walks one optimal line, re-searching children where needed.
    fn principal_variation(&self, mut blue: u32, mut red: u32, mut val: u8) -> Option<Vec<(Edge, Color)>> {
        let r = self.rules;
        let mut line = Vec::new();
        loop {
            let free = r.full & !(blue | red);
            if free == 0 {
                break;
            }
            let (mover, _) = r.turn(blue, red);
            let mut chosen = None;
            for e in r.ordered(blue, free) {
                if self.child_value(blue, red, e, mover)? == val {
                    chosen = Some(e);
                    break;
                }
            }
            let e = chosen?;
            let bit = 1u32 << e;
            let s = r.scan(blue, red);
            let ends_game = match mover {
                Player::Alice => s.blue_threats & bit != 0,
                Player::Bob => s.red_threats & bit != 0,
            };
            line.push((Edge::from_index(e), mover.color()));
            if ends_game {
                break;
            }
            match mover {
                Player::Alice => blue |= bit,
                Player::Bob => red |= bit,
            }
            val = self.child_value_after(blue, red)?;
        }
        Some(line)
    }

    fn child_value_after(&self, blue: u32, red: u32) -> Option<u8> {
        if (blue | red) == self.rules.full {
            return Some(self.rules.exhausted());
        }
        let k = if self.table.is_some() { self.rules.key(blue, red) } else { 0 };
        self.lookup(k).or_else(|| self.value(blue, red, k))
    }
}

/// Solves the game from the empty board.
pub fn solve(order: usize, p: usize, q: usize, target: &TargetGraph, mode: Mode, opts: &SolveOptions) -> Result<SolveResult, SolverError> {
    let config = GameConfig::new(order, p, q, target.clone(), mode)?;
    solve_position(&BoardState::from_config(config), opts)
}

/// Solves an arbitrary legal position.
pub fn solve_position(state: &BoardState, opts: &SolveOptions) -> Result<SolveResult, SolverError> {
    let config = state.config();
    if config.order > SOLVER_MAX_ORDER {
        return Err(SolverError::TooLarge { order: config.order, cap: SOLVER_MAX_ORDER });
    }
    if state.is_over() {
        return Ok(SolveResult { outcome: state.outcome().value, nodes_expanded: 0, table_hits: 0, table_size: 0, pv: Vec::new() });
    }
    let rules = Rules::new(config);
    let mut blue = 0u32;
    let mut red = 0u32;
    for &(e, c) in state.move_log() {
        match c {
            Color::Blue => blue |= 1 << e.index(),
            Color::Red => red |= 1 << e.index(),
        }
    }
    if rules.copies.is_empty() {
        // the target does not fit on the board
        return Ok(SolveResult {
            outcome: to_outcome(rules.exhausted()),
            nodes_expanded: 0,
            table_hits: 0,
            table_size: 0,
            pv: Vec::new(),
        });
    }
    let search = Search::new(&rules, opts);
    let unsolved = || SolverError::Unsolved { budget: opts.budget };
    let v = search.root(blue, red, opts.threads).ok_or_else(unsolved)?;
    let pv = if opts.want_pv { search.principal_variation(blue, red, v).ok_or_else(unsolved)? } else { Vec::new() };
    Ok(SolveResult {
        outcome: to_outcome(v),
        nodes_expanded: search.nodes.load(Ordering::Relaxed),
        table_hits: search.hits.load(Ordering::Relaxed),
        table_size: search.table.as_ref().map_or(0, |t| t.len()),
        pv,
    })
}

/// Per-board outcomes and the smallest winning board.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AchievementReport {
    pub target: String,
    pub p: usize,
    pub q: usize,
    pub mode: Mode,
    pub per_n: Vec<(usize, Option<Outcome>)>,
    /// Smallest `N` with an Alice win, provided every smaller board solved.
    pub value: Option<usize>,
    pub nodes: u64,
    pub diagnostics: Vec<String>,
}

/// Solves every board from the target's order up to `n_max`.
///
/// All boards are solved even after the first win, since winning need not
/// be monotone in `N`.
pub fn achievement_number(
    target: &TargetGraph,
    p: usize,
    q: usize,
    mode: Mode,
    n_max: usize,
    opts: &SolveOptions,
) -> Result<AchievementReport, SolverError> {
    if n_max > SOLVER_MAX_ORDER {
        return Err(SolverError::TooLarge { order: n_max, cap: SOLVER_MAX_ORDER });
    }
    let mut report = AchievementReport {
        target: target.to_text(),
        p,
        q,
        mode,
        per_n: Vec::new(),
        value: None,
        nodes: 0,
        diagnostics: Vec::new(),
    };
    let mut blocked = false;
    let opts = SolveOptions { want_pv: false, ..opts.clone() };
    for n in 2..=n_max {
        if n < target.vertex_count() {
            report.per_n.push((n, Some(to_outcome(if mode == Mode::Strong { DRAW } else { BOB }))));
            continue;
        }
        match solve(n, p, q, target, mode, &opts) {
            Ok(r) => {
                report.nodes += r.nodes_expanded;
                if r.outcome == Outcome::AliceWin && report.value.is_none() && !blocked {
                    report.value = Some(n);
                }
                report.per_n.push((n, Some(r.outcome)));
            }
            Err(SolverError::Unsolved { budget }) => {
                report.diagnostics.push(format!("K{n}: unsolved within {budget} nodes"));
                report.per_n.push((n, None));
                if report.value.is_none() {
                    blocked = true;
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub strong: AchievementReport,
    pub weak: AchievementReport,
    /// `a*(F) ≤ a(F)`, and every strong Alice win is also a weak one.
    pub consistent: bool,
}

pub fn cross_check_weak_vs_strong(
    target: &TargetGraph,
    p: usize,
    q: usize,
    n_max: usize,
    opts: &SolveOptions,
) -> Result<CrossCheck, SolverError> {
    let strong = achievement_number(target, p, q, Mode::Strong, n_max, opts)?;
    let weak = achievement_number(target, p, q, Mode::Weak, n_max, opts)?;
    let order_ok = match (weak.value, strong.value) {
        (Some(w), Some(s)) => w <= s,
        (None, Some(_)) => false,
        _ => true,
    };
    let pointwise = strong.per_n.iter().zip(&weak.per_n).all(|((_, s), (_, w))| match (s, w) {
        (Some(Outcome::AliceWin), Some(w)) => *w == Outcome::AliceWin,
        _ => true,
    });
    Ok(CrossCheck { consistent: order_ok && pointwise, strong, weak })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    #[test]
    fn small_paths() {
        let p3 = TargetGraph::path(3);
        assert_eq!(solve(3, 1, 1, &p3, Mode::Strong, &opts()).unwrap().outcome, Outcome::AliceWin);
        let p4 = TargetGraph::path(4);
        assert_ne!(solve(4, 1, 1, &p4, Mode::Strong, &opts()).unwrap().outcome, Outcome::AliceWin);
        assert_eq!(solve(5, 1, 1, &p4, Mode::Strong, &opts()).unwrap().outcome, Outcome::AliceWin);
    }

    #[test]
    fn target_larger_than_board() {
        let p6 = TargetGraph::path(6);
        let r = solve(5, 1, 1, &p6, Mode::Strong, &opts()).unwrap();
        assert_eq!((r.outcome, r.nodes_expanded), (Outcome::Draw, 0));
        let r = solve(5, 1, 1, &p6, Mode::Weak, &opts()).unwrap();
        assert_eq!(r.outcome, Outcome::BobWin);
    }

    #[test]
    fn principal_variation_replays() {
        let p4 = TargetGraph::path(4);
        let r = solve(5, 1, 1, &p4, Mode::Strong, &opts()).unwrap();
        let config = GameConfig::new(5, 1, 1, p4, Mode::Strong).unwrap();
        let st = BoardState::replay(config, &r.pv).unwrap();
        assert_eq!(st.outcome().value, Outcome::AliceWin);
    }

    #[test]
    fn budget_is_reported() {
        let p5 = TargetGraph::path(5);
        let o = SolveOptions { budget: 10, ..opts() };
        assert_eq!(solve(6, 1, 1, &p5, Mode::Strong, &o).unwrap_err(), SolverError::Unsolved { budget: 10 });
    }

    #[test]
    fn threads_agree() {
        let k13 = TargetGraph::star(3);
        let one = solve(5, 1, 1, &k13, Mode::Strong, &opts()).unwrap();
        let four = solve(5, 1, 1, &k13, Mode::Strong, &SolveOptions { threads: 4, ..opts() }).unwrap();
        assert_eq!(one.outcome, four.outcome);
    }
}
