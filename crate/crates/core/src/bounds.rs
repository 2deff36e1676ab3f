//! Closed-form bounds and the discrepancy-game construction for stars.
//!
//! All real-valued quantities are plain `f64`; comparisons against
//! thresholds use an absolute slack of [`SLACK`].

use serde::{Deserialize, Serialize};

use crate::error::BoundsError;
use crate::graph::{edge_count, edge_endpoints};
use crate::strategies::{choose_alpha, compute_n0};

pub const SLACK: f64 = 1e-12;

fn invalid(msg: impl Into<String>) -> BoundsError {
    BoundsError::Invalid(msg.into())
}

/// `(n, n + q·⌊(n-2)/p⌋)` for trees of order `n`.
pub fn tree_bounds(n: u64, p: u64, q: u64) -> Result<(u64, u64), BoundsError> {
    if n < 2 {
        return Err(invalid("tree order must be at least 2"));
    }
    if q == 0 || p < q {
        return Err(invalid(format!("need p >= q >= 1, got p={p} q={q}")));
    }
    Ok((n, n + q * ((n - 2) / p)))
}

/// `(2n-2-√((4n-8)·ln(4n-4)), 2n-2)` for the star `K_{1,n-1}`.
pub fn star_bounds_classical(n: u64) -> Result<(f64, f64), BoundsError> {
    if n < 3 {
        return Err(invalid("star bounds need n >= 3"));
    }
    let upper = (2 * n - 2) as f64;
    let spread = ((4 * n - 8) as f64 * ((4 * n - 4) as f64).ln()).sqrt();
    Ok((upper - spread, upper))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiasedStarBound {
    /// `(1 + q/2p - ε)·n`.
    pub value: f64,
    pub n0: u64,
    pub alpha: f64,
    /// Whether `n ≥ n0`, i.e. the bound is actually claimed for this `n`.
    pub applicable: bool,
}

/// Lower bound for `K_{1,n}` in the biased game, with the threshold `n0`
/// it needs. The caller decides what to do when `n < n0`.
pub fn star_lower_bound_biased(n: u64, p: usize, q: usize, eps: f64) -> Result<BiasedStarBound, BoundsError> {
    if q == 0 || p < q {
        return Err(invalid(format!("need p >= q >= 1, got p={p} q={q}")));
    }
    let alpha = choose_alpha(p, q, eps)?;
    let n0 = compute_n0(p, q, eps, alpha);
    let value = (1.0 + q as f64 / (2 * p) as f64 - eps) * n as f64;
    Ok(BiasedStarBound { value, n0, alpha, applicable: n >= n0 })
}

/// The non-integral board order `2n-2-√((4n-8)ln(4n-4))` with both roundings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarBoard {
    pub exact: f64,
    pub floor: u64,
    pub ceil: u64,
}

pub fn star_board_order(n: u64) -> Result<StarBoard, BoundsError> {
    let (lower, _) = star_bounds_classical(n)?;
    let lower = lower.max(0.0);
    Ok(StarBoard { exact: lower, floor: lower.floor() as u64, ceil: lower.ceil() as u64 })
}

/// Hypergraph on the edges of `K_N` minus one or two removed edges, with
/// one hyperedge per vertex (its incident surviving edges). Pairs are
/// zero-based `(u, v)` with `u < v`; orders are not limited by the board cap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyInstance {
    pub order: usize,
    pub elements: Vec<(usize, usize)>,
    /// `hyperedges[i]` lists indices into `elements` incident to vertex `i`.
    pub hyperedges: Vec<Vec<usize>>,
    pub targets: Vec<f64>,
    pub removed: Vec<(usize, usize)>,
}

impl DiscrepancyInstance {
    /// No elements and no hyperedges.
    pub fn empty(order: usize) -> Self {
        DiscrepancyInstance { order, elements: Vec::new(), hyperedges: Vec::new(), targets: Vec::new(), removed: Vec::new() }
    }

    /// Same instance with every target multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.targets.iter_mut().for_each(|b| *b *= factor);
        out
    }

    pub fn touches_removed(&self, v: usize) -> bool {
        self.removed.iter().any(|&(a, b)| a == v || b == v)
    }
}

/// Removes `e = 1-2`, and also `f = 3-4` when `C(N,2)` is even, so the
/// board has an even number of elements. Targets are
/// `b_i = √(2|e_i|·ln(2N))`.
pub fn build_discrepancy_instance(order: usize) -> Result<DiscrepancyInstance, BoundsError> {
    if order < 2 {
        return Err(invalid("board needs at least two vertices"));
    }
    let total = edge_count(order);
    let mut removed = vec![(0, 1)];
    if total.is_multiple_of(2) {
        if order < 4 {
            return Err(invalid(format!("K{order} has an even edge count but no edge disjoint from 1-2")));
        }
        removed.push((2, 3));
    }
    let elements: Vec<(usize, usize)> = (0..total).map(edge_endpoints).filter(|e| !removed.contains(e)).collect();
    let mut hyperedges = vec![Vec::new(); order];
    for (i, &(u, v)) in elements.iter().enumerate() {
        hyperedges[u].push(i);
        hyperedges[v].push(i);
    }
    let log = (2.0 * order as f64).ln();
    let targets = hyperedges.iter().map(|h| (2.0 * h.len() as f64 * log).sqrt()).collect();
    Ok(DiscrepancyInstance { order, elements, hyperedges, targets, removed })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BalancerCheck {
    pub holds: bool,
    pub sum: f64,
}

/// `Σ exp(-b_i²/(2|e_i|)) ≤ 1/2`. Empty hyperedges carry no constraint and
/// are left out of the sum.
pub fn check_balancer_condition(inst: &DiscrepancyInstance) -> BalancerCheck {
    let sum: f64 = inst
        .hyperedges
        .iter()
        .zip(&inst.targets)
        .filter(|(h, _)| !h.is_empty())
        .map(|(h, b)| (-(b * b) / (2.0 * h.len() as f64)).exp())
        .sum();
    BalancerCheck { holds: sum <= 0.5 + SLACK, sum }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrawCertificate {
    pub certified: bool,
    /// Largest `(N-1+b_i+[v_i touches a removed edge])/2` over vertices.
    pub worst: f64,
    /// Vertices (1-based) where the bound fails.
    pub failing: Vec<usize>,
}

/// With `d_B + d_R = N-1` and `|d_B - d_R| ≤ b_i` (plus one at the ends of a
/// removed edge), both degrees are at most `(N-1+b_i+1)/2`; the draw is
/// certified when that is below `n-1` at every vertex.
pub fn draw_degree_bound(order: usize, n: u64, inst: &DiscrepancyInstance) -> DrawCertificate {
    let limit = n as f64 - 1.0;
    let mut worst = f64::NEG_INFINITY;
    let mut failing = Vec::new();
    for (v, b) in inst.targets.iter().enumerate() {
        let extra = if inst.touches_removed(v) { 1.0 } else { 0.0 };
        let bound = (order as f64 - 1.0 + b + extra) / 2.0;
        worst = worst.max(bound);
        if !(bound < limit) {
            failing.push(v + 1);
        }
    }
    DrawCertificate { certified: failing.is_empty(), worst, failing }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarDrawReport {
    pub n: u64,
    pub board: StarBoard,
    pub floor: Option<DrawCertificate>,
    pub ceil: Option<DrawCertificate>,
    pub balancer_floor: Option<BalancerCheck>,
    pub balancer_ceil: Option<BalancerCheck>,
}

/// Runs the discrepancy construction at both roundings of the star board order.
pub fn star_draw_report(n: u64) -> Result<StarDrawReport, BoundsError> {
    let board = star_board_order(n)?;
    let at = |order: u64| -> (Option<DrawCertificate>, Option<BalancerCheck>) {
        match build_discrepancy_instance(order as usize) {
            Ok(inst) => (Some(draw_degree_bound(order as usize, n, &inst)), Some(check_balancer_condition(&inst))),
            Err(_) => (None, None),
        }
    };
    let (floor, balancer_floor) = at(board.floor);
    let (ceil, balancer_ceil) = at(board.ceil);
    Ok(StarDrawReport { n, board, floor, ceil, balancer_floor, balancer_ceil })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_bound_examples() {
        assert_eq!(tree_bounds(6, 1, 1).unwrap(), (6, 10));
        assert_eq!(tree_bounds(6, 2, 1).unwrap(), (6, 8));
        assert_eq!(tree_bounds(2, 3, 2).unwrap(), (2, 2));
        assert!(tree_bounds(5, 1, 2).is_err());
    }

    #[test]
    fn classical_star_examples() {
        let (lo, hi) = star_bounds_classical(3).unwrap();
        assert!((lo - 1.1159).abs() < 1e-4 && hi == 4.0);
        let (lo, hi) = star_bounds_classical(10).unwrap();
        assert!((lo - 7.292).abs() < 1e-3 && hi == 18.0);
        let (lo, _) = star_bounds_classical(4).unwrap();
        assert!((lo - 1.54).abs() < 0.01);
    }

    #[test]
    fn biased_star_examples() {
        let b = star_lower_bound_biased(100, 2, 1, 0.1).unwrap();
        assert!((b.value - 115.0).abs() < 1e-9);
        let b = star_lower_bound_biased(400, 1, 1, 0.5).unwrap();
        assert_eq!(b.value, 400.0);
        assert!(b.applicable);
    }

    #[test]
    fn instance_sizes() {
        let i5 = build_discrepancy_instance(5).unwrap();
        assert_eq!(i5.elements.len(), 8);
        let sizes: Vec<usize> = i5.hyperedges.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 3, 3, 3, 4]);
        let i4 = build_discrepancy_instance(4).unwrap();
        assert_eq!(i4.elements.len(), 4);
        assert!(i4.hyperedges.iter().all(|h| h.len() == 2));
        assert_eq!(build_discrepancy_instance(6).unwrap().elements.len(), 14);
        assert!(build_discrepancy_instance(1).is_err());
    }

    #[test]
    fn balancer_sum_is_half() {
        let inst = build_discrepancy_instance(9).unwrap();
        let c = check_balancer_condition(&inst);
        assert!(c.holds && (c.sum - 0.5).abs() < 1e-12);
        let halved = check_balancer_condition(&inst.scaled(0.5));
        assert!(!halved.holds);
        assert_eq!(check_balancer_condition(&DiscrepancyInstance::empty(0)).sum, 0.0);
    }

    #[test]
    fn draw_certificates() {
        let board = star_board_order(100).unwrap();
        assert_eq!(board.floor, 149);
        let inst = build_discrepancy_instance(149).unwrap();
        let c = draw_degree_bound(149, 100, &inst);
        assert!(c.certified && (c.worst - 94.963).abs() < 1e-3, "{c:?}");
        let inst = build_discrepancy_instance(198).unwrap();
        assert!(!draw_degree_bound(198, 100, &inst).certified);
        assert!(draw_degree_bound(1, 3, &DiscrepancyInstance::empty(1)).certified);
    }
}
