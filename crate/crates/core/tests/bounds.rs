use ramsey_core::bounds::*;
use ramsey_core::strategies::{choose_alpha, compute_n0, BlockerParams};

// Frozen from an independent 40-digit evaluation.
#[test]
fn classical_star_values() {
    for (n, want) in [
        (10, 7.2914704076331973722),
        (100, 149.57774921782593991),
        (1000, 1816.0498635176229691),
        (10000, 19347.018727730202031),
    ] {
        let (lo, hi) = star_bounds_classical(n).unwrap();
        assert!((lo - want).abs() < 1e-9 * want, "n={n}: {lo}");
        assert_eq!(hi, (2 * n - 2) as f64);
    }
}

#[test]
fn alpha_and_n0_for_unit_bias() {
    let alpha = choose_alpha(1, 1, 0.5).unwrap();
    assert_eq!(alpha, 1.0 + 408_305.0 / 1_048_576.0);
    let params = BlockerParams::with_alpha(1, 1, 0.5, 100, alpha);
    assert!(params.f(alpha) < 0.0 && params.f(alpha + 1.0 / 1_048_576.0) > 0.0);
    assert_eq!(compute_n0(1, 1, 0.5, alpha), 59);
}

#[test]
fn tree_bound_grid() {
    for p in 1..=3 {
        for q in 1..=p {
            for n in 2..=40 {
                let (lo, hi) = tree_bounds(n, p, q).unwrap();
                assert_eq!(lo, n);
                assert!(hi >= n && hi <= 2 * n - 2);
                if p == 1 && q == 1 {
                    assert_eq!(hi, 2 * n - 2);
                }
            }
        }
    }
}

#[test]
fn discrepancy_report_for_100() {
    let r = star_draw_report(100).unwrap();
    assert_eq!((r.board.floor, r.board.ceil), (149, 150));
    assert!(r.floor.unwrap().certified);
    assert!(r.ceil.unwrap().certified);
    let inst = build_discrepancy_instance(198).unwrap();
    let cert = draw_degree_bound(198, 100, &inst);
    assert!(!cert.certified);
    assert_eq!(cert.failing.len(), 198);
}

#[test]
fn small_orders_and_errors() {
    assert!(build_discrepancy_instance(3).is_ok());
    // C(4,2) = 6 is even: two removed edges
    assert_eq!(build_discrepancy_instance(4).unwrap().removed.len(), 2);
    assert!(star_bounds_classical(2).is_err());
    assert!(star_lower_bound_biased(10, 1, 2, 0.1).is_err());
}
