use ramsey_core::game::{GameConfig, Mode, Outcome, Player};
use ramsey_core::graph::TargetGraph;
use ramsey_core::reference::{nonisomorphic_trees, solve_brute};
use ramsey_core::solver::{achievement_number, solve, verify_strategy, SolveOptions, VerifyOptions};
use ramsey_core::strategies::{PathBuilder, TreeBuilder};

fn opts() -> SolveOptions {
    SolveOptions::default()
}

// Settled by search; the brute solver agrees.
#[test]
fn k4_p4_strong_is_a_draw() {
    let r = solve(4, 1, 1, &TargetGraph::path(4), Mode::Strong, &opts()).unwrap();
    assert_eq!(r.outcome, Outcome::Draw);
    assert_eq!(solve_brute(4, 1, 1, &TargetGraph::path(4), Mode::Strong), Outcome::Draw);
}

#[test]
fn weak_p4_on_k4_is_a_breaker_win() {
    let r = solve(4, 1, 1, &TargetGraph::path(4), Mode::Weak, &opts()).unwrap();
    assert_eq!(r.outcome, Outcome::BobWin);
}

#[test]
fn per_n_outcomes_p4() {
    let r = achievement_number(&TargetGraph::path(4), 1, 1, Mode::Strong, 6, &opts()).unwrap();
    let got: Vec<Option<Outcome>> = r.per_n.iter().map(|&(_, o)| o).collect();
    use Outcome::*;
    assert_eq!(got, vec![Some(Draw), Some(Draw), Some(Draw), Some(AliceWin), Some(AliceWin)]);
}

#[test]
fn solver_matches_brute_on_small_boards() {
    let targets = [TargetGraph::path(3), TargetGraph::path(4), TargetGraph::star(3), TargetGraph::cycle(3)];
    for order in 3..=5 {
        for t in &targets {
            for (p, q) in [(1, 1), (2, 1), (2, 2)] {
                for mode in [Mode::Strong, Mode::Weak] {
                    let fast = solve(order, p, q, t, mode, &opts()).unwrap().outcome;
                    let slow = solve_brute(order, p, q, t, mode);
                    assert_eq!(fast, slow, "K{order} {} ({p},{q}) {mode:?}", t.label());
                }
            }
        }
    }
}

#[test]
fn table_does_not_change_values() {
    let no_table = SolveOptions { use_table: false, ..opts() };
    for (order, t) in [(5, TargetGraph::path(4)), (5, TargetGraph::star(3)), (5, TargetGraph::path(5))] {
        for mode in [Mode::Strong, Mode::Weak] {
            let a = solve(order, 1, 1, &t, mode, &opts()).unwrap().outcome;
            let b = solve(order, 1, 1, &t, mode, &no_table).unwrap().outcome;
            assert_eq!(a, b, "K{order} {} {mode:?}", t.label());
        }
    }
}

// A verified strategy means the solver must find an Alice win too.
#[test]
fn verified_strategies_agree_with_solver() {
    for n in 5..=6 {
        let config = GameConfig::new(n, 1, 1, TargetGraph::path(n), Mode::Strong).unwrap();
        let v = verify_strategy(&PathBuilder::new(), Player::Alice, config, &VerifyOptions::default()).unwrap();
        assert!(v.is_verified());
        let r = solve(n, 1, 1, &TargetGraph::path(n), Mode::Strong, &opts()).unwrap();
        assert_eq!(r.outcome, Outcome::AliceWin);
    }
    for tree in nonisomorphic_trees(4) {
        let config = GameConfig::new(6, 1, 1, tree.clone(), Mode::Strong).unwrap();
        let v = verify_strategy(&TreeBuilder::new(), Player::Alice, config, &VerifyOptions::default()).unwrap();
        assert!(v.is_verified());
        assert_eq!(solve(6, 1, 1, &tree, Mode::Strong, &opts()).unwrap().outcome, Outcome::AliceWin);
    }
}

// Upper tree bound: the tree builder wins on N = n + q*floor((n-2)/p) for
// every bias tried, including ones outside the acceptance grid.
#[test]
fn tree_bound_boards_are_wins() {
    for (p, q) in [(2, 2), (3, 1), (3, 2)] {
        for n in 2..=5 {
            for tree in nonisomorphic_trees(n) {
                let order = n + q * ((n - 2) / p);
                let config = GameConfig::new(order, p, q, tree.clone(), Mode::Strong).unwrap();
                let v = verify_strategy(&TreeBuilder::new(), Player::Alice, config, &VerifyOptions::default()).unwrap();
                assert!(v.is_verified(), "{} ({p},{q}) on K{order}", tree.to_text());
            }
        }
    }
}
