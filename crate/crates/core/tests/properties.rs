use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramsey_core::acceptance::random_board;
use ramsey_core::game::{turn_for, BoardState, GameConfig, MatchTranscript, Mode, Player};
use ramsey_core::graph::{canonical_form, contains_copy, Color, Edge, TargetGraph};
use ramsey_core::reference::{canonical_brute, contains_copy_brute, graphs_without_isolated, turn_sequence};
use ramsey_core::solver::{solve_position, SolveOptions};
use ramsey_core::strategies::{Baseline, BaselineKind};

fn targets() -> Vec<TargetGraph> {
    (2..=4).flat_map(graphs_without_isolated).collect()
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Plays `k` random legal moves from the empty board.
fn random_state(order: usize, p: usize, q: usize, target: TargetGraph, mode: Mode, k: usize, seed: u64) -> BoardState {
    let mut st = BoardState::new_game(order, p, q, target, mode).unwrap();
    let mut pick = Baseline::new(BaselineKind::UniformRandom { seed });
    for _ in 0..k {
        if st.is_over() {
            break;
        }
        let e = ramsey_core::strategies::Strategy::choose(&mut pick, &st).unwrap();
        st.play(e, st.whose_turn().0).unwrap();
    }
    st
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_labels(order in 2usize..=8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let board = random_board(order, &mut rng);
        let perm = random_perm(order, &mut rng);
        prop_assert_eq!(canonical_form(&board).unwrap(), canonical_form(&board.permuted(&perm)).unwrap());
    }

    #[test]
    fn canonical_form_separates_like_brute(order in 2usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_board(order, &mut rng);
        let mut b = a.permuted(&random_perm(order, &mut rng));
        let e = Edge::from_index(rng.gen_range(0..b.edge_total()));
        b.set(e, [None, Some(Color::Blue), Some(Color::Red)][rng.gen_range(0..3)]);
        let fast = canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
        let slow = canonical_brute(&a) == canonical_brute(&b);
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn copy_detection_matches_injections(order in 2usize..=6, t in 0usize..9, seed in any::<u64>()) {
        let target = &targets()[t];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let board = random_board(order, &mut rng);
        for color in [Color::Blue, Color::Red] {
            let fast = contains_copy(&board, target, color);
            prop_assert_eq!(fast.is_some(), contains_copy_brute(&board, target, color));
            if let Some(emb) = fast {
                prop_assert!(emb.is_valid_for(&board, target, color));
            }
        }
    }

    #[test]
    fn turn_accounting(p in 1usize..=4, dq in 0usize..4, total in 1usize..60) {
        let q = (p - dq.min(p - 1)).max(1);
        let seq = turn_sequence(p, q, total);
        let (mut blue, mut red) = (0, 0);
        for &who in &seq {
            let (mover, left) = turn_for(blue, red, p, q, total - blue - red);
            prop_assert_eq!(mover, who);
            prop_assert!(left >= 1);
            match who {
                Player::Alice => blue += 1,
                Player::Bob => red += 1,
            }
        }
    }

    #[test]
    fn transcripts_round_trip(order in 3usize..=8, seed in any::<u64>(), weak in any::<bool>()) {
        let mode = if weak { Mode::Weak } else { Mode::Strong };
        let config = GameConfig::new(order, 2, 1, TargetGraph::path(3.min(order)), mode).unwrap();
        let mut a = Baseline::new(BaselineKind::UniformRandom { seed });
        let mut b = Baseline::new(BaselineKind::UniformRandom { seed: seed ^ 1 });
        let t = ramsey_core::game::play_match(&mut a, &mut b, config);
        let back = MatchTranscript::from_text(&t.to_text()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.replay().unwrap().outcome(), t.outcome);
    }

    #[test]
    fn solver_value_survives_relabelling(k in 0usize..5, seed in any::<u64>(), t in 0usize..3) {
        let target = [TargetGraph::path(4), TargetGraph::star(3), TargetGraph::path(5)][t].clone();
        let st = random_state(5, 1, 1, target, Mode::Strong, k, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = random_perm(5, &mut rng);
        let moved: Vec<(Edge, Color)> =
            st.move_log().iter().map(|&(e, c)| (Edge::new(perm[e.lo()], perm[e.hi()]), c)).collect();
        let st2 = BoardState::replay(st.config().clone(), &moved).unwrap();
        let opts = SolveOptions { want_pv: false, ..SolveOptions::default() };
        let a = solve_position(&st, &opts).unwrap().outcome;
        let b = solve_position(&st2, &opts).unwrap().outcome;
        prop_assert_eq!(a, b);
        let plain = solve_position(&st, &SolveOptions { use_table: false, ..opts }).unwrap().outcome;
        prop_assert_eq!(a, plain);
    }
}
