use ramsey_core::acceptance::tree_builder_prefix_run;
use ramsey_core::game::{play_match, GameConfig, Mode, Outcome};
use ramsey_core::graph::TargetGraph;
use ramsey_core::reference::nonisomorphic_trees;
use ramsey_core::strategies::{by_name, Baseline, BaselineKind, PathBuilder, Strategy, STRATEGY_NAMES};

#[test]
fn path_builder_wins_on_larger_boards() {
    for n in 5..=10 {
        for seed in 0..200 {
            let config = GameConfig::new(n, 1, 1, TargetGraph::path(n), Mode::Strong).unwrap();
            let bobs: [Box<dyn Strategy>; 3] = [
                Box::new(Baseline::new(BaselineKind::UniformRandom { seed })),
                Box::new(Baseline::new(BaselineKind::GreedyDegreeBlocker)),
                Box::new(Baseline::new(BaselineKind::GreedyExtender)),
            ];
            for mut bob in bobs {
                let t = play_match(&mut PathBuilder::new(), bob.as_mut(), config.clone());
                assert_eq!(t.outcome.value, Outcome::AliceWin, "P{n} seed {seed}:\n{}", t.to_text());
                assert!(t.forfeit.is_none());
            }
        }
    }
}

#[test]
fn tree_builder_prefixes_with_wider_bias() {
    for (p, q) in [(2, 2), (3, 1), (3, 2)] {
        for n in 2..=6 {
            for tree in nonisomorphic_trees(n) {
                for seed in 0..100 {
                    tree_builder_prefix_run(&tree, p, q, seed).unwrap();
                }
            }
        }
    }
}

#[test]
fn named_strategies_build() {
    for name in STRATEGY_NAMES {
        let s = by_name(name, 1, 1, 0.25, 5, 0).unwrap();
        assert_eq!(s.name(), *name);
    }
    assert!(by_name("nobody", 1, 1, 0.25, 5, 0).is_err());
}
