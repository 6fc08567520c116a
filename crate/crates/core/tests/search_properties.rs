//! Search-level properties: archive invariants under random insertion
//! streams, and the surrogate weighting factor's effect on feasible starts.

use ddccmckp::baselines::greedy;
use ddccmckp::eval::EvaluatorKind;
use ddccmckp::instance::{Class, Instance, Item, Solution};
use ddccmckp::search::{SolutionArchive, ARCHIVE_CAPACITY};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn archives_hold_their_invariants_under_any_insertion_stream(
        entries in prop::collection::vec((0usize..50, 0.0f64..100.0, 0.0f64..1.0), 0..120)
    ) {
        let mut archive = SolutionArchive::new();
        for (pick, cost, confidence) in entries {
            archive.offer(Solution::new(vec![pick]), cost, confidence);
            prop_assert!(archive.cost_list().len() <= ARCHIVE_CAPACITY);
            prop_assert!(archive.mc_list().len() <= ARCHIVE_CAPACITY);
        }
        prop_assert!(archive.cost_list().windows(2).all(|w| w[0].cost <= w[1].cost));
        prop_assert!(archive.mc_list().windows(2).all(|w| w[0].confidence >= w[1].confidence));
        for list in [archive.cost_list(), archive.mc_list()] {
            for (i, a) in list.iter().enumerate() {
                for b in &list[i + 1..] {
                    prop_assert_ne!(&a.solution, &b.solution);
                }
            }
        }
    }
}

/// Ensemble where ranking by mean alone strands the constructive procedure:
/// each class holds a two-point high-variance item (cheaper-looking mean)
/// and a constant safe item. Only the surrogate's deviation term makes the
/// safe item look lighter.
fn deceptive_instance(seed: u64) -> Instance {
    use rand::Rng;
    use rand::SeedableRng;
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m = 3;
    let classes = (0..m)
        .map(|_| {
            let spike = 6.8 + 0.4 * r.random::<f64>();
            let risky = Item::new(5.0 + r.random::<f64>(), vec![0.0, spike, 0.0, spike]);
            let safe_w = 3.9 + 0.2 * r.random::<f64>();
            let safe = Item::new(4.0 + 0.5 * r.random::<f64>(), vec![safe_w; 4]);
            Class { items: vec![risky, safe] }
        })
        .collect();
    let mut inst = Instance {
        num_classes: m,
        classes,
        capacity: 0.0,
        confidence_level: 0.9,
        sample_count: 4,
    };
    // Fits all three safe items, but no spike on top of two safe ones.
    inst.capacity = 12.6;
    inst.validate().expect("valid ensemble instance");
    inst
}

#[test]
fn nonzero_lambda_finds_feasible_starts_more_often_than_mean_only() {
    let seeds = 0..50u64;
    let feasible_count = |lambda: f64| {
        seeds
            .clone()
            .filter(|&s| greedy(&deceptive_instance(s), lambda, EvaluatorKind::ExactHeap, s).feasible)
            .count()
    };
    let zero = feasible_count(0.0);
    for lambda in 1..=10 {
        let nz = feasible_count(lambda as f64);
        assert!(
            nz > zero,
            "lambda {lambda}: {nz} feasible starts vs {zero} at lambda 0"
        );
    }
}
