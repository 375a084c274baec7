use std::collections::BTreeMap;

use aztec_model::{sample_final_matching, shuffle_transition_distribution, Matching};
use dist_core::RngStream;
use exact_oracle::{exact_aztec_measure, tv_distance, Law};
use weight_engine::{cascade, sample_weight_field, Cascade, ParamSet};

fn random_cascade(n: usize, seed: u64) -> Cascade {
    let params = ParamSet::homogeneous(0.8, 1.4, 2 * n + 2).unwrap();
    let mut rng = RngStream::new(seed, 0);
    cascade(&sample_weight_field(&params, n, &mut rng).unwrap())
}

fn exact_law(c: &Cascade, k: usize) -> Law<Matching> {
    exact_aztec_measure(c.level(k)).unwrap().0.into_iter().collect()
}

#[test]
fn transition_pushes_exact_measure_up_one_level() {
    for seed in 0..5 {
        let c = random_cascade(4, seed);
        let mut law: Law<Matching> = BTreeMap::from([(Matching::empty(), 1.0)]);
        for k in 1..=4 {
            let mut next = Law::new();
            for (m, p) in &law {
                for (succ, q) in shuffle_transition_distribution(m, c.level(k)).unwrap() {
                    *next.entry(succ).or_insert(0.0) += p * q;
                }
            }
            law = next;
            let tv = tv_distance(&law, &exact_law(&c, k));
            assert!(tv < 1e-10, "seed {seed} level {k}: tv {tv}");
        }
    }
}

#[test]
fn sampled_final_matching_matches_exact_law() {
    let c = random_cascade(3, 41);
    let exact = exact_law(&c, 3);
    let reps = 100_000;
    let mut rng = RngStream::new(41, 1);
    let mut counts: Law<Matching> = Law::new();
    for _ in 0..reps {
        *counts.entry(sample_final_matching(&c, &mut rng)).or_insert(0.0) += 1.0 / reps as f64;
    }
    let tv = tv_distance(&counts, &exact);
    assert!(tv < 0.02, "tv {tv}");
}
