use std::collections::BTreeSet;

use aztec_model::{
    horizontal_slice, sample_final_matching, sample_trajectory, shuffle_step,
    shuffle_transition_distribution, turning_points, vertical_slice, Dir, Matching,
};
use dist_core::RngStream;
use weight_engine::{cascade, sample_weight_field, ParamSet, WeightField};
use Dir::*;

fn reference_n3() -> Matching {
    Matching::from_rows(&[
        vec![DL, DR, UL, UL],
        vec![DL, UR, DL, UR],
        vec![DR, DL, UR, UR],
    ])
    .unwrap()
}

/// Every matching of size `n` reached from the empty one by the transition
/// chain with positive weights.
fn all_matchings(n: usize) -> Vec<Matching> {
    let mut level = vec![Matching::empty()];
    for k in 1..=n {
        let w = WeightField::constant(k, 1.0, 1.0);
        let mut next = BTreeSet::new();
        for m in &level {
            for (succ, _) in shuffle_transition_distribution(m, &w).unwrap() {
                next.insert(succ);
            }
        }
        level = next.into_iter().collect();
    }
    level
}

fn check_identities(m: &Matching) {
    let n = m.n;
    let t = turning_points(m).unwrap();
    let west: Vec<usize> = (1..=n + 1).filter(|&k| k != t.west + 1).collect();
    assert_eq!(vertical_slice(m, 1).unwrap(), west);
    assert_eq!(vertical_slice(m, n).unwrap(), vec![t.east + 1]);
    for l in 1..=n {
        assert_eq!(vertical_slice(m, l).unwrap().len(), n - l + 1);
        assert_eq!(horizontal_slice(m, l).unwrap().len(), n - l + 1);
    }
}

#[test]
fn reference_matching_observables() {
    let m = reference_n3();
    let t = turning_points(&m).unwrap();
    assert_eq!((t.north, t.east, t.south, t.west), (2, 1, 1, 1));
    assert_eq!(vertical_slice(&m, 1).unwrap(), vec![1, 3, 4]);
    assert_eq!(vertical_slice(&m, 3).unwrap(), vec![2]);
    assert_eq!(horizontal_slice(&m, 1).unwrap(), vec![1, 2, 4]);
    check_identities(&m);
}

#[test]
fn order_one_matchings() {
    let nw = Matching::from_rows(&[vec![DL, UR]]).unwrap();
    let ne = Matching::from_rows(&[vec![DR, UL]]).unwrap();
    let w = WeightField::new(1, vec![2.0], vec![5.0]).unwrap();
    assert!((nw.log_weight(&w).unwrap() - 2f64.ln()).abs() < 1e-15);
    assert!((ne.log_weight(&w).unwrap() - 5f64.ln()).abs() < 1e-15);
    assert_eq!(horizontal_slice(&nw, 1).unwrap(), vec![1]);
    assert_eq!(all_matchings(1), vec![nw, ne]);
}

#[test]
fn matching_counts_are_powers_of_two() {
    for n in 1..=4 {
        assert_eq!(all_matchings(n).len(), 1 << (n * (n + 1) / 2), "n = {n}");
    }
}

#[test]
fn boundary_identities_exhaustive() {
    for n in 1..=4 {
        for m in all_matchings(n) {
            assert!(m.is_valid());
            check_identities(&m);
        }
    }
}

#[test]
fn horizontal_slice_sizes_at_three() {
    let ms = all_matchings(3);
    assert_eq!(ms.len(), 64);
    for m in &ms {
        for l in 1..=3 {
            assert_eq!(horizontal_slice(m, l).unwrap().len(), 4 - l);
        }
    }
}

#[test]
fn boundary_identities_sampled_at_fifty() {
    let params = ParamSet::homogeneous(1.0, 1.0, 120).unwrap();
    for r in 0..10_000u64 {
        let mut rng = RngStream::new(2024, r);
        let w = sample_weight_field(&params, 50, &mut rng).unwrap();
        let m = sample_final_matching(&cascade(&w), &mut rng);
        assert!(m.is_valid());
        check_identities(&m);
    }
}

#[test]
fn invalid_grids_rejected() {
    assert!(Matching::new(2, vec![DL; 6]).is_err());
    assert!(Matching::new(1, vec![DL, UL]).is_err());
    // k = 1 cannot point up
    assert!(Matching::new(1, vec![UR, DL]).is_err());
    assert!(Matching::new(2, vec![DL; 5]).is_err());
}

#[test]
fn level_mismatch_rejected() {
    let m = reference_n3();
    let mut rng = RngStream::new(1, 1);
    assert!(shuffle_step(&m, &WeightField::constant(3, 1.0, 1.0), &mut rng).is_err());
    assert!(shuffle_step(&m, &WeightField::constant(4, 1.0, 1.0), &mut rng).is_ok());
}

#[test]
fn sampling_is_reproducible() {
    let params = ParamSet::homogeneous(0.7, 1.3, 40).unwrap();
    let run = |seed| {
        let mut rng = RngStream::new(seed, 3);
        sample_trajectory(&params, 25, &mut rng).unwrap().1
    };
    assert_eq!(run(5), run(5));
    assert_ne!(run(5), run(6));
}

#[test]
fn transition_sums_to_one() {
    let params = ParamSet::homogeneous(0.4, 2.0, 10).unwrap();
    let mut rng = RngStream::new(77, 0);
    let c = cascade(&sample_weight_field(&params, 4, &mut rng).unwrap());
    let traj = aztec_model::sample_trajectory_from_cascade(&c, &mut rng);
    for k in 0..3 {
        let total: f64 = shuffle_transition_distribution(&traj[k], c.level(k + 2))
            .unwrap()
            .iter()
            .map(|x| x.1)
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
