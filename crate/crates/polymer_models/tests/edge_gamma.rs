use dist_core::RngStream;
use polymer_models::{stat_loggamma, x_mid, EdgeGammaEnv};
use weight_engine::{cascade, sample_weight_field, ParamSet};

#[test]
fn one_step_odds() {
    let env = EdgeGammaEnv::new(1, |_, _| 1.0, &[0.4], &[1.6]).unwrap();
    let law = env.endpoint_law();
    assert!((law[1] / law[0] - 0.25).abs() < 1e-14);
    assert_eq!(law.len(), 2);
}

#[test]
fn cascade_weights_are_positive_and_consistent() {
    let params = ParamSet::homogeneous(1.0, 2.0, 20).unwrap();
    let mut rng = RngStream::new(31, 0);
    for n in 1..=5 {
        let w = sample_weight_field(&params, n, &mut rng).unwrap();
        let env = EdgeGammaEnv::from_cascade(&cascade(&w)).unwrap();
        let a = env.endpoint_law();
        let b = env.endpoint_law_enumerated().unwrap();
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-12));
        assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn matches_stationary_midpoint_in_law() {
    let (alpha, beta, n) = (1.2, 0.8, 3);
    let params = ParamSet::homogeneous(alpha, beta, 20).unwrap();
    let mut rng = RngStream::new(32, 0);
    let draws = 20_000;
    let (mut edge, mut stat) = (vec![0.0; n + 1], vec![0.0; n + 1]);
    for _ in 0..draws {
        let env = EdgeGammaEnv::sample(&params, n, &mut rng).unwrap();
        edge[env.sample_endpoint(&mut rng)] += 1.0 / draws as f64;
        let env = stat_loggamma(n, n, alpha, beta, &mut rng).unwrap();
        let p = env.sample_path_backward(n, n, &mut rng);
        stat[x_mid(&p, n as i64).unwrap() as usize] += 1.0 / draws as f64;
    }
    let d: f64 = edge.iter().zip(&stat).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0;
    assert!(d < 0.03, "TV {d}: edge {edge:?} stationary {stat:?}");
}
