mod common;

use common::{ks_critical, ks_distance};
use dist_core::RngStream;
use polymer_models::beta_rwre;
use statrs::distribution::{ContinuousCDF, Normal};
use weight_engine::ParamSet;

#[test]
fn one_step_annealed_law() {
    let params = ParamSet::homogeneous(1.5, 0.5, 4).unwrap();
    let mut rng = RngStream::new(41, 0);
    let draws = 200_000;
    let stays = (0..draws)
        .filter(|_| beta_rwre(&params, 1, &mut rng).unwrap()[1] == -1)
        .count() as f64
        / draws as f64;
    assert!((stays - 0.75).abs() < 4.0 * (0.75f64 * 0.25 / draws as f64).sqrt(), "{stays}");
}

#[test]
fn homogeneous_walk_is_diffusive() {
    let horizon = 2000;
    let draws = 20_000;
    let params = ParamSet::homogeneous(1.0, 1.0, horizon + 2).unwrap();
    let mut rng = RngStream::new(42, 0);
    let mut z = Vec::with_capacity(draws);
    for _ in 0..draws {
        let x = *beta_rwre(&params, horizon, &mut rng).unwrap().last().unwrap();
        // jitter removes the lattice before the KS comparison
        let jitter = rng.uniform() - 0.5;
        z.push((-(x as f64) - 1.0 - horizon as f64 / 2.0 + jitter) / (horizon as f64).sqrt());
    }
    let mean = z.iter().sum::<f64>() / draws as f64;
    let var = z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
    assert!(mean.abs() < 4.0 * (0.25 / draws as f64).sqrt(), "mean {mean}");
    assert!((var - 0.25).abs() < 0.015, "variance {var}");
    let normal = Normal::new(0.0, 0.5).unwrap();
    let d = ks_distance(&mut z, |t| normal.cdf(t));
    assert!(d < ks_critical(draws), "D = {d}");
}
