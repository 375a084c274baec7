//! Monte Carlo checks of distributional identities.

use std::collections::BTreeMap;

use aztec_model::{sample_final_matching, turning_points, Matching, TurningPoints};
use dist_core::RngStream;
use exact_oracle::exact_aztec_measure;
use polymer_models::{beta_rwre, stat_loggamma, stat_strictweak, x_mid, StatPolymerEnv};
use rand_distr::{Distribution, LogNormal};
use rayon::prelude::*;
use statrs::distribution::{Beta, ContinuousCDF, Gamma, Normal};
use weight_engine::{
    cascade, lognormal_upshuffle_reference, sample_weight_field, sample_weight_window, ParamSet,
    WeightWindow,
};

use crate::exact_checks::random_cascade;
use crate::free_energy::free_energy_mc;
use crate::gof::{chi_square_gof, discrete_two_sample, ks_critical, ks_statistic, tally};
use crate::independence::pearson;
use crate::report::{all_of, TestReport};
use crate::scaling::{scaling_exponent, ScalingFit};
use crate::HarnessError;

pub const LEVEL: f64 = 1e-3;

/// `f(r)` for `r in 0..count`, each with its own stream, in replica order.
pub fn replicate<T: Send>(
    seed: u64,
    count: usize,
    f: impl Fn(&mut RngStream) -> Result<T, HarnessError> + Sync,
) -> Result<Vec<T>, HarnessError> {
    (0..count as u64)
        .into_par_iter()
        .map(|r| f(&mut RngStream::new(seed, r)))
        .collect()
}

/// Empirical law of `M_n` against the exact dimer measure, per environment:
/// TV below `tv_tol` and a chi-square test not rejected at `LEVEL`.
pub fn shuffle_law(n: usize, envs: usize, replicas: usize, tv_tol: f64, seed: u64) -> Result<TestReport, HarnessError> {
    let mut env_rng = RngStream::new(seed, u64::MAX - n as u64);
    let mut parts = Vec::new();
    for e in 0..envs {
        let c = random_cascade(n, &mut env_rng)?;
        let (exact, _) = exact_aztec_measure(c.top())?;
        let index: BTreeMap<&Matching, usize> = exact.iter().enumerate().map(|(i, (m, _))| (m, i)).collect();
        let stream = seed ^ ((n as u64) << 32 | e as u64);
        let draws = replicate(stream, replicas, |rng| Ok(sample_final_matching(&c, rng)))?;
        let mut counts = vec![0u64; exact.len()];
        for m in &draws {
            counts[index[m]] += 1;
        }
        let probs: Vec<f64> = exact.iter().map(|x| x.1).collect();
        let tv = 0.5
            * counts
                .iter()
                .zip(&probs)
                .map(|(&k, p)| (k as f64 / replicas as f64 - p).abs())
                .sum::<f64>();
        let chi = chi_square_gof(&counts, &probs)?;
        parts.push(TestReport::below(format!("shuffle-law n={n} env={e} tv"), tv, tv_tol).with_sizes(vec![replicas]).with_seeds(vec![stream]));
        parts.push(
            TestReport::above(format!("shuffle-law n={n} env={e} chi2-p"), chi.p_value, LEVEL)
                .with_sizes(vec![replicas])
                .with_seeds(vec![stream]),
        );
    }
    Ok(all_of(format!("shuffle-law n={n}"), &parts))
}

/// Turning points of `replicas` independent `M_n` with fresh homogeneous fields.
pub fn sample_turning_points(
    n: usize,
    alpha: f64,
    beta: f64,
    replicas: usize,
    seed: u64,
) -> Result<Vec<TurningPoints>, HarnessError> {
    let params = ParamSet::homogeneous(alpha, beta, 2 * n + 2)?;
    replicate(seed, replicas, |rng| {
        let c = cascade(&sample_weight_field(&params, n, rng)?);
        Ok(turning_points(&sample_final_matching(&c, rng))?)
    })
}

fn two_sample_report(
    id: String,
    a: Vec<i64>,
    b: Vec<i64>,
    tv_tol: f64,
    seeds: Vec<u64>,
) -> Result<TestReport, HarnessError> {
    let r = discrete_two_sample(&tally(a), &tally(b))?;
    Ok(TestReport::below(id, r.tv, tv_tol)
        .with_sizes(vec![r.n_a as usize, r.n_b as usize])
        .with_seeds(seeds)
        .with_note(format!("chi2 = {:.3}, dof = {}, p = {:.4}", r.chi.statistic, r.chi.dof, r.chi.p_value)))
}

/// Midpoints `x_mid` of one backward-sampled path per fresh stationary environment.
pub fn sample_midpoints(
    strict_weak: bool,
    n: usize,
    alpha: f64,
    beta: f64,
    replicas: usize,
    seed: u64,
) -> Result<Vec<i64>, HarnessError> {
    replicate(seed, replicas, |rng| {
        let env: StatPolymerEnv = if strict_weak {
            stat_strictweak(n, n, alpha, beta, rng)?
        } else {
            stat_loggamma(n, n, alpha, beta, rng)?
        };
        Ok(x_mid(&env.sample_path_backward(n, n, rng), n as i64)?)
    })
}

/// `-X_n - 1` for annealed Beta walks.
pub fn sample_walk_endpoints(
    n: usize,
    alpha: f64,
    beta: f64,
    replicas: usize,
    seed: u64,
) -> Result<Vec<i64>, HarnessError> {
    let params = ParamSet::homogeneous(alpha, beta, n + 2)?;
    replicate(seed, replicas, |rng| {
        let x = beta_rwre(&params, n, rng)?;
        Ok(-x[n] - 1)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    East,
    West,
    South,
}

/// Annealed two-sample test of a turning point against its polymer statistic.
pub fn turning_point_match(
    side: Boundary,
    n: usize,
    alpha: f64,
    beta: f64,
    replicas: usize,
    tv_tol: f64,
    seed: u64,
) -> Result<TestReport, HarnessError> {
    let tps = sample_turning_points(n, alpha, beta, replicas, seed)?;
    let other = seed.wrapping_add(1);
    let (name, aztec, poly): (&str, Vec<i64>, Vec<i64>) = match side {
        Boundary::East => (
            "east",
            tps.iter().map(|t| t.east as i64).collect(),
            sample_walk_endpoints(n, alpha, beta, replicas, other)?,
        ),
        Boundary::West => (
            "west",
            tps.iter().map(|t| t.west as i64).collect(),
            sample_midpoints(false, n, alpha, beta, replicas, other)?,
        ),
        Boundary::South => (
            "south",
            tps.iter().map(|t| t.south as i64).collect(),
            sample_midpoints(true, n, alpha, beta, replicas, other)?,
        ),
    };
    two_sample_report(format!("{name}-turning n={n}"), aztec, poly, tv_tol, vec![seed, other])
}

/// `(-X_n - 1 - beta n / (alpha + beta)) / sqrt(n)` against a centred normal
/// with variance `alpha beta / (alpha + beta)^2`. The integer endpoint is
/// spread uniformly over its unit cell first so that the law is continuous.
pub fn east_clt(n: usize, alpha: f64, beta: f64, replicas: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let ends = sample_walk_endpoints(n, alpha, beta, replicas, seed)?;
    let mut jitter = RngStream::new(seed, u64::MAX);
    let mean = beta * n as f64 / (alpha + beta);
    let z: Vec<f64> = ends
        .iter()
        .map(|&e| (e as f64 + jitter.uniform() - 0.5 - mean) / (n as f64).sqrt())
        .collect();
    let sd = (alpha * beta).sqrt() / (alpha + beta);
    let normal = Normal::new(0.0, sd).expect("positive sd");
    let d = ks_statistic(&z, |x| normal.cdf(x));
    Ok(TestReport::below(format!("east-clt n={n}"), d, ks_critical(replicas, LEVEL))
        .with_sizes(vec![replicas])
        .with_seeds(vec![seed]))
}

fn ks_report(id: &str, xs: &[f64], cdf: impl Fn(f64) -> f64, alpha: f64, seed: u64) -> TestReport {
    TestReport::below(id, ks_statistic(xs, cdf), ks_critical(xs.len(), alpha))
        .with_sizes(vec![xs.len()])
        .with_seeds(vec![seed])
}

/// Largest pairwise `|r|` among columns against `c / sqrt(N)`.
fn pairwise_report(id: &str, cols: &[Vec<f64>], c: f64, seed: u64) -> TestReport {
    let n = cols[0].len();
    let mut worst = 0.0f64;
    for a in 0..cols.len() {
        for b in a + 1..cols.len() {
            worst = worst.max(pearson(&cols[a], &cols[b]).abs());
        }
    }
    TestReport::below(id, worst, c / (n as f64).sqrt())
        .with_sizes(vec![n])
        .with_seeds(vec![seed])
}

/// `log V` on each down step and `log U` on each right step of the staircase
/// from `(0, n)` to `(n, 0)`.
fn staircase(env: &StatPolymerEnv, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let j = n - i;
        out.push(env.log_v(i, j));
        out.push(env.log_u(i + 1, j - 1));
    }
    out
}

fn transpose(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c]).collect()).collect()
}

/// Ratio marginals and staircase independence for both stationary models.
pub fn burke(envs: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let (a, b) = (0.8, 1.7);
    let alpha_ks = LEVEL / 5.0;
    let lg = replicate(seed, envs, |rng| {
        let env = stat_loggamma(4, 3, a, b, rng)?;
        Ok((env.log_u(4, 3), env.log_v(4, 3)))
    })?;
    let ga = Gamma::new(a, 1.0).expect("shape");
    let gb = Gamma::new(b, 1.0).expect("shape");
    let (u, v): (Vec<f64>, Vec<f64>) = lg.into_iter().unzip();
    // log U <= t  iff  1/U >= e^{-t}, with 1/U ~ Gamma(b)
    let mut parts = vec![
        ks_report("burke log-gamma U", &u, |t| gb.sf((-t).exp()), alpha_ks, seed),
        ks_report("burke log-gamma V", &v, |t| ga.sf((-t).exp()), alpha_ks, seed),
    ];

    let (a, b, n) = (1.3, 0.9, 4);
    let sw_seed = seed.wrapping_add(1);
    let sw = replicate(sw_seed, envs, |rng| {
        let env = stat_strictweak(n, n, a, b, rng)?;
        Ok([
            env.log_u(3, 2),
            env.log_v(2, 3),
            env.log_v(1, n - 1) - env.log_u(2, n - 2),
        ])
    })?;
    let cols = transpose(&sw.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    let g = Gamma::new(a + b, 1.0).expect("shape");
    let bt = Beta::new(b, a).expect("shape");
    let gb = Gamma::new(b, 1.0).expect("shape");
    parts.push(ks_report("burke strict-weak U", &cols[0], |t| g.cdf(t.exp()), alpha_ks, sw_seed));
    parts.push(ks_report("burke strict-weak V", &cols[1], |t| bt.sf((-t).exp()), alpha_ks, sw_seed));
    parts.push(ks_report("burke strict-weak V/U", &cols[2], |t| gb.sf((-t).exp()), alpha_ks, sw_seed));

    for (k, strict_weak) in [false, true].into_iter().enumerate() {
        let s = seed.wrapping_add(2 + k as u64);
        let rows = replicate(s, envs, |rng| {
            let env = if strict_weak {
                stat_strictweak(5, 5, 1.1, 0.7, rng)?
            } else {
                stat_loggamma(5, 5, 1.1, 0.7, rng)?
            };
            Ok(staircase(&env, 5))
        })?;
        let id = if strict_weak { "staircase strict-weak" } else { "staircase log-gamma" };
        parts.push(pairwise_report(id, &transpose(&rows), 5.0, s));
    }
    Ok(all_of("burke", &parts))
}

/// Every cell of a sequence of windows against its Gamma marginal at the
/// window level (Bonferroni over cells), plus 20 random cross-cell pairs.
fn window_law(id: &str, params: &ParamSet, outs: &[WeightWindow], seed: u64) -> Result<TestReport, HarnessError> {
    let w0 = &outs[0];
    let cells = w0.rows * w0.cols;
    let alpha = LEVEL / (2 * cells) as f64;
    let col = |k: usize, pick_a: bool| -> Vec<f64> {
        outs.iter().map(|w| if pick_a { w.a[k] } else { w.b[k] }).collect()
    };
    let mut parts = Vec::new();
    let mut all = Vec::new();
    for i in w0.i0..=w0.i1() {
        for j in w0.j0..=w0.j1() {
            let k = ((i - w0.i0) as usize) * w0.cols + (j - w0.j0) as usize;
            let ga = Gamma::new(params.a_shape(i, j)?, 1.0).expect("shape");
            let gb = Gamma::new(params.b_shape(i, j, w0.level)?, 1.0).expect("shape");
            let (ca, cb) = (col(k, true), col(k, false));
            parts.push(ks_report(&format!("{id} a({i},{j})"), &ca, |x| ga.cdf(x), alpha, seed));
            parts.push(ks_report(&format!("{id} b({i},{j})"), &cb, |x| gb.cdf(x), alpha, seed));
            all.push(ca);
            all.push(cb);
        }
    }
    let mut rng = RngStream::new(seed, u64::MAX);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = (rng.uniform() * all.len() as f64) as usize % all.len();
        let mut q = (rng.uniform() * all.len() as f64) as usize % all.len();
        if q == p {
            q = (p + 1) % all.len();
        }
        worst = worst.max(pearson(&all[p], &all[q]).abs());
    }
    parts.push(TestReport::below(format!("{id} pairs"), worst, 5.0 / (outs.len() as f64).sqrt()).with_seeds(vec![seed]));
    Ok(all_of(id, &parts))
}

fn random_params(rng: &mut RngStream, extent: usize) -> Result<ParamSet, HarnessError> {
    let psi = (0..extent).map(|_| 0.5 + 1.5 * rng.uniform()).collect();
    let phi = (0..2 * extent + 1).map(|_| 0.5 + 1.5 * rng.uniform()).collect();
    let theta = (0..extent).map(|_| 0.6 * rng.uniform() - 0.3).collect();
    Ok(ParamSet::new(psi, phi, -(extent as i64), theta)?)
}

/// One downshuffle of a level-4 field and one upshuffle of a level-2
/// window keep independent Gamma marginals.
pub fn gamma_preservation(replicas: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let mut prng = RngStream::new(seed, u64::MAX - 1);
    let p_down = random_params(&mut prng, 4)?;
    let p_up = random_params(&mut prng, 6)?;
    let down = replicate(seed, replicas, |rng| {
        Ok(sample_weight_field(&p_down, 4, rng)?.downshuffle().as_window())
    })?;
    let up_seed = seed.wrapping_add(1);
    let up = replicate(up_seed, replicas, |rng| {
        Ok(sample_weight_window(&p_up, 2, 1..=4, 1..=4, rng)?.upshuffle()?)
    })?;
    let parts = [
        window_law("downshuffle", &p_down, &down, seed)?,
        window_law("upshuffle", &p_up, &up, up_seed)?,
    ];
    Ok(all_of("gamma-preservation", &parts))
}

/// Log-scale correlation of the two outputs of one upshuffle cell fed with
/// i.i.d. lognormal inputs; passes when it exceeds the quadrature reference
/// minus three standard errors.
pub fn lognormal_control(replicas: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let reference = lognormal_upshuffle_reference(1.0);
    let ln = LogNormal::new(0.0, 1.0).expect("valid lognormal");
    let pairs = replicate(seed, replicas, |rng| {
        let a: Vec<f64> = (0..4).map(|_| ln.sample(rng)).collect();
        let b: Vec<f64> = (0..4).map(|_| ln.sample(rng)).collect();
        let up = WeightWindow::new(0, 1, 1, 2, 2, a, b)?.upshuffle()?;
        Ok((up.a[0].ln(), up.b[0].ln()))
    })?;
    let (x, y): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let r = pearson(&x, &y);
    let se = (1.0 - reference.corr.powi(2)) / (replicas as f64).sqrt();
    Ok(TestReport::above("lognormal-control", r, reference.corr - 3.0 * se)
        .with_sizes(vec![replicas])
        .with_seeds(vec![seed])
        .with_note(format!("reference corr {:.5}", reference.corr)))
}

/// Mean, variance, CLT and sandwich checks at each temperature.
pub fn free_energy(n: usize, temps: &[f64], alpha: f64, beta: f64, replicas: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let params = ParamSet::homogeneous(alpha, beta, n + 1)?;
    let mut parts = Vec::new();
    for (k, &t) in temps.iter().enumerate() {
        let s = seed.wrapping_add(k as u64);
        let r = free_energy_mc(&params, n, t, replicas, s)?;
        let e = r.empirical.as_ref().expect("sampled");
        let id = |what: &str| format!("free-energy T={t} {what}");
        parts.push(TestReport::below(id("mean/se"), (e.mean - r.quenched_mean).abs() / e.std_error, 4.0).with_seeds(vec![s]));
        parts.push(TestReport::below(id("variance rel err"), r.variance_error().expect("sampled"), 0.1).with_seeds(vec![s]));
        parts.push(
            TestReport::below(id("clt ks"), e.ks, e.ks_crit_001)
                .with_seeds(vec![s])
                .with_note(format!("ks with the alternative variance: {:.4}", e.ks_alt)),
        );
        let margin = (r.gap - r.gap_bounds.0).min(r.gap_bounds.1 - r.gap);
        parts.push(TestReport::above(id("sandwich margin"), margin, 0.0));
    }
    Ok(all_of(format!("free-energy n={n}"), &parts).with_sizes(vec![replicas]))
}

/// Spread of the midpoint (stationary models) or the walk endpoint across sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpreadModel {
    LogGamma,
    StrictWeak,
    BetaWalk,
}

impl SpreadModel {
    pub fn name(self) -> &'static str {
        match self {
            SpreadModel::LogGamma => "log-gamma",
            SpreadModel::StrictWeak => "strict-weak",
            SpreadModel::BetaWalk => "beta-walk",
        }
    }
}

pub fn spread_fit(model: SpreadModel, sizes: &[usize], replicas: usize, seed: u64) -> Result<ScalingFit, HarnessError> {
    let mut series = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let s = seed.wrapping_add(n as u64);
        let xs = match model {
            SpreadModel::LogGamma => sample_midpoints(false, n, 1.0, 1.0, replicas, s)?,
            SpreadModel::StrictWeak => sample_midpoints(true, n, 1.0, 1.0, replicas, s)?,
            SpreadModel::BetaWalk => sample_walk_endpoints(n, 1.0, 1.0, replicas, s)?,
        };
        series.push((n, xs.into_iter().map(|x| x as f64).collect()));
    }
    scaling_exponent(&series, 200, &mut RngStream::new(seed, u64::MAX))
}

pub fn scaling(sizes: &[usize], replicas: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let mut parts = Vec::new();
    for (model, lo, hi) in [
        (SpreadModel::LogGamma, 0.55, 0.80),
        (SpreadModel::StrictWeak, 0.55, 0.80),
        (SpreadModel::BetaWalk, 0.42, 0.58),
    ] {
        let fit = spread_fit(model, sizes, replicas, seed)?;
        let mid = 0.5 * (lo + hi);
        let note = format!("slope {:.4}, 95% CI ({:.4}, {:.4})", fit.slope, fit.ci.0, fit.ci.1);
        parts.push(
            TestReport::below(format!("scaling {}", model.name()), (fit.slope - mid).abs(), 0.5 * (hi - lo))
                .with_sizes(vec![replicas])
                .with_seeds(vec![seed])
                .with_note(note),
        );
    }
    Ok(all_of("scaling", &parts))
}
