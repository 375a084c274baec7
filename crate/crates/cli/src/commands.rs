use std::path::{Path, PathBuf};

use aztec_model::{sample_final_matching, turning_points, vertical_slice, Matching, TurningPoints};
use dist_core::RngStream;
use polymer_models::beta_rwre;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use stat_harness::{mc_checks, run_suite, FreeEnergyReport, SuiteConfig, TestReport};
use weight_engine::{cascade, sample_weight_field, ParamSet};

use crate::args::*;
use crate::error::{config, CliError};
use crate::output::RunDir;
use crate::svg;

/// Resolved configuration, echoed to `config.json`.
#[derive(Debug, Serialize)]
struct RunConfig {
    command: &'static str,
    seed: u64,
    format: Format,
    #[serde(flatten)]
    options: Value,
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(config(format!("--{name} must be a positive finite number, got {v}")))
    }
}

fn at_least_one(name: &str, v: usize) -> Result<usize, CliError> {
    if v == 0 {
        Err(config(format!("--{name} must be at least 1")))
    } else {
        Ok(v)
    }
}

/// Parameter set for sizes up to `max_n`, plus its echo for `config.json`.
fn resolve_params(w: &Weights, max_n: usize) -> Result<(ParamSet, Value), CliError> {
    let params = match (&w.params, w.alpha, w.beta) {
        (Some(src), _, _) => {
            let text = if src.trim_start().starts_with('{') {
                src.clone()
            } else {
                std::fs::read_to_string(src).map_err(|e| config(format!("cannot read --params {src}: {e}")))?
            };
            ParamSet::from_json(&text).map_err(|e| config(format!("--params: {e}")))?
        }
        (None, Some(a), Some(b)) => {
            let (a, b) = (positive("alpha", a)?, positive("beta", b)?);
            ParamSet::homogeneous(a, b, 2 * max_n + 2).map_err(|e| config(e.to_string()))?
        }
        _ => return Err(config("give both --alpha and --beta, or --params")),
    };
    params
        .check_level(max_n)
        .map_err(|e| config(format!("parameters do not cover size {max_n}: {e}")))?;
    let echo = match (w.alpha, w.beta) {
        (Some(a), Some(b)) if w.params.is_none() => json!({"alpha": a, "beta": b}),
        _ => json!({"params": serde_json::to_value(&params)?}),
    };
    Ok((params, echo))
}

fn sizes_of(n: Option<usize>, sizes: &[usize]) -> Result<Vec<usize>, CliError> {
    let out = match n {
        Some(n) => vec![n],
        None if !sizes.is_empty() => sizes.to_vec(),
        None => return Err(config("give --n or --sizes")),
    };
    for &n in &out {
        at_least_one("n", n)?;
    }
    Ok(out)
}

fn target(common: &Common, command: &str) -> Result<PathBuf, CliError> {
    let path = common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("run-{command}-{}", common.seed)));
    RunDir::plan(&path)
}

fn set_threads(threads: usize) {
    if threads > 0 {
        // a second initialisation in the same process is harmless to ignore
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

fn finish(mut run: RunDir, cfg: &RunConfig, seeds: &[u64]) -> Result<PathBuf, CliError> {
    run.write_json("config.json", cfg)?;
    let dir = run.commit(cfg.command, seeds)?;
    eprintln!("wrote {}", dir.display());
    Ok(dir)
}

fn jsonl<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut s = String::new();
    for r in rows {
        s.push_str(&serde_json::to_string(r)?);
        s.push('\n');
    }
    Ok(s)
}

fn write_reports(run: &mut RunDir, reports: &[TestReport]) -> Result<usize, CliError> {
    run.write("reports.jsonl", &jsonl(reports)?)?;
    let mut csv = format!("{}\n", stat_harness::CSV_HEADER);
    let mut failures = 0;
    for r in reports {
        csv.push_str(&r.csv_row());
        csv.push('\n');
        println!("{}", r.line());
        failures += usize::from(!r.pass);
    }
    run.write("summary.csv", &csv)?;
    Ok(failures)
}

#[derive(Serialize)]
struct SampleRow {
    n: usize,
    seed: u64,
    replica: u64,
    #[serde(rename = "T_north")]
    north: usize,
    #[serde(rename = "T_east")]
    east: usize,
    #[serde(rename = "T_south")]
    south: usize,
    #[serde(rename = "T_west")]
    west: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertical_slices: Option<Vec<Vec<usize>>>,
}

fn sample_one(params: &ParamSet, n: usize, seed: u64, stream: u64) -> Result<Matching, CliError> {
    let mut rng = RngStream::new(seed, stream);
    let c = cascade(&sample_weight_field(params, n, &mut rng)?);
    Ok(sample_final_matching(&c, &mut rng))
}

pub fn sample(a: SampleArgs) -> Result<(), CliError> {
    let n = at_least_one("n", a.n)?;
    let replicas = at_least_one("replicas", a.replicas)?;
    let (params, echo) = resolve_params(&a.weights, n)?;
    let out = target(&a.common, "sample")?;
    set_threads(a.common.threads);
    let seed = a.common.seed;

    let results: Vec<(Matching, SampleRow)> = (0..replicas as u64)
        .into_par_iter()
        .map(|r| {
            let m = sample_one(&params, n, seed, r)?;
            let TurningPoints { north, east, south, west } = turning_points(&m)?;
            let vertical_slices = if a.slices {
                Some((1..=n).map(|l| vertical_slice(&m, l)).collect::<Result<_, _>>()?)
            } else {
                None
            };
            let row = SampleRow { n, seed, replica: r, north, east, south, west, vertical_slices };
            Ok((m, row))
        })
        .collect::<Result<_, CliError>>()?;

    let mut run = RunDir::create(out)?;
    let rows: Vec<&SampleRow> = results.iter().map(|x| &x.1).collect();
    match a.common.format {
        Format::Jsonl => run.write("observables.jsonl", &jsonl(&rows)?)?,
        Format::Csv => {
            let mut csv = String::from("n,seed,replica,T_north,T_east,T_south,T_west");
            if a.slices {
                csv.push_str(",vertical_slices");
            }
            csv.push('\n');
            for r in &rows {
                csv.push_str(&format!("{},{},{},{},{},{},{}", r.n, r.seed, r.replica, r.north, r.east, r.south, r.west));
                if let Some(sl) = &r.vertical_slices {
                    let sets: Vec<String> = sl
                        .iter()
                        .map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                        .collect();
                    csv.push_str(&format!(",{}", sets.join("|")));
                }
                csv.push('\n');
            }
            run.write("observables.csv", &csv)?;
        }
    }
    if !a.no_dumps {
        for (m, row) in &results {
            run.write(&format!("matchings/replica-{:06}.txt", row.replica), &m.to_text())?;
        }
    }
    let cfg = RunConfig {
        command: "sample",
        seed,
        format: a.common.format,
        options: json!({"n": n, "replicas": replicas, "slices": a.slices, "weights": echo}),
    };
    finish(run, &cfg, &[seed]).map(|_| ())
}

fn read_matching(path: &Path) -> Result<Matching, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
    Matching::from_text(&text).map_err(|e| config(format!("{}: {e}", path.display())))
}

pub fn render(a: RenderArgs) -> Result<(), CliError> {
    let wanted = if a.double_dimer { 2 } else { 1 };
    let seed = a.common.seed;
    let (matchings, source) = if !a.inputs.is_empty() {
        if a.inputs.len() != wanted {
            return Err(config(format!("expected {wanted} --input file(s), got {}", a.inputs.len())));
        }
        let ms = a.inputs.iter().map(|p| read_matching(p)).collect::<Result<Vec<_>, _>>()?;
        let names: Vec<String> = a.inputs.iter().map(|p| p.display().to_string()).collect();
        (ms, json!({"inputs": names}))
    } else {
        let n = at_least_one("n", a.n.ok_or_else(|| config("give --input or --n"))?)?;
        let (params, echo) = resolve_params(&a.weights, n)?;
        // both matchings share one weight sample
        let mut rng = RngStream::new(seed, 0);
        let c = cascade(&sample_weight_field(&params, n, &mut rng)?);
        let ms = (1..=wanted as u64)
            .map(|s| sample_final_matching(&c, &mut RngStream::new(seed, s)))
            .collect();
        (ms, json!({"n": n, "weights": echo}))
    };
    let doc = if a.double_dimer {
        svg::render_double(&matchings[0], &matchings[1])?
    } else {
        svg::render(&matchings[0])
    };
    let out = target(&a.common, "render")?;
    let mut run = RunDir::create(out)?;
    run.write(if a.double_dimer { "double-dimer.svg" } else { "matching.svg" }, &doc)?;
    for (i, m) in matchings.iter().enumerate() {
        run.write(&format!("matching-{}.txt", i + 1), &m.to_text())?;
    }
    let cfg = RunConfig {
        command: "render",
        seed,
        format: a.common.format,
        options: json!({"double_dimer": a.double_dimer, "source": source}),
    };
    finish(run, &cfg, &[seed]).map(|_| ())
}

pub fn verify(a: VerifyArgs) -> Result<(), CliError> {
    if let Some(r) = a.replicas {
        at_least_one("replicas", r)?;
    }
    let seed = a.common.seed;
    let suite_cfg = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
            let mut c = SuiteConfig::from_json(&text)?;
            if let Some(r) = a.replicas {
                c.replicas = r;
            }
            Some(c)
        }
        None => None,
    };
    let name = a.suite.clone().unwrap_or_else(|| "config".into());
    if suite_cfg.is_none() && !stat_harness::SUITES.contains(&name.as_str()) {
        return Err(config(format!(
            "unknown suite `{name}`; known: {}",
            stat_harness::SUITES.join(", ")
        )));
    }
    let out = target(&a.common, "verify")?;
    set_threads(a.common.threads);
    let (reports, seeds) = match &suite_cfg {
        Some(c) => (stat_harness::match_suite(c)?, vec![c.seed]),
        None => (run_suite(&name, a.replicas, seed)?, vec![seed]),
    };
    let mut run = RunDir::create(out)?;
    let failures = write_reports(&mut run, &reports)?;
    let cfg = RunConfig {
        command: "verify",
        seed,
        format: a.common.format,
        options: json!({"suite": name, "replicas": a.replicas, "suite_config": suite_cfg}),
    };
    finish(run, &cfg, &seeds)?;
    if failures > 0 {
        return Err(CliError::Failed(failures));
    }
    Ok(())
}

#[derive(Serialize)]
struct PolymerRow {
    model: Model,
    n: usize,
    env: u64,
    value: i64,
}

pub fn polymer(a: PolymerArgs) -> Result<(), CliError> {
    let sizes = sizes_of(a.n, &a.sizes)?;
    let envs = at_least_one("envs", a.envs)?;
    let (alpha, beta) = (positive("alpha", a.alpha)?, positive("beta", a.beta)?);
    let out = target(&a.common, "polymer")?;
    set_threads(a.common.threads);
    let seed = a.common.seed;
    let mut rows = Vec::new();
    let mut seeds = Vec::new();
    for &n in &sizes {
        let s = seed.wrapping_add(n as u64);
        let values: Vec<i64> = match a.model {
            Model::StatLoggamma => mc_checks::sample_midpoints(false, n, alpha, beta, envs, s)?,
            Model::StatStrictweak => mc_checks::sample_midpoints(true, n, alpha, beta, envs, s)?,
            Model::BetaRwre => {
                let params = ParamSet::homogeneous(alpha, beta, n + 2)?;
                mc_checks::replicate(s, envs, |rng| Ok(beta_rwre(&params, n, rng)?[n]))?
            }
        };
        seeds.push(s);
        rows.extend(values.into_iter().enumerate().map(|(e, value)| PolymerRow {
            model: a.model,
            n,
            env: e as u64,
            value,
        }));
    }
    let mut run = RunDir::create(out)?;
    let column = match a.model {
        Model::BetaRwre => "x_end",
        _ => "x_mid",
    };
    match a.common.format {
        Format::Jsonl => run.write("polymer.jsonl", &jsonl(&rows)?)?,
        Format::Csv => {
            let mut csv = format!("n,env,{column}\n");
            for r in &rows {
                csv.push_str(&format!("{},{},{}\n", r.n, r.env, r.value));
            }
            run.write("polymer.csv", &csv)?;
        }
    }
    let cfg = RunConfig {
        command: "polymer",
        seed,
        format: a.common.format,
        options: json!({"model": a.model, "sizes": sizes, "envs": envs, "alpha": alpha, "beta": beta}),
    };
    finish(run, &cfg, &seeds).map(|_| ())
}

pub fn free_energy(a: FreeEnergyArgs) -> Result<(), CliError> {
    let sizes = sizes_of(a.n, &a.sizes)?;
    for &t in &a.temps {
        positive("T", t)?;
    }
    if a.replicas == 1 {
        return Err(config("--replicas must be 0 (formulas only) or at least 2"));
    }
    let max_n = *sizes.iter().max().expect("non-empty");
    let (params, echo) = resolve_params(&a.weights, max_n)?;
    let out = target(&a.common, "free-energy")?;
    set_threads(a.common.threads);
    let seed = a.common.seed;
    let jobs: Vec<(usize, f64, u64)> = sizes
        .iter()
        .flat_map(|&n| a.temps.iter().map(move |&t| (n, t)))
        .enumerate()
        .map(|(i, (n, t))| (n, t, seed.wrapping_add(i as u64)))
        .collect();
    let reports: Vec<FreeEnergyReport> = jobs
        .par_iter()
        .map(|&(n, t, s)| {
            if a.replicas == 0 {
                stat_harness::free_energy_formulas(&params, n, t)
            } else {
                stat_harness::free_energy_mc(&params, n, t, a.replicas, s)
            }
        })
        .collect::<Result<_, _>>()?;
    let mut run = RunDir::create(out)?;
    match a.common.format {
        Format::Jsonl => run.write("free-energy.jsonl", &jsonl(&reports)?)?,
        Format::Csv => {
            let mut csv = format!("{}\n", FreeEnergyReport::CSV_HEADER);
            for r in &reports {
                csv.push_str(&r.csv_row());
                csv.push('\n');
            }
            run.write("free-energy.csv", &csv)?;
        }
    }
    let seeds: Vec<u64> = jobs.iter().map(|j| j.2).collect();
    let cfg = RunConfig {
        command: "free-energy",
        seed,
        format: a.common.format,
        options: json!({"sizes": sizes, "T": a.temps, "replicas": a.replicas, "weights": echo}),
    };
    finish(run, &cfg, &seeds).map(|_| ())
}

pub fn characterize(a: CharacterizeArgs) -> Result<(), CliError> {
    let replicas = at_least_one("replicas", a.replicas)?;
    let out = target(&a.common, "characterize")?;
    set_threads(a.common.threads);
    let seed = a.common.seed;
    let mut reports = Vec::new();
    if matches!(a.control, Control::None | Control::Both) {
        reports.push(mc_checks::gamma_preservation(replicas, seed)?);
    }
    if matches!(a.control, Control::Lognormal | Control::Both) {
        reports.push(mc_checks::lognormal_control(replicas, seed)?);
    }
    let mut run = RunDir::create(out)?;
    let failures = write_reports(&mut run, &reports)?;
    let cfg = RunConfig {
        command: "characterize",
        seed,
        format: a.common.format,
        options: json!({"control": a.control, "replicas": replicas}),
    };
    finish(run, &cfg, &[seed])?;
    if failures > 0 {
        return Err(CliError::Failed(failures));
    }
    Ok(())
}
