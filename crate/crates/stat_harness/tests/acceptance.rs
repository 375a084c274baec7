//! The twelve acceptance criteria, one line each. Runs as a plain binary so
//! the summary is printed even when test output is captured.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use stat_harness::exact_checks::{self as exact, SliceKind};
use stat_harness::mc_checks::{self as mc, Boundary};
use stat_harness::{all_of, HarnessError, TestReport};

const SEED: u64 = 20_240_601;

struct Criterion {
    label: &'static str,
    budget: Duration,
    run: fn() -> Result<TestReport, HarnessError>,
}

fn factorization() -> Result<TestReport, HarnessError> {
    exact::factorization(&[1, 2, 3, 4, 5], 50, SEED)
}

fn shuffle() -> Result<TestReport, HarnessError> {
    let parts = [
        mc::shuffle_law(2, 5, 100_000, 0.02, SEED)?,
        mc::shuffle_law(3, 5, 100_000, 0.02, SEED)?,
    ];
    Ok(all_of("shuffle-law", &parts))
}

fn slices() -> Result<TestReport, HarnessError> {
    let mut parts = Vec::new();
    for kind in [SliceKind::Vertical, SliceKind::Horizontal] {
        for (n, ell) in [(3, 1), (3, 2), (3, 3), (4, 2)] {
            parts.push(exact::slice_matching(kind, n, ell, 5, SEED)?);
        }
    }
    Ok(all_of("slice-matchings", &parts))
}

fn dynamic() -> Result<TestReport, HarnessError> {
    let parts = [exact::dynamic_slice(1, 3, 5, SEED)?, exact::dynamic_slice(2, 3, 5, SEED)?];
    Ok(all_of("dynamic-slice", &parts))
}

fn east() -> Result<TestReport, HarnessError> {
    let parts = [
        mc::turning_point_match(Boundary::East, 6, 0.8, 0.8, 100_000, 0.03, SEED)?,
        mc::east_clt(2000, 1.0, 1.0, 100_000, SEED)?,
    ];
    Ok(all_of("east-turning", &parts))
}

fn west_south() -> Result<TestReport, HarnessError> {
    let parts = [
        mc::turning_point_match(Boundary::West, 10, 0.8, 0.8, 100_000, 0.03, SEED)?,
        mc::turning_point_match(Boundary::South, 10, 0.8, 0.8, 100_000, 0.03, SEED)?,
    ];
    Ok(all_of("west-south-turning", &parts))
}

fn burke() -> Result<TestReport, HarnessError> {
    mc::burke(100_000, SEED)
}

fn gamma() -> Result<TestReport, HarnessError> {
    let parts = [
        mc::gamma_preservation(100_000, SEED)?,
        mc::lognormal_control(100_000, SEED)?,
    ];
    Ok(all_of("gamma-preservation", &parts))
}

fn free_energy() -> Result<TestReport, HarnessError> {
    mc::free_energy(20, &[0.01, 1.0, 100.0], 0.5, 0.5, 10_000, SEED)
}

fn scaling() -> Result<TestReport, HarnessError> {
    mc::scaling(&[64, 128, 256, 512], 2_500, SEED)
}

fn transforms() -> Result<TestReport, HarnessError> {
    exact::graph_transforms(SEED)
}

fn fock() -> Result<TestReport, HarnessError> {
    exact::fock_limit(10, 5, SEED)
}

const CRITERIA: [Criterion; 12] = [
    Criterion { label: "partition-function factorization", budget: Duration::from_secs(10), run: factorization },
    Criterion { label: "shuffle correctness", budget: Duration::from_secs(60), run: shuffle },
    Criterion { label: "quenched slice matchings", budget: Duration::from_secs(60), run: slices },
    Criterion { label: "quenched dynamical matching", budget: Duration::from_secs(120), run: dynamic },
    Criterion { label: "east turning point", budget: Duration::from_secs(120), run: east },
    Criterion { label: "west/south stationary matchings", budget: Duration::from_secs(300), run: west_south },
    Criterion { label: "burke property", budget: Duration::from_secs(120), run: burke },
    Criterion { label: "gamma preservation and lognormal probe", budget: Duration::from_secs(120), run: gamma },
    Criterion { label: "free energy", budget: Duration::from_secs(60), run: free_energy },
    Criterion { label: "turning-point scaling", budget: Duration::from_secs(600), run: scaling },
    Criterion { label: "graph-transform identities", budget: Duration::from_secs(30), run: transforms },
    Criterion { label: "fock-weight limit", budget: Duration::from_secs(1), run: fock },
];

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let verbose = args.iter().any(|a| a == "--verbose");
    let only: Vec<usize> = args.iter().filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (k, c) in CRITERIA.iter().enumerate() {
        let id = k + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let in_budget = took <= c.budget;
        let line = match &result {
            Ok(r) if r.pass && in_budget => format!("PASS {id:>2} {} ({:.1}s)", c.label, took.as_secs_f64()),
            Ok(r) if r.pass => format!(
                "FAIL {id:>2} {} ({:.1}s, over the {}s budget)",
                c.label,
                took.as_secs_f64(),
                c.budget.as_secs()
            ),
            Ok(r) => format!("FAIL {id:>2} {} ({:.1}s): {}", c.label, took.as_secs_f64(), r.note),
            Err(e) => format!("FAIL {id:>2} {} : error {e}", c.label),
        };
        if !line.starts_with("PASS") {
            failed += 1;
        }
        println!("{line}");
        if let (true, Ok(r)) = (verbose, &result) {
            for part in r.flatten().into_iter().skip(1).filter(|p| p.parts.is_empty()) {
                let note = if part.note.is_empty() { String::new() } else { format!(" ({})", part.note) };
                println!("       {}{note}", part.line());
            }
        }
    }
    println!("acceptance: {failed} failing criteria");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
