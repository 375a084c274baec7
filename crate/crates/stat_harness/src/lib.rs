//! Statistical tests, free-energy formulas and the verification suites that
//! tie the Aztec model, the exact oracles and the polymer models together.

mod error;
pub mod exact_checks;
mod free_energy;
mod gof;
mod independence;
pub mod mc_checks;
mod report;
mod scaling;
mod suite;

pub use error::HarnessError;
pub use free_energy::{free_energy_formulas, free_energy_mc, FreeEnergyReport, FreeEnergySample};
pub use gof::{
    bootstrap_tv_quantile, chi_square_gof, discrete_two_sample, kolmogorov_p, ks_critical,
    ks_one_sample, ks_statistic, tally, ChiSquare, KsResult, TwoSample,
};
pub use independence::{independence_suite, pearson, Independence};
pub use report::{all_of, Side, TestReport, CSV_HEADER};
pub use scaling::{fit_power_law, scaling_exponent, std_dev, ScalingFit};
pub use suite::{match_suite, run_suite, SuiteConfig, SUITES};
