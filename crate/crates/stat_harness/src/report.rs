use serde::{Deserialize, Serialize};

/// Which side of the threshold counts as a pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Pass iff `statistic < threshold`.
    Below,
    /// Pass iff `statistic > threshold`.
    Above,
}

/// Outcome of one statistical or exact check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub id: String,
    pub statistic: f64,
    pub threshold: f64,
    pub side: Side,
    pub sample_sizes: Vec<usize>,
    pub pass: bool,
    pub seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
    /// Component checks of a combined report.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<TestReport>,
}

impl TestReport {
    /// `pass` is derived from the statistic; NaN never passes.
    pub fn new(id: impl Into<String>, statistic: f64, threshold: f64, side: Side) -> Self {
        let pass = match side {
            Side::Below => statistic < threshold,
            Side::Above => statistic > threshold,
        };
        Self {
            id: id.into(),
            statistic,
            threshold,
            side,
            sample_sizes: Vec::new(),
            pass,
            seeds: Vec::new(),
            note: String::new(),
            parts: Vec::new(),
        }
    }

    pub fn below(id: impl Into<String>, statistic: f64, threshold: f64) -> Self {
        Self::new(id, statistic, threshold, Side::Below)
    }

    pub fn above(id: impl Into<String>, statistic: f64, threshold: f64) -> Self {
        Self::new(id, statistic, threshold, Side::Above)
    }

    pub fn with_sizes(mut self, sizes: impl Into<Vec<usize>>) -> Self {
        self.sample_sizes = sizes.into();
        self
    }

    pub fn with_seeds(mut self, seeds: impl Into<Vec<u64>>) -> Self {
        self.seeds = seeds.into();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn to_jsonl(&self) -> String {
        serde_json::to_string(self).expect("report fields serialize")
    }

    /// `id,statistic,threshold,pass` with the id quoted.
    pub fn csv_row(&self) -> String {
        format!("\"{}\",{},{},{}", self.id, self.statistic, self.threshold, self.pass)
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let op = match self.side {
            Side::Below => "<",
            Side::Above => ">",
        };
        format!(
            "[{}] {}: {:.4e} {} {:.4e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.statistic,
            op,
            self.threshold
        )
    }
}

pub const CSV_HEADER: &str = "id,statistic,threshold,pass";

/// Folds several reports into one that passes only if all do; the statistic
/// is the number of failures.
pub fn all_of(id: impl Into<String>, parts: &[TestReport]) -> TestReport {
    let failures = parts.iter().filter(|r| !r.pass).count();
    let mut seeds: Vec<u64> = parts.iter().flat_map(|r| r.seeds.iter().copied()).collect();
    seeds.sort_unstable();
    seeds.dedup();
    let sizes: Vec<usize> = parts.iter().flat_map(|r| r.sample_sizes.iter().copied()).collect();
    let note = parts
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.line())
        .collect::<Vec<_>>()
        .join("; ");
    let mut r = TestReport::below(id, failures as f64, 0.5)
        .with_seeds(seeds)
        .with_sizes(sizes)
        .with_note(note);
    r.parts = parts.to_vec();
    r
}

impl TestReport {
    /// This report and all nested parts, depth first.
    pub fn flatten(&self) -> Vec<&TestReport> {
        let mut out = vec![self];
        for p in &self.parts {
            out.extend(p.flatten());
        }
        out
    }
}
