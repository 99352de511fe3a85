use std::io::Write;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::RadiusBracket;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Counterexample,
    /// Equality or exception case the theorem names.
    Case,
    Winner,
}

/// One spec in a report; also the CSV row schema.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecRow {
    pub n: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub rho_lo: f64,
    pub rho_hi: f64,
    /// `below`, `above` or `window` (strictly between `√(2+√5)` and `λ*`).
    pub verdict: String,
    pub family: String,
    pub spec: String,
    pub role: Role,
    pub note: String,
}

impl SpecRow {
    pub(crate) fn sort_key(&self) -> (Role, usize, usize, String) {
        (self.role, self.n, self.d, self.spec.clone())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub range: String,
    pub scanned: usize,
    pub below_threshold: usize,
    pub counterexamples: Vec<SpecRow>,
    pub cases: Vec<SpecRow>,
    /// Canonical specs the theorem predicts as `cases`.
    pub expected_cases: Vec<String>,
    pub cases_match: bool,
    pub notes: Vec<String>,
    pub passed: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub(crate) fn finish(mut self, started: std::time::Instant) -> Self {
        self.counterexamples.sort_by_key(SpecRow::sort_key);
        self.cases.sort_by_key(SpecRow::sort_key);
        self.expected_cases.sort();
        self.passed = self.counterexamples.is_empty() && self.cases_match;
        self.wall_time = started.elapsed();
        self
    }

    /// Counterexamples first, then cases.
    pub fn rows(&self) -> impl Iterator<Item = &SpecRow> {
        self.counterexamples.iter().chain(&self.cases)
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self).map_err(json_err)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        write_rows(w, self.rows())
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn summary_line(&self) -> String {
        let expected = if self.expected_cases.is_empty() {
            String::new()
        } else {
            format!(" (expected {})", self.expected_cases.len())
        };
        format!(
            "{} [{}]: scanned {}, below threshold {}, counterexamples {}, cases {}{expected}: {}",
            self.theorem,
            self.range,
            self.scanned,
            self.below_threshold,
            self.counterexamples.len(),
            self.cases.len(),
            self.verdict()
        )
    }

    /// Wall time, kept out of the data so identical runs give identical files.
    pub fn footer(&self) -> String {
        format!("# wall time {:.3} s", self.wall_time.as_secs_f64())
    }
}

fn json_err(e: serde_json::Error) -> Error {
    if e.is_io() {
        Error::Io(e.into())
    } else {
        Error::Config(format!("json encoding: {e}"))
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Config(format!("csv encoding: {other:?}")),
    }
}

/// CSV with one header line and one line per row.
pub fn write_rows<'a, W: Write>(w: W, rows: impl IntoIterator<Item = &'a SpecRow>) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record([
        "n", "D", "rho_lo", "rho_hi", "verdict", "family", "spec", "role", "note",
    ])
    .map_err(csv_err)?;
    for row in rows {
        out.serialize(row).map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

/// Result of an exhaustive minimization at fixed `(n, D)`.
#[derive(Clone, Debug, Serialize)]
pub struct MinimizerResult {
    pub n: usize,
    #[serde(rename = "D")]
    pub d: usize,
    /// Every candidate whose radius equals the minimum exactly.
    pub argmin: Vec<String>,
    pub families: Vec<String>,
    pub rho: RadiusBracket,
    pub unique: bool,
    pub candidates: usize,
    pub in_theorem_range: bool,
    /// The predicted graph as the formula writes it, and collapsed.
    pub predicted: Option<String>,
    pub predicted_canonical: Option<String>,
    pub matches_prediction: Option<bool>,
    /// Winner inside the `(D−⌊n/2⌋)`-Urchin and outside the Laundry.
    pub urchin_not_laundry: Option<bool>,
}

impl MinimizerResult {
    /// Whether every claim made for this `(n, D)` holds; pairs outside the
    /// theorem's range make none.
    pub fn holds(&self) -> bool {
        !self.in_theorem_range
            || (self.unique
                && self.matches_prediction == Some(true)
                && self.urchin_not_laundry == Some(true))
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self).map_err(json_err)
    }
}
