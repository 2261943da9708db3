use std::fmt;

use serde::Serialize;

/// Keeps at most this many violation messages; the count stays exact.
pub const MAX_LISTED_VIOLATIONS: usize = 20;

/// Outcome of one machine-checked claim on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub instance: String,
    /// Number of elements or pairs the claim was checked on.
    pub checked: u128,
    pub violation_count: u64,
    pub violations: Vec<String>,
}

impl LemmaReport {
    pub fn new(lemma: impl Into<String>, instance: impl Into<String>) -> Self {
        LemmaReport {
            lemma: lemma.into(),
            instance: instance.into(),
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn count(&mut self, k: u128) {
        self.checked += k;
    }

    pub fn violation(&mut self, message: impl FnOnce() -> String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED_VIOLATIONS {
            self.violations.push(message());
        }
    }

    /// Records one check of `ok`.
    pub fn expect(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation(message);
        }
    }

    pub const CSV_HEADER: [&'static str; 4] = ["lemma", "instance", "checked", "violations"];

    pub fn csv_row(&self) -> [String; 4] {
        [
            self.lemma.clone(),
            self.instance.clone(),
            self.checked.to_string(),
            self.violation_count.to_string(),
        ]
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] checked={} violations={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.lemma,
            self.instance,
            self.checked,
            self.violation_count
        )?;
        for v in &self.violations {
            write!(f, "\n    {v}")?;
        }
        Ok(())
    }
}

/// Writes reports as CSV rows with a header.
pub fn write_reports_csv<W: std::io::Write>(reports: &[LemmaReport], out: W) -> crate::error::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(LemmaReport::CSV_HEADER)?;
    for r in reports {
        w.write_record(r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}
