//! Residual reports returned by every sampled check.
//!
//! A report never collapses to a bare boolean: each entry carries the worst
//! residual seen, the threshold it was compared against and, when available,
//! the arguments that produced it.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub check: String,
    pub max_residual: f64,
    pub threshold: f64,
    pub passed: bool,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub entries: Vec<Residual>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            entries: Vec::new(),
        }
    }

    pub fn with_entry(mut self, entry: Residual) -> Self {
        self.entries.push(entry);
        self
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.max_residual)
            .fold(0.0, f64::max)
    }

    pub fn entry(&self, check: &str) -> Option<&Residual> {
        self.entries.iter().find(|e| e.check == check)
    }

    /// Concatenates the entries of several reports under a new name.
    pub fn merge(name: impl Into<String>, parts: impl IntoIterator<Item = Report>) -> Self {
        let mut out = Report::new(name);
        for part in parts {
            out.entries.extend(part.entries);
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.name)?;
        for e in &self.entries {
            write!(
                f,
                " [{} {} max={:.3e} tol={:.1e}]",
                e.check,
                if e.passed { "ok" } else { "FAIL" },
                e.max_residual,
                e.threshold
            )?;
        }
        Ok(())
    }
}

/// Running maximum of a residual over samples.
#[derive(Debug, Clone)]
pub struct Tracker {
    check: String,
    threshold: f64,
    max: f64,
    samples: usize,
    witness: Option<Vec<String>>,
}

impl Tracker {
    pub fn new(check: impl Into<String>, threshold: f64) -> Self {
        Tracker {
            check: check.into(),
            threshold,
            max: 0.0,
            samples: 0,
            witness: None,
        }
    }

    /// Records one residual. `describe` is only called when the sample becomes
    /// the new worst case.
    pub fn observe<F>(&mut self, residual: f64, describe: F)
    where
        F: FnOnce() -> Vec<String>,
    {
        self.samples += 1;
        // NaN counts as an unbounded failure.
        let r = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual
        };
        if r > self.max || (self.witness.is_none() && r > 0.0) {
            self.max = r;
            self.witness = Some(describe());
        }
    }

    pub fn finish(self) -> Residual {
        Residual {
            passed: self.max <= self.threshold,
            check: self.check,
            max_residual: self.max,
            threshold: self.threshold,
            samples: self.samples,
            witness: self.witness,
        }
    }
}
