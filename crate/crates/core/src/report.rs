//! Outcome records for identity checks, and their line-delimited form.

use std::fmt;

use serde::Serialize;

use crate::tensor::{Amplitude, Tensor};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Status {
    ExactHold,
    HoldsUpToScalar(Amplitude),
    Fails,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::ExactHold => "exact",
            Status::HoldsUpToScalar(_) => "up-to-scalar",
            Status::Fails => "fails",
        }
    }

    pub fn holds(&self) -> bool {
        !matches!(self, Status::Fails)
    }
}

/// What the suite expects a relation to do. A `Mismatch` relation is one
/// whose sides are known to differ; its `Fails` is recorded, not fatal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Holds,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub id: String,
    pub status: Status,
    /// `‖lhs − rhs‖∞` for exact holds and failures, `‖lhs − λ·rhs‖∞` otherwise.
    pub max_deviation: f64,
    pub lhs: String,
    pub rhs: String,
    pub expectation: Expectation,
    pub note: Option<String>,
}

impl RelationReport {
    /// Compares two tensors: exact within `tol`, else up to one scalar, else
    /// a failure.
    pub fn compare(id: &str, lhs_desc: &str, lhs: &Tensor, rhs_desc: &str, rhs: &Tensor, tol: f64) -> Self {
        let (status, max_deviation, note) = match lhs.max_abs_diff(rhs) {
            Err(e) => (Status::Fails, f64::INFINITY, Some(e.to_string())),
            Ok(dev) if dev <= tol => (Status::ExactHold, dev, None),
            Ok(dev) => match lhs.equal_up_to_scalar(rhs, tol) {
                // λ = 0 would make any vanishing lhs "hold"
                Ok(Some(lambda)) if lambda.norm() > tol => {
                    let scaled = lhs.max_abs_diff(&rhs.scale(lambda)).unwrap_or(f64::INFINITY);
                    (Status::HoldsUpToScalar(lambda), scaled, None)
                }
                _ => (Status::Fails, dev, None),
            },
        };
        RelationReport {
            id: id.to_string(),
            status,
            max_deviation,
            lhs: lhs_desc.to_string(),
            rhs: rhs_desc.to_string(),
            expectation: Expectation::Holds,
            note,
        }
    }

    /// Folds sub-checks of one relation family into a single report: failing
    /// if any part fails, exact if all parts are exact, else up to the scalar
    /// of the first scaled part.
    pub fn combine(id: &str, parts: Vec<RelationReport>) -> Self {
        let status = if parts.iter().any(|p| p.status == Status::Fails) {
            Status::Fails
        } else {
            parts
                .iter()
                .map(|p| p.status)
                .find(|s| matches!(s, Status::HoldsUpToScalar(_)))
                .unwrap_or(Status::ExactHold)
        };
        let max_deviation = parts.iter().map(|p| p.max_deviation).fold(0.0, f64::max);
        let join = |f: fn(&RelationReport) -> &str| {
            parts.iter().map(f).collect::<Vec<_>>().join("; ")
        };
        let notes: Vec<&str> = parts.iter().filter_map(|p| p.note.as_deref()).collect();
        RelationReport {
            id: id.to_string(),
            status,
            max_deviation,
            lhs: join(|p| &p.lhs),
            rhs: join(|p| &p.rhs),
            expectation: Expectation::Holds,
            note: (!notes.is_empty()).then(|| notes.join("; ")),
        }
    }

    pub fn expecting_mismatch(mut self) -> Self {
        self.expectation = Expectation::Mismatch;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn lambda(&self) -> Option<Amplitude> {
        match self.status {
            Status::ExactHold => Some(Amplitude::new(1.0, 0.0)),
            Status::HoldsUpToScalar(l) => Some(l),
            Status::Fails => None,
        }
    }

    /// A failure the suite did not expect.
    pub fn is_unexpected_failure(&self) -> bool {
        self.status == Status::Fails && self.expectation == Expectation::Holds
    }

    pub fn to_record(&self) -> ReportRecord<'_> {
        let lambda = self.lambda();
        ReportRecord {
            id: &self.id,
            status: self.status.label(),
            lambda_re: lambda.map(|l| l.re),
            lambda_im: lambda.map(|l| l.im),
            lambda_is_one: lambda.is_some_and(|l| l == Amplitude::new(1.0, 0.0)),
            deviation: self.max_deviation,
            expected: self.expectation,
            lhs: &self.lhs,
            rhs: &self.rhs,
            note: self.note.as_deref(),
        }
    }

    /// One JSON object on one line, fields in a fixed order.
    pub fn to_record_line(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("record is plain data")
    }
}

/// Flat, stably ordered view of a [`RelationReport`] for serialization.
#[derive(Debug, Serialize)]
pub struct ReportRecord<'a> {
    pub id: &'a str,
    pub status: &'static str,
    pub lambda_re: Option<f64>,
    pub lambda_im: Option<f64>,
    pub lambda_is_one: bool,
    pub deviation: f64,
    pub expected: Expectation,
    pub lhs: &'a str,
    pub rhs: &'a str,
    pub note: Option<&'a str>,
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<28} {:<13}", self.id, self.status.label())?;
        match self.status {
            Status::HoldsUpToScalar(l) => write!(f, " λ={:<22}", format!("{:.12}", l))?,
            _ => write!(f, " {:<24}", "")?,
        }
        write!(f, " dev={:.3e}", self.max_deviation)?;
        if self.expectation == Expectation::Mismatch {
            write!(f, " (expected mismatch)")?;
        }
        if let Some(note) = &self.note {
            write!(f, "  # {note}")?;
        }
        Ok(())
    }
}
