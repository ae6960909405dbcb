//! Tri-state verification outcomes.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }

    /// Combination of independent sub-checks: any FAIL wins, then any
    /// INCONCLUSIVE.
    pub fn and(self, o: Status) -> Status {
        match (self, o) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        }
    }
}

/// First disagreement found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub x_power: i64,
    /// Nome degree as a rational string.
    pub p_degree: String,
    pub lhs: String,
    pub rhs: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub window: i64,
    pub p_order: String,
    /// Number of coefficients compared.
    pub compared: usize,
    pub mismatch: Option<Mismatch>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(status: Status, window: i64, prec4: i64) -> Self {
        Verdict { status, window, p_order: deg_string(prec4), compared: 0, mismatch: None, notes: Vec::new() }
    }

    pub fn pass(window: i64, prec4: i64, compared: usize) -> Self {
        Verdict { compared, ..Verdict::new(Status::Pass, window, prec4) }
    }

    pub fn inconclusive(window: i64, prec4: i64, why: impl Into<String>) -> Self {
        Verdict::new(Status::Inconclusive, window, prec4).note(why)
    }

    pub fn fail(window: i64, prec4: i64, m: Mismatch) -> Self {
        Verdict { mismatch: Some(m), ..Verdict::new(Status::Fail, window, prec4) }
    }

    /// A failure without coefficient evidence (structural defects).
    pub fn fail_note(window: i64, prec4: i64, note: impl Into<String>) -> Self {
        let m = Mismatch { x_power: 0, p_degree: "0".into(), lhs: String::new(), rhs: String::new(), note: note.into() };
        Verdict::fail(window, prec4, m)
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Conjunction of two verdicts over the same truncation.
    pub fn and(mut self, o: Verdict) -> Verdict {
        let status = self.status.and(o.status);
        if self.mismatch.is_none() {
            self.mismatch = o.mismatch;
        }
        self.compared += o.compared;
        self.notes.extend(o.notes);
        self.status = status;
        self
    }
}

/// Quarter units rendered as a rational nome degree.
pub fn deg_string(deg4: i64) -> String {
    let q = num_rational::Ratio::new(deg4, 4);
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
