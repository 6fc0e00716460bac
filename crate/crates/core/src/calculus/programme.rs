//! Handle programmes: ordered lists of attachments, run against a manifold.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::manifold::{ColouredManifold, LedgerSummary};
use super::CalculusError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    Attach1 { feet: [String; 2] },
    Attach2 { curve: String },
}

impl Step {
    pub fn attach1(a: &str, b: &str) -> Self {
        Step::Attach1 { feet: [a.to_string(), b.to_string()] }
    }

    pub fn attach2(curve: &str) -> Self {
        Step::Attach2 { curve: curve.to_string() }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Attach1 { feet: [a, b] } => write!(f, "attach1({a}, {b})"),
            Step::Attach2 { curve } => write!(f, "attach2({curve})"),
        }
    }
}

/// 1-handles first, then 2-handles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HandleProgramme {
    pub steps: Vec<Step>,
}

impl HandleProgramme {
    pub fn new(steps: Vec<Step>) -> Self {
        HandleProgramme { steps }
    }

    /// Index of the first 1-handle that follows a 2-handle.
    pub fn order_violation(&self) -> Option<usize> {
        let first_two = self.steps.iter().position(|s| matches!(s, Step::Attach2 { .. }))?;
        self.steps.iter().skip(first_two).position(|s| matches!(s, Step::Attach1 { .. })).map(|i| i + first_two)
    }

    pub fn from_json(text: &str) -> Result<Self, CalculusError> {
        serde_json::from_str(text).map_err(|e| CalculusError::Parse(e.to_string()))
    }
}

/// The ledger counts before any step (`step` is `None`) and after each one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub step: Option<usize>,
    #[serde(flatten)]
    pub summary: LedgerSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("step {step}: {error}")]
pub struct ProgrammeError {
    pub step: usize,
    pub error: CalculusError,
}

/// Runs the steps in order and records the ledger counts after each one.
/// A 1-handle after a 2-handle is rejected before anything runs.
pub fn run_programme(
    m0: &ColouredManifold,
    programme: &HandleProgramme,
) -> Result<(ColouredManifold, Vec<TraceEntry>), ProgrammeError> {
    if let Some(step) = programme.order_violation() {
        let error = CalculusError::OrderViolation(format!("{} follows a 2-handle", programme.steps[step]));
        return Err(ProgrammeError { step, error });
    }
    let mut m = m0.clone();
    let mut trace = vec![TraceEntry { step: None, summary: m.summary() }];
    for (i, step) in programme.steps.iter().enumerate() {
        let next = match step {
            Step::Attach1 { feet: [a, b] } => m.attach_1_handle(a, b),
            Step::Attach2 { curve } => m.attach_2_handle(curve),
        };
        m = next.map_err(|error| ProgrammeError { step: i, error })?;
        trace.push(TraceEntry { step: Some(i), summary: m.summary() });
    }
    Ok((m, trace))
}
