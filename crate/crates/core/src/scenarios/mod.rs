//! Worked examples as runnable scenarios. Each run produces named scalar
//! outputs plus a list of checked assertions.

mod detector;
mod flow;
mod generation;
mod scattering;

use serde::Serialize;

use crate::tolerance::Tolerances;

pub use detector::{
    apparatus_reality_check, detector_array_state, measurement_entropy_bookkeeping, packet_profile, DetectorArraySpec,
    PacketProfile, PACKET_TAIL_THRESHOLD,
};
pub use flow::two_qubit_information_flow;
pub use generation::irreality_generation;
pub use scattering::{
    scattering_overlaps, scattering_scenario, scattering_state, ScatteringOutcome, ScatteringParams, DEGENERATE_OVERLAP,
};

/// How an assertion compares `measured` against `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// `|measured - expected| <= tol`.
    Identity { tol: f64 },
    /// `measured >= expected - tol`.
    AtLeast { tol: f64 },
    /// `measured <= expected + tol`.
    AtMost { tol: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub id: String,
    /// The formula or statement being checked.
    pub anchor: String,
    pub measured: f64,
    pub expected: f64,
    pub check: Check,
}

impl Assertion {
    pub fn identity(id: impl Into<String>, anchor: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        Assertion {
            id: id.into(),
            anchor: anchor.into(),
            measured,
            expected,
            check: Check::Identity { tol },
        }
    }

    pub fn at_least(id: impl Into<String>, anchor: impl Into<String>, measured: f64, bound: f64, tol: f64) -> Self {
        Assertion {
            id: id.into(),
            anchor: anchor.into(),
            measured,
            expected: bound,
            check: Check::AtLeast { tol },
        }
    }

    pub fn at_most(id: impl Into<String>, anchor: impl Into<String>, measured: f64, bound: f64, tol: f64) -> Self {
        Assertion {
            id: id.into(),
            anchor: anchor.into(),
            measured,
            expected: bound,
            check: Check::AtMost { tol },
        }
    }

    /// Identities: `tol - |measured - expected|`. Inequalities: the signed
    /// margin by which the bound holds.
    pub fn slack(&self) -> f64 {
        match self.check {
            Check::Identity { tol } => tol - (self.measured - self.expected).abs(),
            Check::AtLeast { .. } => self.measured - self.expected,
            Check::AtMost { .. } => self.expected - self.measured,
        }
    }

    pub fn passed(&self) -> bool {
        let slack = self.slack();
        match self.check {
            Check::Identity { .. } => slack >= 0.0,
            Check::AtLeast { tol } | Check::AtMost { tol } => slack >= -tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioResult {
    pub name: String,
    pub values: Vec<(String, f64)>,
    pub assertions: Vec<Assertion>,
    pub tolerances: Tolerances,
}

impl ScenarioResult {
    pub fn new(name: impl Into<String>, tolerances: &Tolerances) -> Self {
        ScenarioResult {
            name: name.into(),
            values: Vec::new(),
            assertions: Vec::new(),
            tolerances: *tolerances,
        }
    }

    pub fn record(&mut self, name: &str, value: f64) {
        self.values.push((name.to_string(), value));
    }

    pub fn assert(&mut self, assertion: Assertion) {
        self.assertions.push(assertion);
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn assertion(&self, id: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.id == id)
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(Assertion::passed)
    }
}
