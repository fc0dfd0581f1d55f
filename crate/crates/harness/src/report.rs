//! Suite reports and the per-check tally that produces them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use trimetric::Point;

/// Where the worst margin of a check was observed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub domain: String,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

impl Witness {
    pub fn new(domain: impl Into<String>, points: &[&Point]) -> Self {
        Witness {
            domain: domain.into(),
            points: points.iter().map(|p| p.coords().to_vec()).collect(),
            params: BTreeMap::new(),
        }
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.into(), value);
        self
    }
}

/// Outcome of one inequality check, `LHS <= RHS + tolerance` per sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub suite_id: String,
    pub check: String,
    pub seed: u64,
    pub samples: u64,
    pub violations: u64,
    /// Minimum over samples of `RHS - LHS`; `None` when nothing was sampled.
    pub worst_margin: Option<f64>,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    /// Recorded for documentation only; never affects the exit status.
    #[serde(default)]
    pub informational: bool,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, f64>,
    pub elapsed: f64,
}

impl ComparisonReport {
    pub fn failed(&self) -> bool {
        !self.informational && self.violations > 0
    }
}

/// Running statistics of one check.
#[derive(Clone, Debug)]
pub struct Tally {
    check: String,
    tolerance: f64,
    lambda: Option<f64>,
    t: Option<f64>,
    informational: bool,
    samples: u64,
    violations: u64,
    worst: Option<(f64, Witness)>,
    notes: BTreeMap<String, f64>,
}

impl Tally {
    pub fn new(check: impl Into<String>, tolerance: f64) -> Self {
        Tally {
            check: check.into(),
            tolerance,
            lambda: None,
            t: None,
            informational: false,
            samples: 0,
            violations: 0,
            worst: None,
            notes: BTreeMap::new(),
        }
    }

    pub fn lambda(mut self, l: f64) -> Self {
        self.lambda = Some(l);
        self
    }

    pub fn t(mut self, t: f64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    /// Record `lhs <= rhs`.
    pub fn le(&mut self, lhs: f64, rhs: f64, witness: impl FnOnce() -> Witness) {
        self.margin(rhs - lhs, witness);
    }

    /// Record `lhs == rhs`; the margin is `-|lhs - rhs|`.
    pub fn eq(&mut self, lhs: f64, rhs: f64, witness: impl FnOnce() -> Witness) {
        self.margin(0.0 - (lhs - rhs).abs(), witness);
    }

    pub fn margin(&mut self, margin: f64, witness: impl FnOnce() -> Witness) {
        self.samples += 1;
        // NaN counts as a violation
        if !(margin >= -self.tolerance) {
            self.violations += 1;
        }
        let worse = match &self.worst {
            None => true,
            Some((w, _)) => margin < *w || (margin.is_nan() && !w.is_nan()),
        };
        if worse {
            self.worst = Some((margin, witness()));
        }
    }

    pub fn note(&mut self, name: &str, value: f64) {
        self.notes.insert(name.into(), value);
    }

    pub fn violations(&self) -> u64 {
        self.violations
    }

    pub fn finish(self, suite_id: &str, seed: u64, elapsed: f64) -> ComparisonReport {
        let (worst_margin, witness) = match self.worst {
            Some((m, w)) => (Some(m), Some(w)),
            None => (None, None),
        };
        ComparisonReport {
            suite_id: suite_id.into(),
            check: self.check,
            seed,
            samples: self.samples,
            violations: self.violations,
            worst_margin,
            tolerance: self.tolerance,
            lambda: self.lambda,
            t: self.t,
            informational: self.informational,
            witness,
            notes: self.notes,
            elapsed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_tracks_the_worst_margin() {
        let mut t = Tally::new("a <= b", 1e-9);
        t.le(1.0, 2.0, || Witness::new("x", &[]));
        t.le(1.0, 1.0 - 1e-10, || Witness::new("y", &[]));
        t.le(2.0, 1.0, || Witness::new("z", &[]));
        t.le(1.0, 5.0, || Witness::new("w", &[]));
        let r = t.finish("S0", 1, 0.0);
        assert_eq!(r.samples, 4);
        assert_eq!(r.violations, 1);
        assert_eq!(r.worst_margin, Some(-1.0));
        assert_eq!(r.witness.unwrap().domain, "z");
        assert!(Tally::new("c", 0.0)
            .finish("S0", 1, 0.0)
            .worst_margin
            .is_none());
        let mut t = Tally::new("nan", 1e-9);
        t.le(f64::NAN, 1.0, Witness::default);
        assert_eq!(t.violations(), 1);
    }
}
