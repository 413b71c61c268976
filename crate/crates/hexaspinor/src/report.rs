//! Named residual checks shared by the verification suites.

use alloc::string::String;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            threshold,
        }
    }

    /// A boolean condition recorded as residual 0 (holds) or 1 (fails).
    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Self::new(name, if holds { 0.0 } else { 1.0 }, 0.5)
    }

    /// NaN residuals never pass.
    pub fn pass(&self) -> bool {
        self.residual <= self.threshold
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(Check::pass)
}

/// Running maximum helper for residual loops.
pub(crate) fn fmax(acc: &mut f64, x: f64) {
    if x > *acc || x.is_nan() {
        *acc = x;
    }
}
