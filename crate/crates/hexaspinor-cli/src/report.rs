//! JSON-lines reports: one line per check, then a summary line.

use std::time::Duration;

use hexaspinor::Check;
use serde_json::{json, Value};

use crate::json::to_line;

#[derive(Debug, Clone)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub duration: Duration,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn check_line(&self, c: &Check) -> Value {
        json!({
            "suite": self.suite,
            "check": c.name,
            "residual": if c.residual.is_finite() { json!(c.residual) } else { json!(format!("{}", c.residual)) },
            "threshold": c.threshold,
            "pass": c.pass(),
        })
    }

    pub fn summary(&self, timing: bool) -> Value {
        let mut v = json!({
            "suite": self.suite,
            "pass": self.pass(),
            "checks": self.checks.len(),
            "failed": self.checks.iter().filter(|c| !c.pass()).count(),
        });
        if timing {
            v["duration_ms"] = json!(self.duration.as_secs_f64() * 1e3);
        }
        v
    }

    pub fn render(&self, timing: bool) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&to_line(&self.check_line(c)));
            s.push('\n');
        }
        s.push_str(&to_line(&self.summary(timing)));
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            suite: "demo".into(),
            checks: vec![Check::new("a", 1e-14, 1e-10), Check::new("b", f64::NAN, 1e-10)],
            duration: Duration::from_millis(3),
        }
    }

    #[test]
    fn overall_pass_is_conjunction() {
        let r = sample();
        assert!(!r.pass());
        assert_eq!(r.summary(false)["failed"], 1);
        assert!(r.summary(false).get("duration_ms").is_none());
        assert!(r.summary(true).get("duration_ms").is_some());
    }

    #[test]
    fn nan_residual_is_a_string() {
        let text = sample().render(false);
        let second: Value = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
        assert_eq!(second["residual"], "NaN");
        assert_eq!(second["pass"], false);
    }
}
