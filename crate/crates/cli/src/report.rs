//! Report assembly and rendering.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "cmlab-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Violation,
    Error,
    BudgetExceeded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Violation => "violation",
            Status::Error => "error",
            Status::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub index: usize,
    pub statement: String,
    pub context: String,
    pub status: Status,
    pub value: Value,
    pub expect: Option<String>,
    pub citation: Option<String>,
    pub steps: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    pub detail: Value,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub scenario: String,
    pub budget: u64,
    pub summary: Summary,
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub violation: usize,
    pub error: usize,
    pub budget_exceeded: usize,
}

impl Report {
    pub fn new(scenario: &str, budget: u64, checks: Vec<CheckReport>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Violation => summary.violation += 1,
                Status::Error => summary.error += 1,
                Status::BudgetExceeded => summary.budget_exceeded += 1,
            }
        }
        Report {
            schema: SCHEMA,
            scenario: scenario.to_string(),
            budget,
            summary,
            checks,
        }
    }

    /// 0 when every check passes, 1 on a violation, 2 on an engine error or
    /// an exhausted budget.
    pub fn exit_code(&self) -> i32 {
        if self.summary.error > 0 || self.summary.budget_exceeded > 0 {
            2
        } else if self.summary.violation > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("scenario {} (budget {} steps)\n", self.scenario, self.budget);
        for c in &self.checks {
            let value = match &c.value {
                Value::String(s) => s.clone(),
                Value::Null => "-".into(),
                v => v.to_string(),
            };
            out.push_str(&format!("[{}] {} => {}", c.status.as_str(), c.statement, value));
            if let Some(t) = &c.citation {
                out.push_str(&format!(" ({t})"));
            }
            if let Some(e) = &c.error {
                out.push_str(&format!(": {e}"));
            }
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} checks: {} pass, {} violation, {} error, {} budget-exceeded\n",
            self.checks.len(),
            s.pass,
            s.violation,
            s.error,
            s.budget_exceeded
        ));
        out
    }
}
