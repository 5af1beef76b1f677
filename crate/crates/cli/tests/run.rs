use std::process::Command;

use cmlab::parse::parse;
use cmlab::report::Status;
use cmlab::run::{run, RunOptions};
use cmlab::scenarios::BUNDLED;
use serde_json::Value;

fn report(text: &str, opts: &RunOptions) -> cmlab::report::Report {
    run(&parse(text).unwrap(), "test", opts)
}

fn cmlab(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cmlab"))
        .args(args)
        .env_remove("CMLAB_BUDGET")
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn empty_scenario() {
    let r = report("", &RunOptions::default());
    let v: Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["checks"], Value::Array(vec![]));
    assert_eq!(v["schema"], "cmlab-report/1");
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn field_order_is_fixed() {
    let r = report("QQ[x,y]; check grade (x, y)", &RunOptions::default());
    let json = r.to_json();
    let v: serde_json::Map<String, Value> = serde_json::from_str(&json).unwrap();
    let keys: Vec<&str> = v.keys().map(String::as_str).collect();
    assert_eq!(keys, ["schema", "scenario", "budget", "summary", "checks"]);
    let check = v["checks"][0].as_object().unwrap();
    let keys: Vec<&str> = check.keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "index",
            "statement",
            "context",
            "status",
            "value",
            "expect",
            "citation",
            "steps",
            "detail",
            "error"
        ]
    );
    assert_eq!(check["value"], 2);
}

#[test]
fn infinity_and_booleans() {
    let r = report(
        "QQ[x,y]; check grade (1, x); check regular (x, y)",
        &RunOptions::default(),
    );
    let v: Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["checks"][0]["value"], "infinity");
    assert_eq!(v["checks"][1]["value"], true);
    assert!(r.to_json().contains("\"value\": true"));
}

#[test]
fn output_is_deterministic() {
    let text = BUNDLED.iter().map(|(_, t)| *t).collect::<Vec<_>>().join("\n");
    let text = text.replace("scenario \"", "# scenario \"");
    let a = report(&text, &RunOptions::default()).to_json();
    let b = report(&text, &RunOptions::default()).to_json();
    let c = report(
        &text,
        &RunOptions {
            jobs: 4,
            ..RunOptions::default()
        },
    )
    .to_json();
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn bundled_scenarios_pass() {
    for (name, text) in BUNDLED {
        let s = parse(text).unwrap();
        assert_eq!(s.name.as_deref(), Some(*name));
        let r = run(&s, name, &RunOptions::default());
        for c in &r.checks {
            assert_eq!(c.status, Status::Pass, "{name}: {} {:?}", c.statement, c.error);
        }
    }
}

#[test]
fn engine_errors_stay_in_place() {
    let r = report(
        "QQ[x,y]; pair_certificate(n=2); check grade (x); check unmixed (1)",
        &RunOptions::default(),
    );
    let status: Vec<Status> = r.checks.iter().map(|c| c.status).collect();
    assert_eq!(status, [Status::Error, Status::Pass, Status::Error]);
    assert!(r.checks[0].error.as_deref().unwrap().contains("pair_certificate"));
    assert_eq!(r.exit_code(), 2);
}

#[test]
fn budget_exhaustion_is_marked() {
    let text = "QQ[x,y,z]; check grade (x*y + z^2, x^2*z - y^3, x*z); check grade (x)";
    let r = report(
        text,
        &RunOptions {
            budget: Some(5),
            ..RunOptions::default()
        },
    );
    assert_eq!(r.checks.len(), 2);
    assert_eq!(r.checks[0].status, Status::BudgetExceeded);
    assert!(r.checks[0].steps > 5);
    assert_eq!(r.checks[1].status, Status::Pass);
    assert_eq!(r.exit_code(), 2);

    let scenario_budget = report(&format!("budget 5\n{text}"), &RunOptions::default());
    assert_eq!(scenario_budget.budget, 5);
    assert_eq!(scenario_budget.checks[0].status, Status::BudgetExceeded);
}

#[test]
fn expectations_decide_status() {
    let r = report(
        "QQ[x,y]; check grade (x*y, x^2) expect 1; check grade (x*y, x^2) expect 2",
        &RunOptions::default(),
    );
    assert_eq!(r.checks[0].status, Status::Pass);
    assert_eq!(r.checks[1].status, Status::Violation);
    assert_eq!(r.exit_code(), 1);

    let cm = report("QQ[x,y]/(x^2, x*y); check cm [(y)]", &RunOptions::default());
    assert_eq!(cm.checks[0].status, Status::Violation);
}

#[test]
fn binary_exit_codes() {
    assert_eq!(cmlab(&["check", "QQ[x]; check grade (x) expect 1"]).0, 0);
    assert_eq!(cmlab(&["check", "QQ[x]; check grade (x) expect 0"]).0, 1);
    assert_eq!(cmlab(&["check", "QQ[x]; check grade (x) in QQ[y]"]).0, 2);
    assert_eq!(cmlab(&["check", "QQ[x]; check grade ("]).0, 2);
    let (code, out) = cmlab(&["list-scenarios"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), BUNDLED.len());
    let (code, out) = cmlab(&["run", "valuation-pair", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("[pass] pair_certificate(n=3) expect true => true (valuation-pair-proregularity)"));
}

#[test]
fn budget_from_environment() {
    let text = "QQ[x,y,z]; check grade (x*y + z^2, x^2*z - y^3, x*z)";
    let out = Command::new(env!("CARGO_BIN_EXE_cmlab"))
        .args(["check", text])
        .env("CMLAB_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_cmlab"))
        .args(["check", text, "--budget", "1000000"])
        .env("CMLAB_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn run_reads_files() {
    let dir = std::env::temp_dir().join(format!("cmlab-run-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("small.cm");
    std::fs::write(&path, "QQ[x,y]\ncheck regular (x, y) expect true\n").unwrap();
    let (code, out) = cmlab(&["run", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["scenario"], "small");
    std::fs::remove_dir_all(&dir).unwrap();
}
