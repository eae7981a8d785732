//! End-to-end runs of the `liecm` binary.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_liecm")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let doc = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    (out.status.code().unwrap_or(-1), doc)
}

fn error_kind(doc: &Value) -> &str {
    doc["error"]["kind"].as_str().unwrap_or("")
}

#[test]
fn info_reports_root_data() {
    let (code, doc) = run(&["info", "--type", "E7"]);
    assert_eq!(code, 0);
    assert_eq!(doc["roots"], 126);
    assert_eq!(doc["h"], 18);
    assert_eq!(doc["center"], "μ2");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["info", "--type", "X", "--rank", "3"][..],
        &["info", "--type", "D", "--rank", "2"],
        &["grading", "--type", "A", "--rank", "5", "--class", "p4"],
        &["no-such-verb"],
    ] {
        let (code, doc) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(error_kind(&doc), "usage", "{args:?}");
    }
}

#[test]
fn poles_exit_with_three() {
    let (code, doc) = run(&["elliptic", "--tau", "0,1", "--z", "1,1", "--u", "0.1,0.2"]);
    assert_eq!(code, 3);
    assert_eq!(error_kind(&doc), "numeric");
}

#[test]
fn hamiltonian_and_oracle_agree_on_a_shared_state() {
    let (code, h) = run(&["hamiltonian", "--type", "C", "--rank", "4", "--class", "wn", "--seed", "5"]);
    assert_eq!(code, 0);
    let path = std::env::temp_dir().join(format!("liecm-state-{}.json", std::process::id()));
    std::fs::write(&path, h["state"].to_string()).unwrap();
    let p = path.to_str().unwrap();
    let (code, o) = run(&["oracle", "--type", "C", "--rank", "4", "--class", "wn", "--state", p]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let get = |v: &Value| [v[0].as_f64().unwrap(), v[1].as_f64().unwrap()];
    let (a, b) = (get(&h["h"]), get(&o["h"]));
    let d = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
    assert!(d < 1e-9 * (1.0 + a[0].hypot(a[1])), "{a:?} vs {b:?}");
}

#[test]
fn reduce_output_round_trips() {
    let input = r#"{"lattice":"P","tau":[0.1,1.1],"u":[[0,0],[1.7,0.3],[0.4,-0.2]]}"#;
    let dir = std::env::temp_dir();
    let first = dir.join(format!("liecm-mod-a-{}.json", std::process::id()));
    let second = dir.join(format!("liecm-mod-b-{}.json", std::process::id()));
    std::fs::write(&first, input).unwrap();
    let args = |p: &std::path::Path| {
        ["reduce", "--type", "B", "--rank", "3", "--class", "w1", "--input", p.to_str().unwrap()].map(String::from)
    };
    let (code, once) = run(&args(&first).iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code, 0, "{once}");
    std::fs::write(&second, once.to_string()).unwrap();
    let (code, twice) = run(&args(&second).iter().map(String::as_str).collect::<Vec<_>>());
    std::fs::remove_file(&first).ok();
    std::fs::remove_file(&second).ok();
    assert_eq!(code, 0);
    for (x, y) in once["u"].as_array().unwrap().iter().zip(twice["u"].as_array().unwrap()) {
        for k in 0..2 {
            assert!((x[k].as_f64().unwrap() - y[k].as_f64().unwrap()).abs() < 1e-9);
        }
    }
}

#[test]
fn verify_passes_for_a_single_case() {
    let (code, doc) = run(&["verify", "--type", "B", "--rank", "3", "--class", "w1", "--states", "4"]);
    assert_eq!(code, 0, "{doc}");
    assert_eq!(doc["cases"][0]["pass"], true, "{doc}");
}
