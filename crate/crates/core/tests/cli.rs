use std::process::{Command, Output};

fn rrkernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrkernel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table_outputs() {
    let o = rrkernel(&["table", "bernoulli", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1, 1/2, 1/6, 0, -1/30, 0, 1/42\n");
    assert_eq!(stdout(&rrkernel(&["table", "vandermonde-inverse", "1"])), "[[1,0],[-1,1]]\n");
    assert_eq!(stdout(&rrkernel(&["table", "todd", "4"])), "1, 1/2, 1/12, 0, -1/720\n");
    assert_eq!(rrkernel(&["table", "todd", "30"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(rrkernel(&["verify", "--suite", "appendixA", "--n-max", "8"]).status.code(), Some(0));
    let o = rrkernel(&["verify", "--suite", "hrr", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS HRR-PROJ [d=3,n=2]"), "{}", stdout(&o));
    assert_eq!(rrkernel(&["verify", "--suite", "everything"]).status.code(), Some(2));
    assert_eq!(rrkernel(&["verify", "--residual", "abc"]).status.code(), Some(2));
}

#[test]
fn verify_json_schema() {
    let path = std::env::temp_dir().join(format!("rrkernel-cli-{}.json", std::process::id()));
    let o = rrkernel(&["verify", "--suite", "drr", "--n-max", "5", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let arr = v.as_array().unwrap();
    assert!(!arr.is_empty());
    for obj in arr {
        let keys: Vec<&str> = obj.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, ["elapsed_ms", "id", "lhs", "params", "passed", "rhs"]);
    }
    let pinned = arr
        .iter()
        .find(|o| o["id"] == "EQ-REDUCTIONDRR-FAMILY" && o["params"] == serde_json::json!({"n": 2, "i": 1, "a": 1, "b": 1}))
        .expect("pinned cell present");
    assert_eq!(pinned["lhs"], "1");
    assert_eq!(pinned["rhs"], "1");
}

#[test]
fn fiber_command() {
    let o = rrkernel(&["fiber", "z^2 - s", "--g", "z2", "--center", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // osc(ρ) = 2ρ
    assert!(text.contains("5.0000e-1"), "{text}");
    assert!(text.contains("1.000000e0"), "{text}");
    let o = rrkernel(&["fiber", "z^2 - s", "--g", "const"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0.000000e0"));
    let o = rrkernel(&["fiber", "z^^2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
}
