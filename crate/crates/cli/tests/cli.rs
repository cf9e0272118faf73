use std::process::{Command, Output};

use serde_json::Value;

fn lommel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lommel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn struve_l0_at_one() {
    let o = lommel(&["eval", "struve-L", "--nu", "0", "--x", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = csv_rows(&o)[0][1].parse().unwrap();
    assert!((v - 0.710_243_185_937_89).abs() < 1e-13, "{v}");
}

#[test]
fn hypergeometric_at_zero_is_one() {
    let o = lommel(&["eval", "hyp2f3", "--a", "0.5,1.5", "--b", "2,2.5,3", "--z", "0"]);
    assert_eq!(csv_rows(&o)[0][1], "1.0000000000000000e0");
    let o = lommel(&["eval", "hyp2f3", "--a", "0.5", "--b", "2,2.5,3", "--z", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn integral_methods_agree() {
    for beta in ["0", "0.4"] {
        let o =
            lommel(&["eval", "integral", "--mu", "2", "--nu", "-0.5", "--alpha", "-0.5", "--beta", beta, "--x", "7"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let rows = csv_rows(&o);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0][0], if beta == "0" { "closed" } else { "series" });
        assert!(rows[2][1].parse::<f64>().unwrap() < 1e-8);
    }
}

#[test]
fn pron_is_equality_without_damping() {
    let o = lommel(&["verify", "--inequality", "pron", "--mu", "1.5", "--nu", "0.75", "--x", "0.5,3,20"]);
    assert_eq!(o.status.code(), Some(0));
    for row in csv_rows(&o) {
        let (integral, bound): (f64, f64) = (row[6].parse().unwrap(), row[7].parse().unwrap());
        assert!(((integral - bound) / bound).abs() < 1e-10, "{row:?}");
        assert_eq!(row[10], "true");
    }
}

#[test]
fn bi2_and_bi3_meet_at_the_shared_edge() {
    let value = |id: &str| {
        let o = lommel(&["verify", "--inequality", id, "--mu", "1", "--nu", "-0.75", "--n", "0.5", "--x", "4"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let row = &csv_rows(&o)[0];
        (row[6].parse::<f64>().unwrap(), row[7].parse::<f64>().unwrap())
    };
    let (i2, lower) = value("bi2");
    let (i3, upper) = value("bi3");
    assert_eq!(i2, i3);
    assert!(((lower - upper) / upper).abs() < 1e-10);
    assert!(((lower - i2) / i2).abs() < 1e-8);
}

#[test]
fn table_csv_shape() {
    let o = lommel(&["table", "--which", "2"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mu,nu,x,rel_err"));
    assert_eq!(lines.count(), 105);
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn table_comparison_exit_codes() {
    let o = lommel(&["table", "--which", "2", "--compare-paper"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("mu,nu,x,rel_err,paper,delta\n"));
    // Two printed cells of the first table sit outside the tolerance.
    let o = lommel(&["table", "--which", "1", "--compare-paper", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["failures"], 2);
}

#[test]
fn sweep_grids() {
    let o = lommel(&[
        "sweep",
        "--inequality",
        "besi22",
        "--mu",
        "2",
        "--nu",
        "0.5",
        "--x-min",
        "1",
        "--x-max",
        "9",
        "--points",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let xs: Vec<f64> = csv_rows(&o).iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(xs, vec![1.0, 3.0, 5.0, 7.0, 9.0]);
    let o = lommel(&[
        "sweep",
        "--inequality",
        "besi22",
        "--mu",
        "2",
        "--nu",
        "0.5",
        "--x-min",
        "3",
        "--x-max",
        "3",
        "--points",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = lommel(&[
        "sweep",
        "--inequality",
        "besi22",
        "--mu",
        "2",
        "--nu",
        "0.5",
        "--x-min",
        "3",
        "--x-max",
        "3",
        "--points",
        "1",
    ]);
    assert_eq!(csv_rows(&o).len(), 1);
}

#[test]
fn output_is_independent_of_thread_count() {
    let run =
        |threads: &str| stdout(&lommel(&["verify", "--inequality", "all", "--samples", "20", "--threads", threads]));
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one.lines().count(), 1 + 14 * 20);
}

#[test]
fn seeds_change_draws() {
    let run = |seed: &str| stdout(&lommel(&["verify", "--inequality", "besi11", "--samples", "3", "--seed", seed]));
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
}

#[test]
fn json_report_round_trips() {
    let o = lommel(&[
        "verify",
        "--inequality",
        "besi55",
        "--mu",
        "3",
        "--nu",
        "1",
        "--beta",
        "0.5",
        "--x",
        "2,6",
        "--json",
    ]);
    let report = json(&o);
    assert_eq!(report["command"], "verify");
    assert_eq!(report["failures"], 0);
    assert_eq!(report["inputs"]["inequality"], "besi55");
    assert!(report["wall_time_ms"].is_u64());
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let check: lommel_core::bounds::BoundCheck = serde_json::from_value(rows[1].clone()).unwrap();
    assert_eq!((check.x, check.satisfied), (6.0, true));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("lommel-out-{}.csv", std::process::id()));
    let o = lommel(&["eval", "t-tilde", "--mu", "1", "--nu", "0", "--x", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with("function,value,terms_used,truncation_estimate\nt-tilde,"));
}

#[test]
fn domain_errors_and_exit_codes() {
    let o = lommel(&["verify", "--inequality", "bi2", "--mu", "1", "--nu", "5", "--x", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bi2 requires"));

    // One point outside the domain is reported but does not fail the run.
    let args = ["verify", "--inequality", "pron", "--mu", "1", "--nu", "0.5", "--x", "0,1"];
    let o = lommel(&args);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_rows(&o).len(), 1);
    let o = lommel(&[&args[..], &["--strict-domain"]].concat());
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(
        lommel(&["verify", "--inequality", "nope", "--mu", "1", "--nu", "0", "--x", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(lommel(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lommel(&["eval", "t-tilde", "--mu", "1", "--x", "1"]).status.code(), Some(2));
}
