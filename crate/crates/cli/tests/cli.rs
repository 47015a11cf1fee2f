use std::process::{Command, Output};

fn lfl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfl"))
        .args(args)
        .output()
        .expect("lfl runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn eval_prints_value_line() {
    let o = lfl(&["eval", "xi", "--s", "0.5+14.134725i"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 3);
    assert!(v["re"].as_f64().unwrap().abs() < 1e-6, "{v}");
    assert!(v["attained_error"].as_f64().unwrap() < 1e-10);
    assert!(stdout(&o).starts_with("{\"re\":"));

    let zeta2 = lfl(&["eval", "zeta", "--s", "2"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&zeta2).trim()).unwrap();
    assert!((v["re"].as_f64().unwrap() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lfl(&["eval", "xi"]).status.code(), Some(2));
    assert_eq!(lfl(&["eval", "nothing", "--s", "2"]).status.code(), Some(2));
    assert_eq!(
        lfl(&["verify", "zeta-fe", "--tol", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(lfl(&["eval", "xi", "--s", "2+"]).status.code(), Some(2));
    assert_eq!(lfl(&["table", "nothing"]).status.code(), Some(2));
    assert_eq!(lfl(&[]).status.code(), Some(2));
}

#[test]
fn evaluation_errors_exit_one() {
    let o = lfl(&["eval", "zeta", "--s", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pole"));
    assert_eq!(
        lfl(&["eval", "eisenstein", "--s", "2", "--z", "0.1-1i"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_one_suite() {
    let o = lfl(&["verify", "zeta-fe", "--tmax", "30", "--tol", "1e-10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    let r: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    for key in [
        "check",
        "grid",
        "max_abs_error",
        "tolerance",
        "pass",
        "runtime_ms",
        "details",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["pass"], true);
    assert_eq!(r["tolerance"], 1e-10);
    assert!(r["details"].as_array().unwrap().len() <= 10);

    let failing = lfl(&["verify", "jacobi", "--tol", "0"]);
    assert_eq!(failing.status.code(), Some(1));
    assert!(stdout(&failing).contains("\"pass\":false"));
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_lfl"))
            .args(["verify", "eisenstein"])
            .env("LFL_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn tables() {
    let tau = stdout(&lfl(&["table", "tau", "--max", "100"]));
    let mut lines = tau.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    assert_eq!(lines.next().unwrap(), "n,tau,tau_normalized");
    assert_eq!(lines.count(), 100);

    let hist = stdout(&lfl(&[
        "table",
        "histogram",
        "--X",
        "100000",
        "--bins",
        "40",
    ]));
    assert_eq!(hist.lines().count(), 42);

    let squares = stdout(&lfl(&["table", "three-squares", "--n", "50"]));
    assert!(squares.lines().skip(2).all(|l| l
        .split(',')
        .map(|t| t.parse::<i64>().unwrap().pow(2))
        .sum::<i64>()
        == 50));

    let alias = lfl(&["table", "satotake-moments", "--X", "10000"]);
    assert_eq!(
        alias.stdout,
        lfl(&["table", "sato-tate-moments", "--X", "10000"]).stdout
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("lfl-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tau.csv");
    let o = lfl(&[
        "table",
        "tau",
        "--max",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&lfl(&["table", "tau", "--max", "10"])));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sphere_discrepancy_is_seeded() {
    let a = lfl(&["eval", "sphere-discrepancy", "--n", "1001", "--seed", "7"]);
    let b = lfl(&["eval", "sphere-discrepancy", "--n", "1001", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert!(v["points"].as_u64().unwrap() >= 100);
    assert!(v["discrepancy"].as_f64().unwrap() < 0.2);
}
