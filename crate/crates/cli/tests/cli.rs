use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_susy-hbs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn partner_csv_is_deterministic() {
    let args = ["partner", "--family", "gaussian", "--offset", "0.5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,W,Wprime,Vminus,Vplus"));
    assert_eq!(lines.count(), 4801);
}

#[test]
fn partner_json_has_columns() {
    let o = run(&[
        "partner", "--family", "tanh", "--offset", "2", "--grid-n", "101", "--format", "json",
    ]);
    let v = json(&o);
    for key in ["x", "W", "Wprime", "Vminus", "Vplus"] {
        assert_eq!(v[key].as_array().unwrap().len(), 101, "{key}");
    }
}

#[test]
fn delta_case_one() {
    let o = run(&["delta", "--u1", "2", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["u2"].as_f64(), Some(4.0));
    assert_eq!(v["node_count"].as_u64(), Some(2));
    assert_eq!(v["case"].as_str(), Some("three_wells"));
    assert_eq!(v["bound_state_energies"].as_array().unwrap().len(), 2);
}

#[test]
fn delta_array_flag() {
    let o = run(&["delta", "--delta", "0:2"]);
    let e = json(&o)["bound_states"][0]["energy"].as_f64().unwrap();
    assert!((e + 1.0).abs() < 1e-10);
}

#[test]
fn delta_constraint_pole_is_a_validation_error() {
    assert_eq!(
        run(&["delta", "--u1", "1", "--a", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn bound_finds_ground_state_of_negated_partner() {
    let o = run(&[
        "bound", "--family", "gaussian", "--offset", "0.5", "--side", "minus", "--negate",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let first = text.lines().nth(1).unwrap();
    let e: f64 = first.split(',').nth(1).unwrap().parse().unwrap();
    assert!((e + 0.2432).abs() < 2.5e-3);
}

#[test]
fn bound_spectrum_of_partner_is_empty() {
    let o = run(&[
        "bound", "--family", "gaussian", "--offset", "1", "--side", "plus",
    ]);
    assert_eq!(stdout(&o), "index,E,nodes,residual,domain_used\n");
}

#[test]
fn area_report_keys() {
    let o = run(&[
        "area", "--family", "gaussian", "--offset", "0.5", "--side", "plus", "--scale", "1.1",
    ]);
    let v = json(&o);
    assert!((v["I"].as_f64().unwrap() - 1.52112).abs() < 0.02);
    assert!(v["I_weighted"].is_number());
    assert_eq!(v["sign"], "positive");
    assert_eq!(v["prediction"], "no_unconditional_guarantee");
    let csv = run(&[
        "area", "--family", "gaussian", "--offset", "0.5", "--format", "csv",
    ]);
    assert!(stdout(&csv).starts_with("I,I_weighted,sign,prediction\n"));
}

#[test]
fn scatter_json_reports_minima_and_peaks() {
    let o = run(&[
        "scatter",
        "--family",
        "gaussian",
        "--offset",
        "0.5",
        "--e-min",
        "1",
        "--e-max",
        "12",
        "--n-energies",
        "120",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["points"].as_array().unwrap().len(), 120);
    assert!(v["sharp_peaks"].as_array().unwrap().is_empty());
    assert!(v["max_unitarity_residual"].as_f64().unwrap() <= 1e-6);
    let minima: Vec<f64> = v["r_minima"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["energy"].as_f64().unwrap())
        .collect();
    assert!(minima.iter().any(|e| (e - 3.28).abs() < 0.01), "{minima:?}");
}

#[test]
fn scatter_rejects_nonpositive_energy() {
    let o = run(&[
        "scatter", "--family", "gaussian", "--offset", "0.5", "--e-min", "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        &["partner", "--family", "gaussian", "--offset", "-0.5"][..],
        &[
            "partner", "--family", "gaussian", "--offset", "0.5", "--grid-n", "4800",
        ],
        &["partner", "--family", "cosine", "--offset", "0.5"],
        &["partner", "--family", "gaussian"],
        &[
            "bound", "--family", "gaussian", "--offset", "0.5", "--scale", "-1",
        ],
        &["reproduce", "--only", "nonsense"],
        &["reproduce", "--figure", "4a"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reproduce_only_areas_gives_three_passing_rows() {
    let o = run(&["reproduce", "--only", "areas"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.starts_with("areas,") && l.contains(",pass,")));
}

#[test]
fn full_reproduce_has_seventeen_rows() {
    let o = run(&["reproduce", "--format", "json"]);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 17);
    let count = |g: &str| rows.iter().filter(|r| r["group"] == g).count();
    assert_eq!(
        [
            count("eigenvalues"),
            count("areas"),
            count("scaled"),
            count("delta"),
            count("reflection")
        ],
        [6, 3, 2, 3, 3]
    );
    let failed = rows.iter().filter(|r| r["pass"] == false).count();
    assert_eq!(o.status.code(), Some(if failed == 0 { 0 } else { 1 }));
}

#[test]
fn reproduce_figure_writes_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "reproduce",
        "--figure",
        "2a",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let read = |name: &str| fs::read_to_string(dir.path().join(name)).unwrap();
    assert!(read("fig2a_pair.csv").starts_with("x,W,Wprime,Vminus,Vplus\n"));
    for side in ["minus", "plus"] {
        assert_eq!(
            read(&format!("fig2a_spectrum_{side}.csv")),
            "index,E,nodes,residual,domain_used\n"
        );
        assert!(read(&format!("fig2a_scatter_{side}.csv")).starts_with("E,R,T,residual\n"));
    }
    let area: serde_json::Value = serde_json::from_str(&read("fig2a_area.json")).unwrap();
    assert!((area["w_squared"].as_f64().unwrap() - 1.38).abs() < 0.02);
    let leftovers: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().starts_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
}

#[test]
fn reproduce_delta_figure() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "reproduce",
        "--figure",
        "1b",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("fig1b_delta.json")).unwrap())
            .unwrap();
    assert_eq!(v["u2"].as_f64(), Some(-2.0));
    assert_eq!(v["node_count"].as_u64(), Some(0));
}

fn entries(dir: &Path) -> usize {
    fs::read_dir(dir).map(|d| d.count()).unwrap_or(0)
}

#[test]
fn unwritable_destination_exits_three_without_partial_files() {
    let dir = tempfile::tempdir().unwrap();
    // A regular file where a directory is expected cannot be written into, even by root.
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let target = blocker.join("pair.csv");
    let o = run(&[
        "partner",
        "--family",
        "gaussian",
        "--offset",
        "0.5",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(entries(dir.path()), 1);

    let o = run(&[
        "reproduce",
        "--figure",
        "2b",
        "--out",
        blocker.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(entries(dir.path()), 1);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.csv");
    let args = [
        "bound", "--family", "gaussian", "--offset", "-2", "--side", "plus", "--negate",
    ];
    let direct = run(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = run(&with_out);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn scenario_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = dir.path().join("s.json");
    fs::write(
        &scenario,
        r#"{
            "task": "bound",
            "ansatz": { "family": "gaussian", "offset": 0.5 },
            "options": { "side": "minus", "negate": true }
        }"#,
    )
    .unwrap();
    let s = scenario.to_str().unwrap();
    let from_file = run(&["--scenario", s]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(
        from_file.stdout,
        run(&["bound", "--family", "gaussian", "--offset", "0.5", "--negate"]).stdout
    );

    let overridden = run(&["bound", "--scenario", s, "--side", "plus"]);
    let direct = run(&[
        "bound", "--family", "gaussian", "--offset", "0.5", "--side", "plus", "--negate",
    ]);
    assert_eq!(overridden.stdout, direct.stdout);

    assert_eq!(run(&["area", "--scenario", s]).status.code(), Some(2));
}

#[test]
fn scenario_delta_array() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = dir.path().join("d.json");
    fs::write(
        &scenario,
        r#"{ "task": "delta", "delta": [ { "position": -1, "strength": 2 }, { "position": 1, "strength": 2 } ] }"#,
    )
    .unwrap();
    let o = run(&["--scenario", scenario.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["bound_states"].as_array().unwrap().len(), 2);
}

#[test]
fn malformed_scenario_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = dir.path().join("bad.json");
    fs::write(
        &scenario,
        r#"{ "task": "bound", "ansatz": { "family": "gaussian", "offset": -0.5 } }"#,
    )
    .unwrap();
    assert_eq!(
        run(&["--scenario", scenario.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    fs::write(&scenario, "not json").unwrap();
    assert_eq!(
        run(&["--scenario", scenario.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn thread_cap_from_environment() {
    let args = [
        "scatter",
        "--family",
        "gaussian",
        "--offset",
        "1",
        "--n-energies",
        "50",
    ];
    let one = bin()
        .args(args)
        .env("SUSY_HBS_THREADS", "1")
        .output()
        .unwrap();
    let many = bin()
        .args(args)
        .env("SUSY_HBS_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let bad = bin()
        .args(args)
        .env("SUSY_HBS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
