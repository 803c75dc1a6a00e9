use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use planta::Report;

fn planta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planta"))
        .args(args)
        .env_remove("PLANTA_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_result(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = planta(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    Report::parse(&stdout(&o)).unwrap().result
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn vpd_human_output() {
    let o = planta(&["vpd", "--leaf-temp", "25", "--air-temp", "25", "--rh", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o)
        .lines()
        .find(|l| l.starts_with("vpd_kpa: "))
        .unwrap()
        .to_string();
    let v: f64 = line["vpd_kpa: ".len()..].parse().unwrap();
    assert!((v - 1.2668).abs() < 1e-4, "{line}");
}

#[test]
fn negative_temperatures_parse() {
    let r = json_result(&["vpd", "--leaf-temp", "-5", "--air-temp", "-4", "--rh", "80"]);
    assert!(r["vpd_kpa"].as_f64().unwrap().is_finite());
}

#[test]
fn json_output_is_byte_identical() {
    let args = ["--json", "analyze-stems"];
    let a = planta(&args);
    let b = planta(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn efficiency_example() {
    let r = json_result(&[
        "efficiency",
        "--output-joules",
        "0.0589",
        "--evaporated-grams",
        "0.415",
    ]);
    assert!((r["input_energy_j"].as_f64().unwrap() - 1013.6).abs() <= 0.5);
    assert!((r["efficiency_ratio"].as_f64().unwrap() - 5.81e-5).abs() <= 1e-7);
    let text = stdout(&planta(&[
        "efficiency",
        "--output-joules",
        "0.0589",
        "--evaporated-grams",
        "0.415",
    ]));
    assert!(text.contains("efficiency_ratio: 5.81097e-5"), "{text}");
}

#[test]
fn analyze_stems_on_fixture() {
    let r = json_result(&["analyze-stems"]);
    let water = r["water"]["slope_pristine_mm_per_day"].as_f64().unwrap();
    assert!((water + 0.0103).abs() < 5e-4, "{water}");
    assert_eq!(r["unstressed"]["label"], "HEALTHY");
    assert_eq!(r["water"]["label"], "WATER_STRESS");
    assert_eq!(r["salinity"]["label"], "SALINITY_STRESS");
    assert_eq!(r["salinity"]["offset_mean_mm"].as_f64(), Some(0.017));
    let explicit = json_result(&[
        "analyze-stems",
        "--table",
        fixture("stem_diameters.csv").to_str().unwrap(),
    ]);
    assert_eq!(explicit, r);
}

#[test]
fn mpp_defaults_to_internal_resistance() {
    let r = json_result(&["mpp", "--rh", "60"]);
    assert_eq!(r["load_resistance_ohm"].as_f64(), Some(20.0));
}

#[test]
fn mpp_reads_meg_section() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "meg.toml",
        "[models.meg]\ninternal_resistance = 47.0\nloads = [10.0, 47.0, 100.0]\n",
    );
    let r = json_result(&["mpp", "--config", &cfg, "--rh", "60"]);
    assert_eq!(r["load_resistance_ohm"].as_f64(), Some(47.0));
}

#[test]
fn diameter_example() {
    let r = json_result(&["diameter", "--rel-resistance", "0.046005"]);
    assert!((r["diameter_mm"].as_f64().unwrap() - 6.684).abs() < 1e-3);
}

#[test]
fn min_power_and_simulate_agree() {
    let r = json_result(&["min-power", "--readings", "5", "--hours", "24"]);
    let p = r["min_power_w"].as_f64().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let at = |w: f64| {
        write(
            dir.path(),
            &format!("p{w}.csv"),
            &format!("t_seconds,power_watts\n0,{w:e}\n"),
        )
    };
    let above = at(p * 1.001);
    let below = at(p * 0.99);
    let count = |profile: &str| {
        json_result(&["simulate-power", "--profile", profile, "--hours", "24"])["readings_completed_count"]
            .as_u64()
            .unwrap()
    };
    assert!(count(&above) >= 5);
    assert!(count(&below) < 5);
}

#[test]
fn simulate_power_writes_event_log() {
    let dir = tempfile::tempdir().unwrap();
    let profile = write(dir.path(), "h.csv", "t_seconds,power_watts\n0,2.5e-7\n");
    let events = dir.path().join("events.csv");
    let r = json_result(&[
        "simulate-power",
        "--profile",
        &profile,
        "--hours",
        "24",
        "--events-out",
        events.to_str().unwrap(),
    ]);
    assert_eq!(r["readings_completed_count"].as_u64(), Some(5));
    assert!(r["ledger"]["storage_imbalance_j"].as_f64().unwrap() <= 1e-9);
    let log = planta::csvio::parse_events(&std::fs::read_to_string(&events).unwrap(), "events").unwrap();
    assert_eq!(log.len(), 5);
    assert!(log.iter().all(|e| e.1));
}

#[test]
fn lag_on_shifted_pair() {
    let dir = tempfile::tempdir().unwrap();
    let curve = |t: f64, delay: f64| 55.0 + 20.0 / (1.0 + (-(t - 3600.0 - delay) / 1800.0).exp());
    let csv = |delay: f64| {
        let mut s = "t_seconds,rh_pct\n".to_string();
        for m in 0..720 {
            let t = m as f64 * 60.0;
            s.push_str(&format!("{t},{}\n", curve(t, delay)));
        }
        s
    };
    let lower = write(dir.path(), "lower.csv", &csv(0.0));
    let upper = write(dir.path(), "upper.csv", &csv(225.0 * 60.0));
    let r = json_result(&["lag", "--lower", &lower, "--upper", &upper]);
    assert!((r["lag_min"].as_f64().unwrap() - 225.0).abs() <= 1.0);
}

#[test]
fn baseline_removes_pulse() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = "t_seconds,rel_resistance\n".to_string();
    for k in 0..500 {
        let t = k as f64 * 10.0;
        let pulse = if (2000.0..2060.0).contains(&t) { 0.05 } else { 0.0 };
        text.push_str(&format!("{t},{}\n", 0.046 + 1e-5 * t + pulse));
    }
    let series = write(dir.path(), "s.csv", &text);
    let out = dir.path().join("clean.csv");
    let dist = dir.path().join("events.csv");
    let r = json_result(&[
        "baseline",
        "--series",
        &series,
        "--out",
        out.to_str().unwrap(),
        "--disturbances",
        dist.to_str().unwrap(),
    ]);
    assert_eq!(r["events"][0]["type"], "DISTURBANCE");
    let clean = planta::csvio::read_strain(&out).unwrap();
    for (t, v) in clean.iter() {
        assert!((v - (0.046 + 1e-5 * t)).abs() <= 1e-3, "t={t} v={v}");
    }
    assert!(std::fs::read_to_string(&dist)
        .unwrap()
        .starts_with("onset,duration,type\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(planta(&["--help"]).status.code(), Some(0));
    assert_eq!(planta(&["--version"]).status.code(), Some(0));
    assert_eq!(planta(&["vpd", "--leaf-temp", "25"]).status.code(), Some(2));
    assert_eq!(planta(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        planta(&["min-power", "--readings", "5", "--hours", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        planta(&["vpd", "--leaf-temp", "25", "--air-temp", "25", "--rh", "130"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        planta(&["analyze-stems", "--table", "/nonexistent.csv"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        planta(&["min-power", "--readings", "200000", "--hours", "24"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn json_errors_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "t.csv",
        "day,unstressed_pristine,unstressed_stretched,water_pristine,water_stretched,salinity_pristine,salinity_stretched\n1,6,6,6,6,6,6\n2,6,6,6,oops,6,6\n",
    );
    let o = planta(&["--json", "analyze-stems", "--table", &bad]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse");
    assert_eq!(err["error"]["row"], 3);
    assert_eq!(err["error"]["column"], "water_stretched");

    let o = planta(&["--json", "vpd"]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
}

#[test]
fn out_of_order_table_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "t.csv",
        "day,unstressed_pristine,unstressed_stretched,water_pristine,water_stretched,salinity_pristine,salinity_stretched\n2,6,6,6,6,6,6\n1,6,6,6,6,6,6\n",
    );
    let o = planta(&["--json", "analyze-stems", "--table", &bad]);
    assert_eq!(o.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invariant_violation");
}

fn tree(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((
                    p.strip_prefix(dir).unwrap().to_path_buf(),
                    std::fs::read(&p).unwrap(),
                ));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn scenario_run_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = fixture("three_plants.toml");
    let run = |name: &str, seed: &str| {
        let out = dir.path().join(name);
        let o = planta(&[
            "scenario",
            "run",
            "--file",
            file.to_str().unwrap(),
            "--seed",
            seed,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        tree(&out)
    };
    let a = run("a", "3");
    let b = run("b", "3");
    assert_eq!(a.len(), 1 + 3 * 11);
    assert_eq!(a, b);
    let c = run("c", "4");
    assert_ne!(a, c);
}

#[test]
fn scenario_echo_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "one.toml",
        "[[plant]]\ncondition = \"SALINITY_STRESS\"\nduration_days = 4\n",
    );
    let first = dir.path().join("first");
    assert_eq!(
        planta(&[
            "scenario",
            "run",
            "--file",
            &file,
            "--seed",
            "11",
            "--out",
            first.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    let plant_dir = first.join("plant00_SALINITY_STRESS_seed11");
    let echo = plant_dir.join("scenario.toml");
    let second = dir.path().join("second");
    assert_eq!(
        planta(&[
            "scenario",
            "run",
            "--file",
            echo.to_str().unwrap(),
            "--out",
            second.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        tree(&plant_dir),
        tree(&second.join("plant00_SALINITY_STRESS_seed11"))
    );
}

#[test]
fn scenario_reports_follow_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let file = fixture("three_plants.toml");
    let out = dir.path().join("run");
    let o = planta(&[
        "--json",
        "scenario",
        "run",
        "--file",
        file.to_str().unwrap(),
        "--seed",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let top = Report::parse(&stdout(&o)).unwrap();
    assert_eq!(
        top,
        Report::parse(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
    );
    let labels: Vec<&str> = top.result["plants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["final_label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["HEALTHY", "WATER_STRESS", "SALINITY_STRESS"]);
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "stem_diameters.csv",
        "day,unstressed_pristine,unstressed_stretched,water_pristine,water_stretched,salinity_pristine,salinity_stretched\n1,6,5.9,7,6.9,8,7.9\n2,6.1,6.0,7.1,7.0,8.1,8.0\n",
    );
    let o = Command::new(env!("CARGO_BIN_EXE_planta"))
        .args(["--json", "analyze-stems"])
        .env("PLANTA_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = Report::parse(&stdout(&o)).unwrap().result;
    assert_eq!(r["water"]["offset_mean_mm"].as_f64(), Some(0.1));
    assert_eq!(r["water"]["slope_pristine_mm_per_day"].as_f64(), Some(0.1));
}
