use std::path::Path;
use std::process::{Command, Output};

fn klab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klab"))
        .args(args)
        .current_dir(dir)
        .env_remove("KLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn eval_agrees_and_reports_errors() {
    let dir = tempfile::tempdir().unwrap();
    let ok = klab(dir.path(), &["eval", "-p", "3", "-n", "2", "-a", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    let diff: f64 = text.lines().find_map(|l| l.strip_prefix("diff")).unwrap().trim().parse().unwrap();
    assert!(diff < 1e-9);

    let not_unit = klab(dir.path(), &["eval", "-p", "3", "-n", "2", "-a", "3"]);
    assert_eq!(not_unit.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&not_unit.stderr).contains("not a unit"));

    let not_prime = klab(dir.path(), &["eval", "-p", "4", "-n", "2", "-a", "1"]);
    assert_eq!(not_prime.status.code(), Some(2));

    let j = klab(dir.path(), &["eval", "-p", "5", "-n", "3", "-a", "4", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(doc["command"], "eval");
    assert!(doc["result"]["difference"].as_f64().unwrap() < 1e-9);
}

#[test]
fn model_exact_moment() {
    let dir = tempfile::tempdir().unwrap();
    let o = klab(dir.path(), &["model", "--H", "2", "--k", "4", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");
    let doc = json(&dir.path().join("model.json"));
    assert_eq!(doc["result"]["exact"], "3");
    assert_eq!(doc["result"]["H"], 2);
}

#[test]
fn model_monte_carlo_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["model", "--H", "3", "--k", "4", "--mc-samples", "100000", "--seed", "11"];
    let a = klab(dir.path(), &args);
    let b = klab(dir.path(), &[&args[..], &["--threads", "3"]].concat());
    assert_eq!(stdout(&a), stdout(&b));
    let doc = json(&dir.path().join("model.json"));
    let r = &doc["result"];
    let gap = (r["monte_carlo"].as_f64().unwrap() - r["exact_f64"].as_f64().unwrap()).abs();
    assert!(gap < 4.0 * r["stderr"].as_f64().unwrap());
    assert_eq!(doc["seed"], 11);
}

#[test]
fn verify_single_shift() {
    let dir = tempfile::tempdir().unwrap();
    let o = klab(dir.path(), &["verify", "--p", "5", "--n", "2", "--mu", "0:2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("countA=10"));
    let doc = json(&dir.path().join("verify.json"));
    let r = &doc["result"][0];
    assert_eq!(r["countA"], 10);
    assert_eq!(r["main_term"].as_f64(), Some(1.0));
    assert_eq!(r["mu"], "0:2");
    let csv = std::fs::read_to_string(dir.path().join("verify.csv")).unwrap();
    assert!(csv.starts_with("p,n,mu,S_value,main_term,deviation,countA,predictedA,N_max,bound\n"));

    let bad = klab(dir.path(), &["verify", "--p", "5", "--n", "2", "--mu", "0:x"]);
    assert_eq!(bad.status.code(), Some(2));

    let huge = klab(dir.path(), &["verify", "--p", "809", "--n", "3", "--mu", "0:2"]);
    assert_eq!(huge.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&huge.stderr).contains("ceiling"));
}

#[test]
fn table_sidecar_and_sources_agree() {
    let dir = tempfile::tempdir().unwrap();
    let mut tables = Vec::new();
    for source in ["salie", "direct", "dft"] {
        let out = dir.path().join(source);
        let o =
            klab(dir.path(), &["--out", out.to_str().unwrap(), "table", "-p", "7", "-n", "3", "--evaluator", source]);
        assert_eq!(o.status.code(), Some(0));
        let meta = json(&out.join("table.json"));
        assert_eq!(meta["result"]["count"], 343);
        assert_eq!(meta["result"]["source"], source);
        let csv = std::fs::read_to_string(out.join("table.csv")).unwrap();
        let values: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
        tables.push(values);
    }
    for other in &tables[1..] {
        assert_eq!(other.len(), 343);
        assert!(tables[0].iter().zip(other).all(|(x, y)| (x - y).abs() < 1e-9));
    }
}

#[test]
fn figure1_outputs_are_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str, extra: &[&str]| {
        let out = dir.path().join(name);
        let o = klab(dir.path(), &[&["--out", out.to_str().unwrap(), "--threads", threads, "figure1"], extra].concat());
        assert_eq!(o.status.code(), Some(0));
        out
    };
    let a = run("a", "1", &[]);
    let b = run("b", "4", &[]);
    for f in ["figure1_histogram.csv", "figure1_ensemble.csv", "figure1.json"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    let hist = std::fs::read_to_string(a.join("figure1_histogram.csv")).unwrap();
    assert_eq!(hist.lines().next(), Some("bin_left,bin_right,count,density,gaussian_density"));
    assert_eq!(hist.lines().count(), 21);

    let wide = run("c", "2", &["--bins", "40"]);
    let hist = std::fs::read_to_string(wide.join("figure1_histogram.csv")).unwrap();
    let total: u64 = hist.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 1640);

    let random = run("d", "2", &["--i-spec", "random:29:seed=7"]);
    let doc = json(&random.join("figure1.json"));
    assert!(doc["result"]["ks"].as_f64().unwrap() <= 0.15);
    assert_eq!(doc["config"]["i_spec"], "random:29:seed=7");
}

#[test]
fn moments_and_ensemble_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = klab(dir.path(), &["ensemble", "-p", "11", "-n", "2", "--i-spec", "interval:4"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("ensemble.csv")).unwrap();
    assert_eq!(csv.lines().count(), 111);
    assert!(csv.starts_with("x,value\n1,"));

    let o = klab(dir.path(), &["moments", "-p", "11", "-n", "2", "--i-spec", "interval:4", "--k-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&dir.path().join("moments.json"));
    let rows = doc["result"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["M_k"].as_f64(), Some(1.0));
    assert_eq!(rows[2]["I_spec"], "interval:4");

    let bad = klab(dir.path(), &["ensemble", "-p", "11", "-n", "2", "--i-spec", "explicit:0,11"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn theorem_reports_reject_bad_grids() {
    let dir = tempfile::tempdir().unwrap();
    let o = klab(dir.path(), &["theoremA", "--grid", "101,2,interval:10;13,2,interval:13"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hypothesis"));

    let o = klab(dir.path(), &["theoremA", "--grid", "101,2,interval:4;211,2,interval:6"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&dir.path().join("report.json"));
    assert!(doc["wall_time_s"].is_number());
    assert_eq!(doc["result"]["points"].as_array().unwrap().len(), 2);
    assert!(doc["result"]["constants"]["ks_final"].is_number());
}

#[test]
fn threads_env_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_klab"))
        .args(["berry-esseen", "--H", "4,16", "--mc-samples", "20000"])
        .current_dir(dir.path())
        .env("KLAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&dir.path().join("report.json"));
    assert!(doc["config"].get("threads").is_none());
    assert_eq!(doc["result"]["rows"].as_array().unwrap().len(), 6);
}
