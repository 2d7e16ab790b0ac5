use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ordagg::graph::{SignedGraph, DEFAULT_CC_WEIGHT};
use ordagg::model::{Kind, Ranking, Solution};
use ordagg::reductions::caterpillar_from_ranking;
use ordagg_cli::format::{InstanceFile, Report, SolutionFile};
use serde_json::Value;
use tempfile::TempDir;

fn ordagg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordagg")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> Output {
    let out = ordagg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen_args(kind: Kind) -> Vec<&'static str> {
    let counts: &[&str] = if kind.is_mixed() { &["--m1", "40", "--m2", "40", "--eps1", "0.1", "--eps2", "0.2"] } else { &["--m", "80", "--eps", "0.1"] };
    let mut v = vec!["gen", "--kind", kind.as_str(), "--n", "20", "--seed", "5"];
    v.extend_from_slice(counts);
    v
}

fn schema() -> jsonschema::Validator {
    let text = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn gen_writes_one_record_per_constraint() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    let args = ["gen", "--kind", "mas", "--n", "100", "--m", "5000", "--eps", "0.1", "--seed", "7", "--out"];
    ok(&[&args[..], &[s(&a)]].concat());
    ok(&[&args[..], &[s(&b)]].concat());
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().filter(|l| l.contains("\"t\":\"prec\"")).count(), 5000);
    let file = InstanceFile::read(text.as_bytes()).unwrap();
    assert_eq!((file.kind, file.n, file.constraints.len()), (Kind::Mas, 100, 5000));
    assert!(file.ground_truth.is_some());
}

#[test]
fn gen_rejects_mismatched_counts() {
    let out = ordagg(&["gen", "--kind", "triplets", "--n", "10", "--m", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires --m1/--m2"));
    let out = ordagg(&["gen", "--kind", "mas", "--n", "10", "--m1", "3", "--m2", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ordagg(&["gen", "--kind", "mas", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ordagg(&["gen", "--kind", "btw", "--n", "2", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ordagg(&["gen", "--kind", "lattice", "--n", "2", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hide_truth_drops_the_ground_truth() {
    let out = ok(&["gen", "--kind", "cc", "--n", "12", "--m", "30", "--hide-truth"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("ground_truth").is_none());
    assert_eq!(v["constraints"].as_array().unwrap().len(), 30);
}

#[test]
fn every_kind_round_trips_through_solve() {
    let dir = TempDir::new().unwrap();
    let validator = schema();
    for kind in Kind::ALL {
        let (inst, sol) = (path(&dir, "i.json"), path(&dir, "s.json"));
        ok(&[&gen_args(kind)[..], &["--out", s(&inst)]].concat());
        let out = ok(&["solve", "--in", s(&inst), "--out", s(&sol), "--solver-seed", "3"]);
        let value: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(validator.is_valid(&value), "{kind}: {value}");
        let report: Report = serde_json::from_value(value).unwrap();
        let file = InstanceFile::read(fs::File::open(&inst).unwrap()).unwrap();
        let solution = SolutionFile::read(fs::File::open(&sol).unwrap()).unwrap();
        assert_eq!(solution.kind, kind);
        let instance = file.instance();
        let score = ordagg::evaluator::score(&instance, &solution.solution).unwrap();
        assert_eq!((report.satisfied, report.total), (score.satisfied, score.total));
        let side: Vec<bool> = (0..file.n).map(|i| report.cut.contains(&i)).collect();
        let g = SignedGraph::build(&instance, DEFAULT_CC_WEIGHT);
        assert_eq!(report.cut_weight, g.cut_weight(&side));
        assert!(report.theoretical_bound.is_some());
        assert_eq!(report.forbidden.is_some(), kind.is_mixed());
        if let Solution::Rooted(t) = &solution.solution {
            let [l, _] = t.children(t.root()).unwrap();
            let mut left = t.leaves_below(l);
            left.sort_unstable();
            assert!(left == report.cut || report.cut.is_empty());
        }
    }
}

#[test]
fn noiseless_mas_solve_clears_the_target() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.json");
    ok(&["gen", "--kind", "mas", "--n", "100", "--m", "5000", "--eps", "0", "--seed", "7", "--out", s(&inst)]);
    let out = ok(&["solve", "--in", s(&inst)]);
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.fraction.unwrap() >= 0.62, "{report:?}");
    assert!((report.theoretical_bound.unwrap() - 0.642 * 5000.0).abs() < 1e-6);
}

#[test]
fn empty_instance_reports_no_fraction() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.json");
    fs::write(&inst, r#"{"version":1,"kind":"btw","n":4,"constraints":[]}"#).unwrap();
    let out = ok(&["solve", "--in", s(&inst)]);
    let value: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(schema().is_valid(&value));
    assert!(value.get("fraction").is_none());
    assert_eq!(value["satisfied"], 0);
    assert_eq!(value["total"], 0);
    assert!(value.get("theoretical_bound").is_none());
}

#[test]
fn malformed_inputs_exit_with_status_two() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.json");
    let cases = [
        "not json",
        r#"{"version":2,"kind":"mas","n":2,"constraints":[]}"#,
        r#"{"version":1,"kind":"mas","n":2,"constraints":[{"t":"prec","a":0,"b":2}]}"#,
        r#"{"version":1,"kind":"mas","n":2,"constraints":[{"t":"ml","a":0,"b":1}]}"#,
        r#"{"version":1,"kind":"btw","n":3,"constraints":[{"t":"btw","a":2,"b":1,"c":0}]}"#,
        r#"{"version":1,"kind":"mas","n":2,"constraints":[],"extra":1}"#,
        r#"{"version":1,"kind":"mas","n":2,"constraints":[],"ground_truth":{"partition":[0,0]}}"#,
    ];
    for text in cases {
        fs::write(&inst, text).unwrap();
        let out = ordagg(&["solve", "--in", s(&inst)]);
        assert_eq!(out.status.code(), Some(2), "{text}");
    }
    assert_eq!(ordagg(&["solve", "--in", s(&path(&dir, "missing.json"))]).status.code(), Some(2));
    assert_eq!(ordagg(&["solve"]).status.code(), Some(2));
}

#[test]
fn solve_flags_change_the_configuration() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.json");
    ok(&["gen", "--kind", "cc", "--n", "30", "--m", "200", "--eps", "0.2", "--balanced", "--out", s(&inst)]);
    for extra in [&["--recursive"][..], &["--cc-weight", "-3.2735"], &["--rotation", "false", "--restarts", "2", "--hyperplanes", "5"]] {
        let out = ok(&[&["solve", "--in", s(&inst)][..], extra].concat());
        let report: Report = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report.total, 200);
    }
    assert_eq!(ordagg(&["solve", "--in", s(&inst), "--restarts", "0"]).status.code(), Some(2));
}

#[test]
fn solve_is_deterministic_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.json");
    ok(&["gen", "--kind", "quartets", "--n", "40", "--m1", "300", "--m2", "300", "--eps1", "0.1", "--out", s(&inst)]);
    let run = |name: &str| {
        let (sol, rep) = (path(&dir, &format!("{name}.s")), path(&dir, &format!("{name}.r")));
        ok(&["solve", "--in", s(&inst), "--out", s(&sol), "--report", s(&rep), "--solver-seed", "9"]);
        let mut report: Value = serde_json::from_slice(&fs::read(&rep).unwrap()).unwrap();
        report.as_object_mut().unwrap().remove("wall_ms");
        (fs::read(&sol).unwrap(), report)
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn thread_cap_is_honoured() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.json");
    ok(&["gen", "--kind", "mas", "--n", "30", "--m", "300", "--eps", "0.2", "--out", s(&inst)]);
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_ordagg"))
            .args(["solve", "--in", s(&inst)])
            .env("ORDAGG_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("wall_ms");
        v
    };
    assert_eq!(run("1"), run("3"));
    let out = Command::new(env!("CARGO_BIN_EXE_ordagg"))
        .args(["solve", "--in", s(&inst)])
        .env("ORDAGG_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_writes_one_data_row_per_cell() {
    let out = ok(&["bench", "--n", "60", "--m", "3000", "--seeds", "1", "--eps-grid", "0", "--restarts", "2", "--hyperplanes", "20"]);
    let mut reader = csv::Reader::from_reader(&out.stdout[..]);
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header.join(","),
        "row,kind,n,m,eps,seed,satisfied_fraction,satisfied_fraction_sd,forbidden_fraction,desired_fraction,bound,random_baseline_fraction,wall_ms"
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.iter().filter(|r| &r[0] == "data").count(), 6);
    assert_eq!(rows.iter().filter(|r| &r[0] == "mean").count(), 6);
    let expected = [("mas", 0.5), ("btw", 1.0 / 3.0), ("nonbtw", 2.0 / 3.0), ("triplets", 0.5), ("quartets", 0.5)];
    for r in rows.iter().filter(|r| &r[0] == "data") {
        let baseline: f64 = r[11].parse().unwrap();
        if let Some(&(_, e)) = expected.iter().find(|(k, _)| *k == &r[1]) {
            assert!((baseline - e).abs() < 0.02, "{r:?}");
        }
        let f: f64 = r[6].parse().unwrap();
        assert!(f > baseline - 0.02, "{r:?}");
        assert!(!r[10].is_empty());
    }
}

#[test]
fn bench_aggregates_over_seeds() {
    let dir = TempDir::new().unwrap();
    let csv_path = path(&dir, "b.csv");
    ok(&["bench", "--kinds", "mas,triplets", "--n", "30", "--m", "400", "--seeds", "3", "--eps-grid", "0,0.2", "--restarts", "1", "--hyperplanes", "10", "--out", s(&csv_path)]);
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2 * 2 * 4);
    for group in rows.chunks(4) {
        let mean: f64 = group[3][6].parse().unwrap();
        let data: Vec<f64> = group[..3].iter().map(|r| r[6].parse().unwrap()).collect();
        assert!((mean - data.iter().sum::<f64>() / 3.0).abs() < 1e-9);
        assert!(group[3][5].is_empty() && !group[3][7].is_empty());
    }
    assert_eq!(ordagg(&["bench", "--seeds", "0"]).status.code(), Some(2));
}

#[test]
fn oracle_sweeps() {
    let out = ok(&["oracle", "--kind", "mas", "--n", "7", "--m", "12", "--count", "100"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["instances"], 100);
    assert_eq!(v["flagged"], 0);
    let out = ok(&["oracle", "--kind", "triplets", "--n", "6", "--m", "12", "--eps", "0", "--count", "1"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"][0]["oracle_fraction"], 1.0);
    let out = ok(&["oracle", "--kind", "triplets", "--n", "6", "--m", "12", "--forbidden-share", "1", "--count", "100"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["flagged"].as_u64().unwrap() <= 5);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["rho"] == 2.0 / 3.0));
}

#[test]
fn oracle_refuses_large_instances() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.json");
    ok(&["gen", "--kind", "mas", "--n", "9", "--m", "10", "--out", s(&inst)]);
    assert_eq!(ordagg(&["oracle", "--in", s(&inst)]).status.code(), Some(3));
    assert_eq!(ordagg(&["oracle", "--kind", "cc", "--n", "9"]).status.code(), Some(3));
    assert_eq!(ordagg(&["oracle"]).status.code(), Some(2));
}

#[test]
fn deep_trees_survive_the_file_round_trip() {
    let r = Ranking::identity(600);
    let truth = Solution::Rooted(caterpillar_from_ranking(&r).unwrap());
    let instance = ordagg::model::Instance { ground_truth: Some(truth), ..ordagg::model::Instance::new(Kind::Triplets, 600, vec![]) };
    let file = InstanceFile::new(instance, None);
    let mut bytes = Vec::new();
    file.write(&mut bytes).unwrap();
    assert_eq!(InstanceFile::read(&bytes[..]).unwrap(), file);
}

#[test]
fn single_leaf_unrooted_solution_format() {
    let dir = TempDir::new().unwrap();
    let (inst, sol) = (path(&dir, "i.json"), path(&dir, "s.json"));
    fs::write(&inst, r#"{"version":1,"kind":"quartets","n":1,"constraints":[]}"#).unwrap();
    ok(&["solve", "--in", s(&inst), "--out", s(&sol)]);
    let v: Value = serde_json::from_slice(&fs::read(&sol).unwrap()).unwrap();
    assert_eq!(v["solution"]["unrooted"], serde_json::json!([[]]));
}
