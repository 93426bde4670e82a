use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ehrlab::polygeom::Target;
use ehrlab::qpalg::QuasiPolynomial;
use ehrlab::rational::{frac, parse_rational};
use ehrlab::Rational;
use serde_json::Value;
use tempfile::TempDir;

fn ehrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ehrlab"))
        .args(args)
        .env_remove("EHRLAB_JOBS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn build(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", s(&path)]);
    let o = ehrlab(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    path
}

fn shoelace(vertices: &[Vec<Rational>]) -> Rational {
    // order the convex polygon by angle around its centroid
    let n = vertices.len();
    let cx: f64 = vertices.iter().map(|v| to_f64(&v[0])).sum::<f64>() / n as f64;
    let cy: f64 = vertices.iter().map(|v| to_f64(&v[1])).sum::<f64>() / n as f64;
    let mut ring = vertices.to_vec();
    ring.sort_by(|a, b| {
        let ta = (to_f64(&a[1]) - cy).atan2(to_f64(&a[0]) - cx);
        let tb = (to_f64(&b[1]) - cy).atan2(to_f64(&b[0]) - cx);
        ta.partial_cmp(&tb).unwrap()
    });
    let mut twice = Rational::from_integer(0.into());
    for j in 0..n {
        let (a, b) = (&ring[j], &ring[(j + 1) % n]);
        twice += &a[0] * &b[1] - &b[0] * &a[1];
    }
    twice / Rational::from_integer(2.into())
}

fn to_f64(r: &Rational) -> f64 {
    r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap()
}

#[test]
fn build_pentagon() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p.json");
    let o = ehrlab(&["build", "pentagon", "--p", "2", "--out", s(&path)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "dimension 2, 1 piece, 5 vertices, denominator 2");
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["provenance"]["construction"], "pentagon");
    let t = Target::from_json_str(&text).unwrap();
    assert_eq!(t.vertex_count(), 5);
    assert_eq!(Target::from_json_str(&t.to_json_value().to_string()).unwrap(), t);
}

#[test]
fn build_rejects_bad_parameters() {
    let o = ehrlab(&["build", "pentagon", "--p", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--p"));
    let o = ehrlab(&["build", "pentagon"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--p"));
    let o = ehrlab(&["build", "L", "--dim", "3", "--i", "3", "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--i"));
    let o = ehrlab(&["build", "qi", "--dim", "3", "--i", "1", "--p", "2", "--T", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--T"));
    assert_eq!(ehrlab(&["build", "hexagon"]).status.code(), Some(2));
    let o = ehrlab(&["build", "qstar", "--periods", "2,3", "--shifts", "1,1"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn build_qstar_ball() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "q.json", &["qstar", "--dim", "3", "--periods", "2,3,2", "--T", "0,1,2,3"]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["pieces"].as_array().unwrap().len(), 6);
    assert_eq!(doc["provenance"]["shifts"], serde_json::json!([8, 10, 2]));
    assert_eq!(doc["provenance"]["T"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn build_every_construction() {
    let dir = TempDir::new().unwrap();
    let cases: &[&[&str]] = &[
        &["segment", "--p", "3"],
        &["cyclic", "--i", "2", "--dim", "3"],
        &["pyr", "--p", "2", "--i", "2", "--base", "pentagon"],
        &["q0", "--dim", "3", "--p", "2", "--k", "2"],
        &["qi", "--dim", "3", "--i", "0", "--p", "2"],
        &["L", "--dim", "3", "--i", "1", "--p", "2"],
        &["R", "--dim", "3", "--i", "2", "--p", "2"],
        &["Lp", "--dim", "3", "--i", "1"],
        &["Rp", "--dim", "3", "--i", "1", "--p", "2"],
        &["Mi", "--dim", "3", "--i", "2", "--p", "3"],
        &["M", "--periods", "2,3", "--shifts", "8,2"],
    ];
    for (j, args) in cases.iter().enumerate() {
        let path = build(&dir, &format!("{j}.json"), args);
        let text = std::fs::read_to_string(path).unwrap();
        assert!(Target::from_json_str(&text).is_ok(), "{args:?}");
    }
    // stdout form, summary on stderr
    let o = ehrlab(&["build", "segment", "--p", "2"]);
    assert!(Target::from_json_str(&stdout(&o)).is_ok());
    assert!(stderr(&o).contains("denominator 2"));
}

#[test]
fn count_points() {
    let dir = TempDir::new().unwrap();
    let seg = build(&dir, "seg.json", &["segment", "--p", "2"]);
    let o = ehrlab(&["count", s(&seg), "--k", "2"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "2"));

    let sq = write(&dir, "sq.json", r#"{"ambient_dim":2,"vertices":[["0","0"],["1","0"],["0","1"],["1","1"]]}"#);
    let o = ehrlab(&["count", s(&sq), "--range", "1..3"]);
    assert_eq!(stdout(&o), "1,4\n2,9\n3,16\n");

    for args in [vec!["--k", "0"], vec![], vec!["--range", "3..1"], vec!["--range", "x"], vec!["--k", "1", "--range", "1..2"]] {
        let mut all = vec!["count", s(&sq)];
        all.extend(args.iter().copied());
        assert_eq!(ehrlab(&all).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn input_errors() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"ambient_dim": 2"#);
    assert_eq!(ehrlab(&["count", s(&bad), "--k", "1"]).status.code(), Some(2));
    let ragged = write(&dir, "r.json", r#"{"ambient_dim":2,"vertices":[["0","0"],["1"]]}"#);
    assert_eq!(ehrlab(&["periods", s(&ragged)]).status.code(), Some(2));
    let missing = dir.path().join("nope.json");
    assert_eq!(ehrlab(&["ehrhart", s(&missing)]).status.code(), Some(2));
    let flat = write(&dir, "flat.json", r#"{"ambient_dim":2,"vertices":[["0","0"],["1","1"]]}"#);
    assert_eq!(ehrlab(&["count", s(&flat), "--k", "1"]).status.code(), Some(3));
    assert_eq!(ehrlab(&["ehrhart", s(&flat)]).status.code(), Some(3));
}

#[test]
fn periods_output() {
    let dir = TempDir::new().unwrap();
    let pyr = build(&dir, "pyr.json", &["pyr", "--p", "3", "--i", "1"]);
    let o = ehrlab(&["periods", s(&pyr)]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("3,1,1"));
    let record: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(record["period_used"], 3);
    assert_eq!(record["validation_points"].as_array().unwrap().len(), 3);

    let tri = write(&dir, "tri.json", r#"{"ambient_dim":2,"vertices":[["0","0"],["1","0"],["0","1"]]}"#);
    assert_eq!(stdout(&ehrlab(&["periods", s(&tri)])).lines().next(), Some("1,1,1"));
}

#[test]
fn ehrhart_pentagon_leading_coefficient_is_area() {
    let dir = TempDir::new().unwrap();
    let path = build(&dir, "p.json", &["pentagon", "--p", "2"]);
    let o = ehrlab(&["ehrhart", s(&path)]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let qp = QuasiPolynomial::from_json_str(&doc["quasi_polynomial"].to_string()).unwrap();
    assert_eq!(qp.degree(), 2);
    let lead = qp.coefficient(2).unwrap();
    assert!(lead.is_constant());

    let poly: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let vertices: Vec<Vec<Rational>> = poly["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_array().unwrap().iter().map(|c| parse_rational(c.as_str().unwrap()).unwrap()).collect())
        .collect();
    assert_eq!(lead.values()[0], shoelace(&vertices));
    assert_eq!(lead.values()[0], frac(6, 1));
    assert_eq!(doc["validation"]["period_used"], 2);
}

fn report(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn verify_suites() {
    let o = ehrlab(&["verify", "liu", "--T", "0,1,2,3", "--max-i", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["suite"], "liu");
    assert_eq!(r["all_pass"], true);
    let vols: Vec<&str> = r["cases"].as_array().unwrap().iter().map(|c| c["expected"]["volume"].as_str().unwrap()).collect();
    assert_eq!(vols, ["3/1", "4/1", "2/1"]);
    for c in r["cases"].as_array().unwrap() {
        assert!(c["expected"]["basis"].is_string());
        assert!(c["wall_ms"].is_u64());
        QuasiPolynomial::from_json_str(&c["actual"]["difference"].to_string()).unwrap();
    }

    let o = ehrlab(&["verify", "bsw", "--p", "1,2,3,4", "--max-i", "3"]);
    let r = report(&o);
    assert_eq!((o.status.code(), &r["all_pass"]), (Some(0), &Value::Bool(true)));
    assert_eq!(r["cases"].as_array().unwrap().len(), 16);
    assert_eq!(r["cases"][15]["expected"]["periods"], "4,1,1,1,1");

    let o = ehrlab(&["verify", "qstar", "--dim", "2", "--periods", "2,3"]);
    let r = report(&o);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(r["cases"][0]["expected"]["periods"], "2,3,1");
    assert_eq!(r["cases"][0]["actual"]["periods"], "2,3,1");
}

#[test]
fn verify_bad_flags() {
    assert_eq!(ehrlab(&["verify", "liu", "--max-i", "9"]).status.code(), Some(2));
    assert_eq!(ehrlab(&["verify", "qstar", "--periods", "2"]).status.code(), Some(2));
    assert_eq!(ehrlab(&["verify", "qi", "--i", "5"]).status.code(), Some(2));
    assert_eq!(ehrlab(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(ehrlab(&["verify", "bsw", "--p", "0"]).status.code(), Some(2));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.toml", "p = 2\njobs = 2\n");
    let o = ehrlab(&["--config", s(&cfg), "build", "pentagon"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("denominator 2"));
    let o = ehrlab(&["--config", s(&cfg), "build", "pentagon", "--p", "3"]);
    assert!(stderr(&o).contains("denominator 3"));

    let cfg = write(&dir, "v.toml", "p = [2]\ni = [0, 1]\n");
    let r = report(&ehrlab(&["verify", "pyramids", "--config", s(&cfg)]));
    assert_eq!(r["cases"].as_array().unwrap().len(), 2);

    let bad = write(&dir, "bad.toml", "colour = 3\n");
    assert_eq!(ehrlab(&["--config", s(&bad), "build", "pentagon", "--p", "2"]).status.code(), Some(2));
    let missing = dir.path().join("none.toml");
    assert_eq!(ehrlab(&["--config", s(&missing), "build", "pentagon", "--p", "2"]).status.code(), Some(2));
}

#[test]
fn jobs_flag_and_environment() {
    assert_eq!(ehrlab(&["--jobs", "0", "build", "segment", "--p", "2"]).status.code(), Some(2));
    let run_env = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_ehrlab"))
            .args(["build", "segment", "--p", "2"])
            .env("EHRLAB_JOBS", v)
            .output()
            .unwrap()
    };
    assert_eq!(run_env("lots").status.code(), Some(2));
    assert_eq!(run_env("2").status.code(), Some(0));
}

fn strip_wall_time(mut r: Value) -> Value {
    for c in r["cases"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("wall_ms");
    }
    r
}

#[test]
fn verify_all_is_deterministic() {
    let one = ehrlab(&["verify", "all", "--jobs", "1"]);
    let many = ehrlab(&["verify", "all", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(many.status.code(), Some(0));
    let (a, b) = (report(&one), report(&many));
    assert_eq!(a["all_pass"], true);
    assert_eq!(a["cases"].as_array().unwrap().len(), 37);
    assert_eq!(strip_wall_time(a), strip_wall_time(b));
}

#[test]
fn config_fuzz_seeds_parse_or_fail_cleanly() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/cli_config");
    let mut ok = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        if ehrlab_cli::config::Config::from_toml_str(&text).is_ok() {
            ok += 1;
        }
    }
    assert_eq!(ok, 2);
}
