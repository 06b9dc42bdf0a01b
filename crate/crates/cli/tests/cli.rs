use std::path::PathBuf;
use std::process::{Command, Output};

fn cubechow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubechow")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Writes `contents` to a file unique to this test binary and returns its path.
fn file(name: &str, contents: &str) -> String {
    let dir: PathBuf = std::env::temp_dir().join(format!("cubechow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const POINT_2: &str = r#"{"ambient_dim":0,"cube_dim":2,"d":-2,"components":[{"coef":1,"generators":["y1 - 2","y2 + 3"],"irreducible":true}]}"#;
const DEMO: &str = r#"{"ambient_dim":2,"cube_dim":2,"d":0,"components":[{"coef":1,"generators":["y1 - x1*x2","y2 - x1"],"irreducible":true}]}"#;
const LINE: &str = r#"{"ambient_dim":0,"cube_dim":2,"d":-1,"components":[{"coef":1,"generators":["y1 + y2 - 3"],"irreducible":true}]}"#;
const VERTEX_TOWER: &str = r#"{"n":2,"steps":[[2,4]]}"#;

#[test]
fn verify_one_suite() {
    let out = cubechow(&["verify", "eta-table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS [eta-table]"));
}

#[test]
fn verify_json_is_reproducible() {
    let args = ["verify", "boundary-squared", "--random", "30", "--seed", "7", "--json"];
    let a = cubechow(&args);
    let b = cubechow(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let value: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(value["suite"], "boundary-squared");
}

#[test]
fn verify_all_runs_every_suite() {
    let out = cubechow(&["verify", "all", "--json", "--random", "20", "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value.as_array().unwrap().len(), 12);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = cubechow(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    assert_eq!(cubechow(&[]).status.code(), Some(2));
    assert_eq!(cubechow(&["cycle", "check", "/no/such/file.json"]).status.code(), Some(2));
}

#[test]
fn cycle_check_reports_the_witness() {
    let out = cubechow(&["cycle", "check", &file("demo.json", DEMO)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("{y1=0,y2=0}"));
    assert_eq!(cubechow(&["cycle", "check", &file("point.json", POINT_2)]).status.code(), Some(0));
}

#[test]
fn cycle_face_and_boundary() {
    let out = cubechow(&["cycle", "face", &file("demo-face.json", DEMO), "--index", "2", "--eps", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let face: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(face["cube_dim"], 1);
    let out = cubechow(&["cycle", "boundary", &file("line.json", LINE)]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn subdivide_with_certificate() {
    let path = file("point-sd.json", POINT_2);
    let iterated = cubechow(&["subdivide", "--cycle", &path, "--form", "iterated", "--json"]);
    let vertex = cubechow(&["subdivide", "--cycle", &path, "--form", "vertex", "--json", "--certify"]);
    assert_eq!(vertex.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_slice(&iterated.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&vertex.stdout).unwrap();
    assert_eq!(a["cycle"], b["cycle"]);
    assert_eq!(b["certificate"]["pass"], true);
    // The line has nonzero faces, so the certificate is refused.
    let out = cubechow(&["subdivide", "--cycle", &file("line-sd.json", LINE), "--certify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tower_build_counts() {
    let out = cubechow(&["tower", "build", "--spec", &file("tower.json", VERTEX_TOWER)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("level 0: 4 divisors, 4 vertices, 4 edges"));
    assert!(text.contains("level 1: 5 divisors, 5 vertices, 5 edges"));
    let bad = cubechow(&["tower", "build", "--spec", &file("bad-tower.json", r#"{"n":2,"steps":[[1,2]]}"#)]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn tower_apply_makes_the_demo_admissible() {
    let tower = file("tower-apply.json", VERTEX_TOWER);
    let out = cubechow(&["tower", "apply", "--cycle", &file("demo-apply.json", DEMO), "--spec", &tower, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["admissible"], true);
    let pentagon = file("pentagon.json", r#"{"n":2,"steps":[[2,3]]}"#);
    let out = cubechow(&["tower", "apply", "--cycle", &file("point-apply.json", POINT_2), "--spec", &pentagon, "--certify-h0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["h0"]["pass"], true);
}

#[test]
fn mv_demo_on_the_fixture_corpus() {
    let out = cubechow(&["mv", "demo", "--ambient", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS [mv-exactness]"));
    let corpus = file(
        "mv-corpus.json",
        r#"[{"ambient_dim":1,"cube_dim":1,"d":-1,"components":[{"coef":1,"generators":["x1","y1 - 2"],"irreducible":true}]},
            {"ambient_dim":1,"cube_dim":1,"d":-1,"components":[{"coef":2,"generators":["x1 - 1","y1 - 3"],"irreducible":true}]}]"#,
    );
    let out = cubechow(&["mv", "demo", "--ambient", "1", "--corpus", &corpus, "--u", "x1", "--v", "x1 - 1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn glue_two_points() {
    let x1 = file(
        "glue-a.json",
        r#"{"ambient_dim":1,"cube_dim":1,"d":-1,"components":[{"coef":1,"generators":["x1 - 1","y1 - 3"],"irreducible":true}]}"#,
    );
    let x2 = file(
        "glue-b.json",
        r#"{"ambient_dim":1,"cube_dim":1,"d":-1,"components":[{"coef":1,"generators":["x1","y1 - 5"],"irreducible":true}]}"#,
    );
    let out = cubechow(&["glue", &x1, &x2, "--u", "x1", "--v", "x1 - 1", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["glued"]["components"].as_array().unwrap().len(), 2);
    // Away from both points the representatives disagree on the overlap.
    let out = cubechow(&["glue", &x1, &x2, "--u", "x1 - 2", "--v", "x1 - 3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pipeline_stages() {
    let path = file("pipeline.json", POINT_2);
    let out = cubechow(&["pipeline", "--cycle", &path, "bidiv:1:1/3", "boundary", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let stages: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stages.as_array().unwrap().len(), 3);
    assert_eq!(stages[2]["canonical"], "0");
    assert_eq!(cubechow(&["pipeline", "--cycle", &path, "twist"]).status.code(), Some(2));
    let demo = file("pipeline-demo.json", DEMO);
    let out = cubechow(&["pipeline", "--cycle", &demo, "tower-apply:demo-vertex", "--json"]);
    let stages: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stages[0]["admissible"], false);
    assert_eq!(stages[1]["admissible"], true);
}
