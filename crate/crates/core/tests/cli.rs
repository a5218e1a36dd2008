use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn quiverdg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverdg"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = quiverdg(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("tests/golden").join(name)).unwrap()
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn golden_reports() {
    let cases: [(&[&str], &str); 7] = [
        (
            &["homology", "fixtures/one_vertex_zero.quiver", "--m", "4"],
            "homology_zero_m4.json",
        ),
        (
            &["homology", "fixtures/one_vertex_empty.quiver", "--m", "3"],
            "homology_empty_m3.json",
        ),
        (
            &["ideal-dim", "fixtures/quaternion.quiver"],
            "ideal_dim_quaternion.json",
        ),
        (
            &["vosnex", "tests/data/a3.quiver", "--m", "3"],
            "vosnex_a3_m3.json",
        ),
        (
            &["h0", "fixtures/square_d4.quiver", "--m", "2"],
            "h0_square_m2.json",
        ),
        (
            &["report", "fixtures/square_d4.quiver", "--m", "3"],
            "report_square_m3.json",
        ),
        (
            &["build-gamma", "fixtures/one_vertex_zero.quiver", "--m", "3"],
            "gamma_zero_m3.json",
        ),
    ];
    for (args, file) in cases {
        assert_eq!(stdout(args), golden(file), "{args:?}");
    }
}

#[test]
fn key_values() {
    let v = json(&stdout(&[
        "homology",
        "fixtures/one_vertex_zero.quiver",
        "--m",
        "4",
    ]));
    assert_eq!(
        v["homology"]["dims"],
        serde_json::json!({"0": 1, "1": 1, "2": 2, "3": 2})
    );
    let v = json(&stdout(&["ideal-dim", "fixtures/quaternion.quiver"]));
    assert_eq!(v["ideal"]["dim"], 8);
    let v = json(&stdout(&["vosnex", "tests/data/a3.quiver", "--m", "3"]));
    assert_eq!(v["homology"]["vosnex"], true);
    let v = json(&stdout(&[
        "report",
        "fixtures/quaternion.quiver",
        "--m",
        "3",
    ]));
    assert_eq!(v["ideal"]["dim"], 8);
    assert_eq!(v["ideal"]["ext2"], 2);
    let v = json(&stdout(&["ext2", "fixtures/square_d4.quiver"]));
    assert_eq!(v["ideal"]["ext2"], 1);
    let v = json(&stdout(&["split-ext-2", "fixtures/square_d4.quiver"]));
    assert_eq!(v["checks"]["split_extension"], "ok");
    let v = json(&stdout(&[
        "system-of-relations",
        "fixtures/quaternion.quiver",
    ]));
    assert_eq!(
        v["ideal"]["system_of_relations"].as_array().unwrap().len(),
        3
    );
    let v = json(&stdout(&[
        "admissibility",
        "fixtures/quaternion.quiver",
        "--max-n",
        "6",
    ]));
    assert_eq!(v["ideal"]["admissible_N"], 5);
    let v = json(&stdout(&["validate", "fixtures/square_d4.quiver"]));
    assert_eq!(v["checks"]["relations_in_square"], "ok");
    let v = json(&stdout(&["build-b", "fixtures/square_d4.quiver"]));
    assert_eq!(
        v["b"]["differentials"]["eta_r1"],
        "alpha*beta - gamma*delta"
    );
    let v = json(&stdout(&[
        "check-d2",
        "fixtures/square_d4.quiver",
        "--m",
        "4",
        "--seed",
        "9",
        "--max-len",
        "5",
    ]));
    assert_eq!(v["checks"]["d_squared"], "ok");
    assert_eq!(v["checks"]["d_squared_b"], "ok");
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["report", "fixtures/quaternion.quiver", "--m", "4"][..],
        &[
            "check-d2",
            "fixtures/square_d4.quiver",
            "--m",
            "3",
            "--seed",
            "17",
        ][..],
    ] {
        let a = quiverdg(args);
        let b = quiverdg(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("quiverdg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = quiverdg(&[
        "ideal-dim",
        "fixtures/quaternion.quiver",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        golden("ideal_dim_quaternion.json")
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quiverdg-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run_file(cmd: &str, p: &Path, extra: &[&str]) -> Output {
    let mut args = vec![cmd, p.to_str().unwrap()];
    args.extend_from_slice(extra);
    quiverdg(&args)
}

#[test]
fn parse_errors_exit_with_2() {
    let p = write_temp(
        "bad.quiver",
        "vertex v1 v2\narrow a : v1 -> v2\nrelation r : v1 -> v2 = a*q\n",
    );
    let out = run_file("validate", &p, &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains(":3:27: reference error: unknown arrow `q`"),
        "{err}"
    );
    assert!(out.stdout.is_empty());
}

#[test]
fn computation_errors_exit_with_1() {
    let p = write_temp("loop.quiver", "vertex v\narrow x : v -> v\n");
    let out = run_file("ideal-dim", &p, &["--max-n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("computation error"));
}

#[test]
fn usage_errors() {
    assert_eq!(
        quiverdg(&["frobnicate", "fixtures/quaternion.quiver"])
            .status
            .code(),
        Some(2)
    );
    let out = quiverdg(&["homology", "fixtures/quaternion.quiver"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("--m"));
    assert_eq!(
        quiverdg(&["validate", "fixtures/missing.quiver"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn m_from_file() {
    let p = write_temp("zero.quiver", "vertex v\nrelation z : v -> v = 0\nm = 4\n");
    let out = run_file("homology", &p, &[]);
    assert!(out.status.success());
    let v = json(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["homology"]["dims"]["3"], 2);
    // the flag wins over the file
    let v = json(&String::from_utf8(run_file("homology", &p, &["--m", "3"]).stdout).unwrap());
    assert_eq!(v["homology"]["dims"]["2"], 3);
}
