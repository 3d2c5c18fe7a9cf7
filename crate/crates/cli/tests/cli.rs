use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmesh-dim")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn machine(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn bounds_on_test_1() {
    let rows = machine(&["bounds", "--fixture", "test-1", "--degrees", "3,3:5,5", "--report", "machine"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0]["m"], serde_json::json!([3, 3]));
    assert_eq!(rows[0]["chi"], 37);
    assert_eq!(rows[0]["certified"], true);
    let text = stdout(&run(&["bounds", "--fixture", "test-1", "--degrees", "3,3:5,5"]));
    assert!(text.lines().any(|l| l.contains("(3,3)") && l.contains("37")), "{text}");
}

#[test]
fn oracle_on_counterexample() {
    let o = run(&["oracle", "--fixture", "counterexample", "--degrees", "5,5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("81"), "{text}");
}

#[test]
fn certify_on_test_3() {
    let o = run(&["certify", "--fixture", "test-3", "--degrees", "6,6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("not certified") && text.contains("143/146") && text.contains("slack 3"), "{text}");
}

#[test]
fn file_input_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = dir.path().join("mesh.json");
    std::fs::write(
        &mesh,
        r#"{"faces": [{"rect": [0, 0, "1/2", 1]}, {"rect": ["1/2", 0, 1, 1]}], "smoothness": {"default": 2}}"#,
    )
    .unwrap();
    let out = dir.path().join("report.json");
    let m = mesh.to_str().unwrap();
    let o =
        run(&["bounds", m, "--degrees", "3,3", "--with-oracle", "--report", "machine", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // C^2 cubics with one knot: 5 x 4
    assert_eq!(rows[0]["oracle"], 20);
    assert_eq!(rows[0]["chi"], 20);

    let svg_dir = dir.path().join("svg");
    let o = run(&["svg", "--fixture", "test-2", "--out", svg_dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(svg_dir.join("level-1.svg").exists() && svg_dir.join("level-2.svg").exists());

    let a = machine(&["analyze", m, "--report", "machine"]);
    assert!(a["levels"].is_array());
}

#[test]
fn exit_codes() {
    let o = run(&["bounds", "/nonexistent/mesh.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let overlap = dir.path().join("overlap.json");
    std::fs::write(&overlap, r#"{"faces": [{"rect": [0, 0, 2, 2]}, {"rect": [1, 1, 3, 3]}]}"#).unwrap();
    let o = run(&["analyze", overlap.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("0") && err.contains("1"), "{err}");

    // a ring of zero-deficit faces around a raised centre leaves a relative hole at level 1
    let ring = dir.path().join("ring.json");
    let mut faces = Vec::new();
    for j in 0..3 {
        for i in 0..3 {
            let d = if (i, j) == (1, 1) { ", \"deficit\": [1, 1]" } else { "" };
            faces.push(format!("{{\"rect\": [{i}, {j}, {}, {}]{d}}}", i + 1, j + 1));
        }
    }
    // the frame keeps the ring off the domain boundary
    let frame = ["[-1, -1, 4, 0]", "[-1, 3, 4, 4]", "[-1, 0, 0, 3]", "[3, 0, 4, 3]"];
    for f in frame {
        faces.push(format!("{{\"rect\": {f}, \"deficit\": [1, 1]}}"));
    }
    std::fs::write(&ring, format!("{{\"faces\": [{}]}}", faces.join(", "))).unwrap();
    let o = run(&["bounds", ring.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));

    let o = run(&["bounds", "--fixture", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["bounds", "--fixture", "test-1", "--degrees", "3;3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn machine_reports_are_deterministic() {
    let args = ["bounds", "--fixture", "test-3", "--degrees", "5,5:7,7", "--report", "machine"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
