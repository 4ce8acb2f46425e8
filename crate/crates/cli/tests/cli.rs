use std::process::{Command, Output};

const F5: &str = r#"{"type":"finite","n":5}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutcomplex"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn five_points_have_ten_cuts() {
    let o = run(&["cuts", "--space", F5]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("10 cuts"));
    assert_eq!(json(&["cuts", "--space", F5])["count"], 10);
}

#[test]
fn petersen_group() {
    assert_eq!(json(&["aut", "--space", F5])["order"], 120);
    let g = stdout(&run(&["graph", "--space", F5, "--format", "json"]));
    assert_eq!(json(&["aut", "--graph", &g])["order"], 120);
}

#[test]
fn four_points_are_disconnected() {
    let o = run(&[
        "diameter",
        "--space",
        r#"{"space":{"type":"finite","n":4}}"#,
    ]);
    assert_eq!(
        (o.status.code(), stdout(&o).trim()),
        (Some(0), "disconnected")
    );
    assert_eq!(
        json(&["kernel", "--space", r#"{"type":"finite","n":4}"#])["order"],
        4
    );
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        vec!["cuts", "--space", "{"],
        vec!["cuts", "--space", r#"{"type":"torus"}"#],
        vec!["cuts", "--space", F5, "--bogus"],
        vec!["aut", "--space", F5, "--graph", "{}"],
        vec!["kernel", "--space", F5, "--format", "dot"],
        vec![
            "reconstruct",
            "--space",
            F5,
            "--perm",
            "[1,0,2,3,4,5,6,7,8,9]",
        ],
        vec!["systems", "--fixture", "cone4"],
        vec![
            "duality",
            "--algebra",
            r#"{"atoms":2}"#,
            "--hom",
            r#"{"atom_map":[0]}"#,
        ],
        vec!["acceptance", "--only", "14"],
        vec![
            "pants",
            "--space",
            r#"{"type":"cantor"}"#,
            "--depth",
            "3",
            "--probe-depth",
            "4",
        ],
        vec!["export", "--space", F5, "--out", "/nonexistent/dir/g.dot"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = run(&["cuts", "--space", r#"{"type":"torus"}"#]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--space"));
}

#[test]
fn reconstruct_returns_the_point_map() {
    let f4 = r#"{"type":"finite","n":4}"#;
    let out = json(&["reconstruct", "--space", f4, "--perm", "[0,2,1]"]);
    let points: Vec<usize> = serde_json::from_value(out["points"].clone()).unwrap();
    assert_eq!(points.len(), 4);
}

#[test]
fn exports_are_byte_stable() {
    let dir = std::env::temp_dir().join(format!("cutcomplex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.dot"), dir.join("b.dot"));
    for p in [&a, &b] {
        assert_eq!(
            run(&["export", "--space", F5, "--out", p.to_str().unwrap()])
                .status
                .code(),
            Some(0)
        );
    }
    let dot = std::fs::read_to_string(&a).unwrap();
    assert_eq!(dot, std::fs::read_to_string(&b).unwrap());
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 15);
    let j = dir.join("g.json");
    run(&[
        "export",
        "--space",
        F5,
        "--out",
        j.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let g: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&j).unwrap()).unwrap();
    assert_eq!(g["edges"].as_array().unwrap().len(), 15);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn spheres_and_exhaustions() {
    let cantor = r#"{"type":"cantor"}"#;
    let r = json(&[
        "spheres",
        "--space",
        cantor,
        "--sides",
        r#"[["00"],["01"],["10"],["110"],["111"]]"#,
    ]);
    assert_eq!(r["recognition"]["n"], 0);
    assert_eq!(r["recognition"]["k"], 5);
    let e = json(&[
        "spheres",
        "--space",
        r#"{"type":"convergent"}"#,
        "--levels",
        "3",
    ]);
    assert_eq!(e["exhaustion"]["certificate"]["holds"], true);
    assert_eq!(e["exhaustion"]["inverse_limit"]["bijective"], true);
}

#[test]
fn pants_duality_systems_stabilizers() {
    let p = run(&[
        "pants",
        "--space",
        r#"{"type":"cantor"}"#,
        "--report",
        "json",
    ]);
    assert_eq!(p.status.code(), Some(0));
    let p: serde_json::Value = serde_json::from_str(&stdout(&p)).unwrap();
    assert_eq!(p["holds"], true);
    let d = json(&[
        "duality",
        "--algebra",
        r#"{"atoms":3}"#,
        "--element",
        "[0,2]",
        "--target",
        r#"{"atoms":2}"#,
        "--hom",
        r#"{"atom_map":[2,0]}"#,
        "--random",
        "10",
    ]);
    assert_eq!(
        (d["dual"].clone(), d["random"]["passed"].clone()),
        (true.into(), 10.into())
    );
    for name in ["weak5", "cone5", "cone6", "strong7"] {
        assert_eq!(
            json(&["systems", "--fixture", name])["passed"],
            true,
            "{name}"
        );
    }
    let s = json(&[
        "stabcheck",
        "--space",
        r#"{"type":"finite","n":6}"#,
        "--k",
        "[0]",
        "--u",
        "[0,1]",
    ]);
    assert_eq!(s["verified"], true);
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&run(&[
        "cuts",
        "--space",
        r#"{"type":"cantor"}"#,
        "--depth",
        "3",
    ]));
    let b = stdout(&run(&[
        "cuts",
        "--space",
        r#"{"type":"cantor"}"#,
        "--depth",
        "3",
        "--jobs",
        "1",
    ]));
    assert_eq!(a, b);
    assert!(a.starts_with("127 cuts"));
}

#[test]
fn acceptance_subset() {
    let o = run(&["acceptance", "--only", "1,2,12"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
    assert!(out.contains("3/3 criteria passed"));
}
