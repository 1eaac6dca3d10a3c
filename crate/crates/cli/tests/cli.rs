use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    p.to_string_lossy().into_owned()
}

fn vfk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vfk"))
        .args(args)
        .output()
        .expect("run vfk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn word_problem_exit_codes() {
    let o = vfk(&["wp", &data("dinf.json"), "t s t s"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "trivial");
    let o = vfk(&["wp", &data("dinf.json"), "t s"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "nontrivial");
    let o = vfk(&["wp", &data("dinf.json"), "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn every_solver_agrees() {
    let listed = stdout(&vfk(&["solvers"]));
    for name in [
        "normal-form",
        "dpda",
        "rewrite-leftmost",
        "rewrite-random",
        "cyk",
        "pda",
    ] {
        assert!(listed.lines().any(|l| l == name), "{name}");
    }
    for name in [
        "normal-form",
        "dpda",
        "rewrite-leftmost",
        "rewrite-rightmost",
        "pda",
    ] {
        for (w, code) in [
            ("s s", 0),
            ("t t^-", 0),
            ("s t s t", 0),
            ("s t", 1),
            ("t", 1),
        ] {
            let o = vfk(&["wp", "--solver", name, &data("dinf.json"), w]);
            assert_eq!(o.status.code(), Some(code), "{name} on {w}");
        }
    }
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(vfk(&["wp", "missing.json", "1"]).status.code(), Some(2));
    assert_eq!(vfk(&["wp", &data("dinf.json"), "q"]).status.code(), Some(2));
    let o = vfk(&["--json", "wp", &data("dinf.json"), "1", "--solver", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"].as_str().unwrap().contains("nope"));
}

#[test]
fn sizes_and_normal_forms() {
    assert_eq!(stdout(&vfk(&["size", &data("dinf.json")])).trim(), "24");
    assert_eq!(stdout(&vfk(&["size", &data("z2.json")])).trim(), "8");
    let o = vfk(&["--json", "nf", &data("dinf.json"), "t s t s"]);
    assert_eq!(json(&o)["free_part"], "1");
}

#[test]
fn verify_verdicts() {
    let run = |hom: &str| {
        vfk(&[
            "--json",
            "verify",
            "--group",
            &data("dinf.json"),
            "--gog",
            &data("dinf-gog.json"),
            "--hom",
            &data(hom),
        ])
    };
    let o = run("dinf-hom.json");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["isomorphism"], true);
    for bad in ["dinf-hom-wrong.json", "dinf-hom-nonsurj.json"] {
        assert_eq!(run(bad).status.code(), Some(1), "{bad}");
    }
}

#[test]
fn iso_verdicts() {
    let o = vfk(&["iso", &data("seg22.json"), &data("seg23.json")]);
    assert_eq!(o.status.code(), Some(1));
    let o = vfk(&[
        "--json",
        "iso",
        &data("path235.json"),
        &data("path253.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_eq!(doc["result"]["verdict"], "iso");
    assert_eq!(doc["result"]["moves"].as_array().unwrap().len(), 1);
}

#[test]
fn synth_writes_files_that_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    let o = vfk(&[
        "synth",
        "--group",
        &data("dinf.json"),
        "--max-vertices",
        "2",
        "--max-order",
        "2",
        "--max-edges",
        "1",
        "--max-image-len",
        "2",
        "--out",
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let gog = dir.path().join("gog.json");
    let hom = dir.path().join("hom.json");
    let o = vfk(&[
        "verify",
        "--group",
        &data("dinf.json"),
        "--gog",
        gog.to_str().unwrap(),
        "--hom",
        hom.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn synth_budget_exhausted_exit_3() {
    let o = vfk(&[
        "synth",
        "--group",
        &data("dinf.json"),
        "--max-vertices",
        "1",
        "--max-order",
        "2",
        "--max-edges",
        "0",
        "--max-image-len",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn slide_apply_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = vfk(&[
        "slide",
        "apply",
        &data("path235.json"),
        "--x",
        "y0b",
        "--y",
        "y1",
        "--g",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let moved = dir.path().join("moved.json");
    std::fs::write(&moved, &o.stdout).unwrap();
    let o = vfk(&["iso", &data("path235.json"), moved.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bounds_table() {
    let o = vfk(&["--json", "bounds", &data("dinf.json")]);
    let doc = json(&o);
    assert_eq!(doc["k"], "50");
    assert_eq!(doc["K"], "576");
    assert_eq!(doc["R"], "43200");
}

#[test]
fn cayley_lab_commands() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("ball.dot");
    let o = vfk(&[
        "cayley",
        "ball",
        &data("f2.json"),
        "-r",
        "2",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&dot)
        .unwrap()
        .starts_with("digraph"));
    let o = vfk(&["--json", "cayley", "ball", &data("f2.json"), "-r", "2"]);
    assert_eq!(json(&o)["vertices"].as_array().unwrap().len(), 17);

    let o = vfk(&[
        "--json",
        "cut",
        &data("f2.json"),
        "--prefix",
        "t",
        "-r",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["weight"], 1);

    let o = vfk(&[
        "--json",
        "components",
        &data("f2.json"),
        "-r",
        "0",
        "--probe",
        "3",
    ]);
    assert_eq!(json(&o)["components"].as_array().unwrap().len(), 4);

    let o = vfk(&[
        "triangulate",
        &data("f2.json"),
        "--seq",
        "1,t,t u,t,1",
        "-k",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn rational_membership_and_grammars() {
    let member = |nfa: &str, w: &str| {
        vfk(&["member", "--wp", &data("dinf.json"), "--nfa", &data(nfa), w])
            .status
            .code()
    };
    assert_eq!(member("nfa-ts-star.json", "s t^-"), Some(0));
    assert_eq!(member("nfa-ts-star.json", "s t"), Some(1));
    assert_eq!(member("nfa-ts-star.json", "t t"), Some(1));
    assert_eq!(member("nfa-t-star.json", "s t^- s"), Some(0));

    let g = data("wpz-grammar.json");
    assert_eq!(
        vfk(&["grammar", "member", &g, "a a^- a^- a"]).status.code(),
        Some(0)
    );
    assert_eq!(
        vfk(&["grammar", "member", &g, "a a"]).status.code(),
        Some(1)
    );
    assert_eq!(vfk(&["grammar", "cnf", &g]).status.code(), Some(0));
    assert_eq!(vfk(&["wp", &g, "a^- a"]).status.code(), Some(0));
    assert_eq!(
        vfk(&["wp", "--solver", "cyk", &g, "a a^- a"]).status.code(),
        Some(1)
    );
    assert_eq!(
        vfk(&["wp", "--solver", "cyk", &data("dinf.json"), "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gog_commands() {
    let o = vfk(&["--json", "gog", "check", &data("seg23.json")]);
    assert_eq!(json(&o)["reduced"], true);
    let o = vfk(&["gog", "wp", &data("seg23.json"), "--base", "P", "P.g1 P.g1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = vfk(&["gog", "wp", &data("seg23.json"), "--base", "P", "P.g1"]);
    assert_eq!(o.status.code(), Some(1));
}
