//! End-to-end runs of the `sesq` binary: exit codes, output formats,
//! and the build/naturalize round trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn sesq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sesq"))
        .args(args)
        .env("SESQ_COLOR", "never")
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../sesq-dsl/tests/golden")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn check_is_clean_on_the_golden_corpus_tables() {
    for name in ["f1.sesq", "f2.sesq", "diamond.sesq", "conj_z3.sesq", "pseudo_trivial.sesq"] {
        let out = sesq(&["check", &golden(name)]);
        assert_eq!(code(&out), 0, "{name}: {}", stdout_of(&out));
        assert!(stdout_of(&out).contains("ok"));
    }
}

#[test]
fn check_reports_broken_tables_with_exit_one() {
    // `v` is declared as the zero cell but is not a unit for `plus`.
    let src = "category {\n  object A\n  id A = i\n}\n\
               cells {\n  cell u : i => i\n  cell v : i => i\n  zero i = v\n\
               \x20 plus u + u = u\n  plus u + v = v\n  plus v + u = v\n  plus v + v = v\n\
               \x20 lwhisk i . u = u\n  lwhisk i . v = v\n  rwhisk u . i = u\n  rwhisk v . i = v\n}\n";
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.sesq");
    std::fs::write(&file, src).unwrap();
    let out = sesq(&["check", file.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "{}", stdout_of(&out));
    assert!(stdout_of(&out).contains("finding"));
}

#[test]
fn unusable_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sesq");
    std::fs::write(&bad, "category {\n  objects A\n}\n").unwrap();
    for args in [
        vec!["check", bad.to_str().unwrap()],
        vec!["check", "/nonexistent/x.sesq"],
        vec!["natural", &golden("f1.sesq"), "--cell", "nope"],
        vec!["pseudocat", &golden("f1.sesq"), "--mode", "natural"],
        vec!["build", "conjugation", "nope", "-o", "/dev/null"],
    ] {
        let out = sesq(&args);
        assert_eq!(code(&out), 2, "{args:?}");
    }
}

#[test]
fn two_category_prints_the_pair_count() {
    let out = sesq(&["two-category", &golden("f1.sesq")]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("failing pairs: 0"));

    let out = sesq(&["two-category", &golden("f2.sesq")]);
    assert_eq!(code(&out), 1);
    let text = stdout_of(&out);
    assert!(text.contains("2-category: no"));
    assert!(text.contains("failing pairs: 18"), "{text}");
}

#[test]
fn naturality_verdicts_use_exit_codes() {
    let out = sesq(&["natural", &golden("f2.sesq"), "--cell", "_e_1_"]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("natural"));

    let out = sesq(&["natural", &golden("f2.sesq"), "--cell", "__01__1_"]);
    assert_eq!(code(&out), 1);
    assert!(stdout_of(&out).contains("not natural"));
}

#[test]
fn commutators_lists_only_nonzero_entries() {
    let out = sesq(&["commutators", &golden("f1.sesq")]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("nonzero commutators: 0"));

    let out = sesq(&["commutators", &golden("f2.sesq")]);
    assert_eq!(code(&out), 1);
    assert!(stdout_of(&out).contains("nonzero commutators: 18"));
}

#[test]
fn naturalize_writes_a_canonical_quotient() {
    let dir = tempfile::tempdir().unwrap();
    let dest = dir.path().join("nat.sesq");
    let out = sesq(&["naturalize", &golden("f2.sesq"), "-o", dest.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout_of(&out));

    let text = std::fs::read_to_string(&dest).unwrap();
    assert_eq!(text.matches("\n  cell ").count(), 2, "{text}");

    let out = sesq(&["check", dest.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = sesq(&["two-category", dest.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}

#[test]
fn cartesian_accepts_the_discrete_diamond() {
    let out = sesq(&["cartesian", &golden("diamond.sesq")]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("cartesian: yes"));
}

#[test]
fn pseudocat_passes_the_golden_instances_in_both_modes() {
    for name in ["grp_z3.sesq", "additive.sesq", "pseudo_trivial.sesq"] {
        for mode in ["natural", "non-natural"] {
            let out = sesq(&["pseudocat", &golden(name), "--mode", mode]);
            assert_eq!(code(&out), 0, "{name} --mode {mode}: {}", stdout_of(&out));
        }
    }
}

#[test]
fn json_lines_output_is_parseable_and_capped() {
    let out = sesq(&[
        "two-category",
        &golden("f2.sesq"),
        "--format",
        "json-lines",
        "--max-findings",
        "5",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["kind"], "error");
        assert_eq!(v["axiom"], "naturality");
        assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
    }
    // Re-runs are reproducible.
    let again = sesq(&[
        "two-category",
        &golden("f2.sesq"),
        "--format",
        "json-lines",
        "--max-findings",
        "5",
    ]);
    assert_eq!(stdout_of(&again), text);
}

#[test]
fn built_files_elaborate_and_pass_their_own_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();

    let cases: &[(&str, &[&str])] = &[
        ("conjugation", &["z4", "s3"]),
        ("derivations", &["z2triv"]),
        ("homotopies", &["f3", "z4dbl"]),
        ("internal", &["z2loop", "arrow"]),
        ("group-pseudocat", &["z3inv", "1"]),
        ("additive-pseudocat", &["f3", "f3"]),
    ];
    for (builder, args) in cases {
        let dest = path(&format!("{builder}.sesq"));
        let mut argv = vec!["build", builder];
        argv.extend(args.iter().copied());
        argv.extend(["-o", &dest]);
        let out = sesq(&argv);
        assert_eq!(code(&out), 0, "build {builder}: {}", stdout_of(&out));

        // Written files are canonical already.
        let text = std::fs::read_to_string(Path::new(&dest)).unwrap();
        let doc = sesq_dsl::parse(&text).unwrap();
        assert_eq!(sesq_dsl::serialize(&doc), text, "{builder}");
    }

    let out = sesq(&["pseudocat", &path("group-pseudocat.sesq"), "--mode", "non-natural"]);
    assert_eq!(code(&out), 0);
    let out = sesq(&["check", &path("conjugation.sesq")]);
    assert_eq!(code(&out), 0);
}

#[test]
fn color_never_yields_plain_output() {
    let out = sesq(&["check", &golden("f1.sesq")]);
    assert!(!stdout_of(&out).contains('\u{1b}'));
}
