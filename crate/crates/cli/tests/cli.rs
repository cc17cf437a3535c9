mod common;

use std::process::Command;

use abeq_cli::{run_command, Output, EXIT_NO, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE};
use common::data_file;

fn run(args: &[&str]) -> Output {
    run_command(std::iter::once("abeq").chain(args.iter().copied()))
}

#[test]
fn weak_modules_of_the_path() {
    let out = run(&["weak-modules", &data_file("gamma1.graph")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "{a}\n{d}\n");
}

#[test]
fn solve_prints_the_witness() {
    let out = run(&["solve", &data_file("x1sq.inst"), "--bound", "2"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "X1 = a b\n");
    assert!(out.stderr.starts_with("stats nodes="));
}

#[test]
fn solve_exit_codes() {
    let out = run(&["solve", &data_file("item3.inst"), "--bound", "4"]);
    assert_eq!(out.code, EXIT_NO);
    let out = run(&["solve", &data_file("item1.inst"), "--bound", "1"]);
    assert_eq!(out.code, EXIT_UNKNOWN);
    assert_eq!(out.stdout, "no solution up to bound 1\n");
    let out = run(&[
        "solve",
        &data_file("item1.inst"),
        "--bound",
        "4",
        "--cap",
        "3",
    ]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["solve"]).code, EXIT_USAGE);
    assert_eq!(run(&["solve", "/nonexistent/file.inst"]).code, EXIT_USAGE);
    assert_eq!(
        run(&["normalize", &data_file("f2.graph"), "a q"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["solve", &data_file("x1sq.inst"), "--format", "json"]).code,
        EXIT_USAGE
    );
    let help = run(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("weak-modules"));
}

#[test]
fn compile_witness_decode_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("compiled.inst");
    let sidecar = dir.path().join("sidecar.dec");
    let asg = dir.path().join("witness.asg");
    let (inst_s, side_s, asg_s) = (
        inst.to_str().unwrap(),
        sidecar.to_str().unwrap(),
        asg.to_str().unwrap(),
    );

    let out = run(&[
        "compile-h10",
        &data_file("mul_expanded.h10"),
        "--graph",
        &data_file("f2.graph"),
        "--sidecar",
        side_s,
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    std::fs::write(&inst, &out.stdout).unwrap();

    let out = run(&["verify", inst_s, side_s, "--bound", "5", "--hint", "2,3,6"]);
    assert_eq!(out.code, EXIT_OK, "{}{}", out.stdout, out.stderr);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.first(), Some(&"(2,3,6)"));
    assert_eq!(lines.last(), Some(&"OK"));

    let out = run(&["witness", inst_s, side_s, "--hint", "2,3,6"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("A_x = a^2\n"));
    std::fs::write(&asg, &out.stdout).unwrap();
    let out = run(&["decode", inst_s, side_s, asg_s]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "(2,3,6)\n"));

    let good = std::fs::read_to_string(&asg).unwrap();
    std::fs::write(&asg, good.replace("A_x = a^2\n", "A_x = a\n")).unwrap();
    assert_eq!(run(&["decode", inst_s, side_s, asg_s]).code, EXIT_NO);
    std::fs::write(&asg, "A_x = a\n").unwrap();
    assert_eq!(run(&["decode", inst_s, side_s, asg_s]).code, EXIT_USAGE);
    assert_eq!(
        run(&["witness", inst_s, side_s, "--hint", "2,3,5"]).code,
        EXIT_NO
    );
    assert_eq!(
        run(&["witness", inst_s, side_s, "--hint", "2,3"]).code,
        EXIT_USAGE
    );

    let tampered = std::fs::read_to_string(&inst)
        .unwrap()
        .replacen("eq ", "eq a ", 1);
    std::fs::write(&inst, tampered).unwrap();
    let out = run(&["verify", inst_s, side_s, "--hint", "2,3,6"]);
    assert_eq!(out.code, EXIT_NO);
    assert!(out.stdout.starts_with("FAIL"));
}

#[test]
fn raag_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("raag.inst");
    let sidecar = dir.path().join("raag.dec");
    let out = run(&[
        "compile-h10-raag",
        &data_file("mul.h10"),
        "--graph",
        &data_file("gamma1.graph"),
        "--sidecar",
        sidecar.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    std::fs::write(&inst, &out.stdout).unwrap();
    let out = run(&[
        "verify",
        inst.to_str().unwrap(),
        sidecar.to_str().unwrap(),
        "--hint",
        "1,2,2",
        "--bound",
        "1",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.starts_with("(1,2,2)\n"));
    let k3 = run(&[
        "compile-h10-raag",
        &data_file("mul.h10"),
        "--graph",
        &data_file("k3.graph"),
    ]);
    assert_eq!(k3.code, EXIT_USAGE);
}

#[test]
fn word_and_instance_commands() {
    let g1 = data_file("gamma1.graph");
    assert_eq!(
        run(&["normalize", &g1, "d a c a^-1 b"]).stdout,
        "d a b c a^-1\n"
    );
    assert_eq!(run(&["length", &g1, "a d a^-1"]).stdout, "3\n");
    assert_eq!(
        run(&[
            "absum",
            &data_file("f2.graph"),
            "a b a^-1 b^2",
            "--vertex",
            "b"
        ])
        .stdout,
        "3\n"
    );
    assert_eq!(
        run(&["absum", &data_file("f2.graph"), "a b a^-1 b^2"]).stdout,
        "a 0\nb 3\n"
    );
    assert_eq!(run(&["centralizer", &g1, "a"]).stdout, "a\nb\n");
    let out = run(&["decompose", &g1, "b a d a^-1 b^-1"]);
    assert_eq!(out.stdout, "conjugator a b\ncore d\nblock (d)^1\n");
    let out = run(&["shadow", &data_file("item2.inst")]);
    assert_eq!(out.code, EXIT_NO);
    assert!(out.stdout.starts_with("disjunct 0: UNSAT\n"));
    assert_eq!(run(&["shadow", &data_file("x1sq.inst")]).code, EXIT_OK);
    let flat = run(&["flatten", &data_file("item1.inst")]);
    assert_eq!(flat.code, EXIT_OK);
    assert!(flat.stdout.contains("vars X Y _f0"));
    let red = run(&["reduce-finite-ab", &data_file("pentagon_ab.inst")]);
    assert!(red.stdout.contains("coset: _f0 in a b*G'"));
    assert_eq!(
        run(&["reduce-finite-ab", &data_file("item3.inst")]).code,
        EXIT_USAGE
    );
}

#[test]
fn output_is_deterministic() {
    let cases: Vec<Vec<String>> = vec![
        vec!["weak-modules".into(), data_file("gamma2.graph")],
        vec![
            "solve".into(),
            data_file("item1.inst"),
            "--bound".into(),
            "3".into(),
        ],
        vec!["flatten".into(), data_file("item2.inst")],
        vec!["shadow".into(), data_file("item3.inst")],
        vec![
            "compile-h10".into(),
            data_file("mul.h10"),
            "--graph".into(),
            data_file("f2.graph"),
        ],
        vec![
            "compile-h10-raag".into(),
            data_file("mul.h10"),
            "--graph".into(),
            data_file("gamma2.graph"),
        ],
        vec![
            "centralizer".into(),
            data_file("gamma1.graph"),
            "b c b^-1".into(),
        ],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&args);
        for _ in 0..3 {
            let again = run(&args);
            assert_eq!(
                (again.code, &again.stdout),
                (first.code, &first.stdout),
                "{args:?}"
            );
        }
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_abeq");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["solve", &data_file("x1sq.inst"), "--bound", "2"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "X1 = a b\n");
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("stats nodes="));
    assert_eq!(
        status(&["solve", &data_file("item2.inst"), "--bound", "2"])
            .status
            .code(),
        Some(EXIT_NO)
    );
    assert_eq!(
        status(&["solve", &data_file("item1.inst"), "--bound", "1"])
            .status
            .code(),
        Some(EXIT_UNKNOWN)
    );
    assert_eq!(status(&["no-such-command"]).status.code(), Some(EXIT_USAGE));
}
