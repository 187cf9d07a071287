mod common;

use std::path::Path;

use common::{qi, run_cli, run_cli_in, snapshot_dir};
use heron4d::geometry::{Piece, Projection};
use heron4d::pythag::{product_dissection, RightTriangleParams};
use heron4d::report::{render_svg, ReportDocument};
use heron4d::scalar::rat_int;

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_report(path: &Path) -> ReportDocument {
    ReportDocument::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn heron_writes_the_chain_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cli_in(
        dir.path(),
        &["heron", "--p", "5", "--r", "9/5", "--h", "12/5", "--json", "out.json"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = read_report(&dir.path().join("out.json"));
    assert!(doc.verdict);
    assert_eq!(doc.schema, 1);
    assert_eq!(doc.find_value("chain").unwrap().exact, "576");
    assert_eq!(doc.steps.len(), 4);
    assert!(doc.steps.iter().all(|s| s.equal && !s.certificates.is_empty()));
    assert!(!doc.timestamp.is_empty());
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 3] = [
        &["heron", "--p", "4", "--r", "1", "--h", "2"],
        &["pythag", "--legs1", "3,4", "--legs2", "5,12"],
        &["quarter"],
    ];
    for args in cases {
        let mut runs = Vec::new();
        for _ in 0..2 {
            let mut full: Vec<&str> = args.to_vec();
            full.extend(["--json", "r.json", "--svg-dir", "figs"]);
            let out = run_cli_in(dir.path(), &full);
            assert_eq!(out.status.code(), Some(0), "{:?}: {}", args, stderr(&out));
            let doc = read_report(&dir.path().join("r.json"));
            runs.push((
                doc.without_timestamp().to_json(),
                snapshot_dir(&dir.path().join("figs")),
                stdout(&out),
            ));
            std::fs::remove_dir_all(dir.path().join("figs")).unwrap();
        }
        assert_eq!(runs[0], runs[1], "{:?}", args);
        assert!(!runs[0].1.is_empty());
    }
}

#[test]
fn corrupting_a_certificate_exits_one() {
    let base = ["heron", "--p", "5", "--r", "9/5", "--h", "12/5"];
    assert_eq!(run_cli(&base).status.code(), Some(0));
    let mut args = base.to_vec();
    args.extend(["--corrupt-certificate", "first"]);
    let out = run_cli(&args);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("certificate lhs/"), "{}", stderr(&out));

    let named = run_cli(&["cube", "--n", "4", "--corrupt-certificate", "cube tiling"]);
    assert_eq!(named.status.code(), Some(1));
    assert!(stderr(&named).contains("cube tiling"));
    let missing = run_cli(&["cube", "--n", "4", "--corrupt-certificate", "nope"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let bad: [&[&str]; 8] = [
        &["heron", "--p", "5", "--r", "9/5", "--h", "1.2"],
        &["heron", "--p", "5", "--r", "9/5", "--h", "3/0"],
        &["heron", "--p", "2", "--r", "0", "--h", "3"],
        &["heron", "--p", "-1", "--r", "0", "--h", "1"],
        &["cube", "--n", "9"],
        &["multinomial", "--k", "0", "--n", "3"],
        &["pythag", "--legs1", "3", "--legs2", "5,12"],
        &["cube", "--n", "4", "--projection", "1,2,3"],
    ];
    for args in bad {
        let out = run_cli(args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        assert!(!stderr(&out).is_empty());
    }
    assert_eq!(run_cli(&[]).status.code(), Some(2));
    assert_eq!(run_cli(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn relabel_hint_on_wrong_base() {
    let out = run_cli(&["heron", "--p", "2", "--r", "0", "--h", "3"]);
    assert!(stderr(&out).contains("relabel"));
}

#[test]
fn assembly_matches_snapshot() {
    let legs = |a, b| RightTriangleParams::from_legs(rat_int(a), rat_int(b)).unwrap();
    let pieces = product_dissection(&legs(3, 4), &legs(5, 12)).pieces;
    let svg = render_svg(&pieces, &Projection::standard());
    let expected = include_str!("snapshots/pythag_3_4_5_12.svg");
    assert_eq!(svg, expected);
    assert_eq!(svg.matches("<g ").count(), 25);

    let dir = tempfile::tempdir().unwrap();
    let out = run_cli_in(
        dir.path(),
        &["pythag", "--legs1", "3,4", "--legs2", "5,12", "--svg-dir", "."],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(dir.path().join("pythag_source.svg")).unwrap(),
        expected
    );
}

#[test]
fn unit_cube_wireframe_has_32_edges() {
    let svg = render_svg(&[Piece::cube(&qi(1))], &Projection::standard());
    assert_eq!(svg.matches("<line ").count(), 32);
    let empty = render_svg(&[], &Projection::standard());
    assert!(empty.starts_with("<svg") && !empty.contains("<line"));
}

#[test]
fn custom_projection_changes_the_figures() {
    let dir = tempfile::tempdir().unwrap();
    let std_run = run_cli_in(dir.path(), &["quarter", "--svg-dir", "a"]);
    let custom = run_cli_in(
        dir.path(),
        &["quarter", "--svg-dir", "b", "--projection", "1,0,0,1,1,1,-1,1"],
    );
    assert_eq!(std_run.status.code(), Some(0));
    assert_eq!(custom.status.code(), Some(0));
    let a = std::fs::read(dir.path().join("a/quarter.svg")).unwrap();
    let b = std::fs::read(dir.path().join("b/quarter.svg")).unwrap();
    assert_ne!(a, b);
}
