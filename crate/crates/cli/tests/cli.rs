use std::fs;
use std::path::Path;

use reslab_cli::{main_with_args, oracle_check, parse_config, Command, Format};

fn argv(dir: &Path, rest: &[&str]) -> Vec<String> {
    let mut v = vec!["reslab".to_string()];
    v.extend(rest.iter().map(|s| s.to_string()));
    v.push("--output-dir".into());
    v.push(dir.display().to_string());
    v
}

#[test]
fn toy_certify_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let code = main_with_args(argv(
        dir.path(),
        &[
            "certify", "--q", "7", "--x", "3", "--n", "8", "--k", "8", "--y", "3",
        ],
    ));
    assert_eq!(code, 0);
    let csv = fs::read_to_string(dir.path().join("certify_q7.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].contains("7.193415637860082"));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("certify_q7.json")).unwrap())
            .unwrap();
    assert_eq!(json["report"]["certificate"]["pass"], true);
    // only the two result files remain; no temporaries
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn census_csv_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "census",
        "--q",
        "1009",
        "--delta",
        "0.5,1,2,3",
        "--format",
        "csv",
        "--jobs",
        "2",
    ];
    assert_eq!(main_with_args(argv(a.path(), &args)), 0);
    assert_eq!(main_with_args(argv(b.path(), &args)), 0);
    let x = fs::read(a.path().join("census_q1009.csv")).unwrap();
    let y = fs::read(b.path().join("census_q1009.csv")).unwrap();
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "q,sigma,delta,threshold,count,max_abs_l,bound,margin,exponent_emp,exponent_ref"
    );
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn unwritable_output_dir_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let target = blocker.join("sub");
    let code = main_with_args(argv(&target, &["scan-t1", "--q", "101"]));
    assert_eq!(code, 3);
}

#[test]
fn oracle_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        main_with_args(argv(dir.path(), &["oracle-check", "--q", "7,101"])),
        0
    );
    assert_eq!(
        main_with_args(argv(dir.path(), &["oracle-check", "--q", "4"])),
        2
    );
    assert_eq!(main_with_args(argv(dir.path(), &["oracle-check"])), 2);
    let mut table = Vec::new();
    assert!(oracle_check(&[7], &mut table).unwrap());
    let table = String::from_utf8(table).unwrap();
    assert_eq!(table.matches("PASS").count(), 4);
}

#[test]
fn config_parsing() {
    let cfg = parse_config(["reslab", "certify", "--q", "10007", "--B", "1.4"]).unwrap();
    assert_eq!(cfg.command, Command::Certify);
    assert_eq!(cfg.q_list, [10007]);
    assert_eq!((cfg.b, cfg.n, cfg.k, cfg.y), (1.4, 10_000, 10_000, 1e4));
    assert_eq!(cfg.format, Format::Both);

    let cfg = parse_config(["reslab", "scan-t3", "--q", "1009", "--sigma", "0.75"]).unwrap();
    assert!((cfg.a_sigma - 0.4).abs() < 1e-15);

    let code = |args: &[&str]| parse_config(args.iter().copied()).unwrap_err().exit_code();
    assert_eq!(
        code(&["reslab", "certify", "--q", "10007", "--B", "1.0"]),
        2
    );
    assert_eq!(
        code(&["reslab", "scan-t3", "--q", "1009", "--sigma", "1"]),
        2
    );
    assert_eq!(code(&["reslab", "scan-t1", "--q", "13"]), 2);
    assert_eq!(
        code(&["reslab", "census", "--q", "1009", "--delta", "0"]),
        2
    );
    assert_eq!(code(&["reslab", "frobnicate"]), 2);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(
        &path,
        "# toy run\nq = 7, 11\nB = 2.0\nn = 64  # truncation\nformat = json\n",
    )
    .unwrap();
    let p = path.display().to_string();
    let cfg = parse_config(["reslab", "certify", "--config", &p, "--n", "128"]).unwrap();
    assert_eq!(cfg.q_list, [7, 11]);
    assert_eq!(cfg.b, 2.0);
    assert_eq!(cfg.n, 128);
    assert_eq!(cfg.format, Format::Json);

    fs::write(&path, "q = 7\ncolour = blue\n").unwrap();
    let err = parse_config(["reslab", "certify", "--config", &p]).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("colour"));
}

#[test]
fn failed_certificate_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let code = main_with_args(argv(dir.path(), &["certify", "--q", "10007"]));
    assert_eq!(code, 1);
    assert!(dir.path().join("certify_q10007.csv").exists());
}
