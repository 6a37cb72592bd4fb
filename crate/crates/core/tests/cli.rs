use std::process::Command;

fn weylinv(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_weylinv"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn series_command() {
    let (code, out, _) = weylinv(&["series", "--case", "pu3", "--part", "m1", "--max-deg", "10"]);
    assert_eq!(code, 0);
    assert!(out.contains("[0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1]"), "{out}");
    let (_, out, _) = weylinv(&[
        "series",
        "--case",
        "f4",
        "--part",
        "m0even",
        "--max-deg",
        "0",
    ]);
    assert!(out.ends_with("[1]\n"), "{out}");
    let (code, _, _) = weylinv(&["series", "--case", "g2", "--part", "m1"]);
    assert_eq!(code, 2);
}

#[test]
fn product_law_report_has_64_rows() {
    let (code, out, _) = weylinv(&[
        "verify", "lemma31", "--n", "3", "--p", "3", "--family", "sl",
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["suite"], "lemma31");
    assert_eq!(report["rows"].as_array().unwrap().len(), 64);
    assert_eq!(report["summary"]["failed"], 0);
    for key in [
        "degree",
        "statement",
        "expected",
        "computed",
        "pass",
        "paper_ref",
    ] {
        assert!(report["rows"][0].get(key).is_some(), "row field {key}");
    }
}

#[test]
fn config_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let out = dir.path().join("report.csv");
    std::fs::write(
        &cfg,
        "# small run\nn = 2\np = 5\nmax-deg = 12\nformat = csv\n",
    )
    .unwrap();
    let (code, stdout, _) = weylinv(&[
        "verify",
        "thm41",
        "--config",
        cfg.to_str().unwrap(),
        "--p",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let csv = std::fs::read_to_string(out).unwrap();
    assert!(csv.starts_with("degree,statement,expected,computed,pass,paper_ref\n"));
    // the flag wins over the file
    assert!(csv.contains("SL_2(F_3)") && !csv.contains("F_5"), "{csv}");
}

#[test]
fn exit_codes() {
    assert_eq!(weylinv(&["verify", "nonsense"]).0, 2);
    assert_eq!(weylinv(&["verify", "weyl", "--case", "g2"]).0, 2);
    assert_eq!(weylinv(&["verify", "steenrod", "--p", "4"]).0, 2);
    assert_eq!(weylinv(&["verify", "division", "--format", "yaml"]).0, 2);
    // the degree-2000 slice of rank 4 is far over the slice budget
    assert_eq!(
        weylinv(&[
            "verify",
            "thm41",
            "--family",
            "gn",
            "--n",
            "4",
            "--p",
            "3",
            "--max-deg",
            "2000"
        ])
        .0,
        3
    );
}

#[test]
fn weyl_csv_against_golden() {
    let (code, out, _) = weylinv(&[
        "verify",
        "weyl",
        "--case",
        "pu3",
        "--max-deg",
        "40",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert!(
        out.contains("table matches the golden file to degree 40,0,0,true"),
        "{out}"
    );
}
