//! Comparisons with checked-in tables. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use weylinv::bgmodel::case;
use weylinv::serre::bottom_row_coefficients;
use weylinv::weyl::{compare_with_known_part, WeylInvariantReport};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn check(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        actual,
        expected,
        "{} differs from the golden table",
        path.display()
    );
}

#[test]
fn serre_bottom_row_pu3() {
    let coeffs = bottom_row_coefficients(&case("pu3").unwrap(), 200).unwrap();
    let mut text = String::from("degree,coefficient\n");
    for (d, c) in coeffs.iter().enumerate() {
        text.push_str(&format!("{d},{c}\n"));
    }
    check("serre_pu3_bottom_row_200.csv", &text);
}

#[test]
fn weyl_tables() {
    for (id, d) in [("pu3", 40), ("pu5", 40), ("f4", 48)] {
        let report = compare_with_known_part(&case(id).unwrap(), d).unwrap();
        assert_eq!(report.violations(), 0);
        let name = format!("weyl_{id}_{d}.csv");
        check(&name, &report.to_csv());
        let parsed =
            WeylInvariantReport::from_csv(&report.label, report.p, &report.to_csv()).unwrap();
        assert_eq!(parsed, report);
    }
}
