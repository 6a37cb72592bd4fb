//! Acceptance suite: one line per criterion, nonzero exit if any criterion fails.
//!
//! Run with `cargo test --release --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use weylinv::config::RunConfig;
use weylinv::mui::GroupFamily;
use weylinv::report::{Format, Report};
use weylinv::suites::{execute, Suite};
use weylinv::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suites(list: &[Suite], cfg: &RunConfig) -> Result<Outcome> {
    let mut total = 0;
    let mut failed = Vec::new();
    for &s in list {
        let r = execute(s, cfg)?;
        total += r.summary.total;
        failed.extend(r.failures().map(|f| {
            format!(
                "{s}: d={:?} {}: expected {}, computed {}",
                f.degree, f.statement, f.expected, f.computed
            )
        }));
    }
    let mut detail = format!("{} of {total} checks", total - failed.len());
    for f in failed.iter().take(5) {
        detail.push_str("\n      ");
        detail.push_str(f);
    }
    Ok(Outcome {
        pass: failed.is_empty() && total > 0,
        detail,
    })
}

fn default_suites(list: &[Suite]) -> Result<Outcome> {
    suites(list, &RunConfig::default())
}

fn render(suite: Suite, cfg: RunConfig) -> Result<String> {
    Ok(execute(suite, &cfg)?.render(Format::Json))
}

fn determinism() -> Result<Outcome> {
    let dir = tempfile::tempdir().expect("temporary directory");
    let thm41 = RunConfig {
        family: Some(GroupFamily::SL),
        n: Some(3),
        p: Some(3),
        max_deg: Some(40),
        ..Default::default()
    };
    let with = |jobs: usize, cache: bool| RunConfig {
        jobs: Some(jobs),
        cache_dir: cache.then(|| dir.path().to_path_buf()),
        ..thm41.clone()
    };
    let cold = render(Suite::InvariantRings, with(1, true))?;
    let warm = render(Suite::InvariantRings, with(4, true))?;
    let plain = render(Suite::InvariantRings, with(2, false))?;
    let mut same = cold == warm && warm == plain;
    let mut compared = 3;
    for suite in [
        Suite::Steenrod,
        Suite::Serre,
        Suite::Weyl,
        Suite::ProductLaw,
    ] {
        let cfg = |jobs| RunConfig {
            jobs: Some(jobs),
            p: Some(3),
            n: (suite != Suite::Serre && suite != Suite::Weyl).then_some(2),
            case: (suite == Suite::Weyl).then(|| "pu3".to_string()),
            ..Default::default()
        };
        same &= render(suite, cfg(1))? == render(suite, cfg(4))?;
        compared += 2;
    }
    let parsed: Report = serde_json::from_str(&cold).expect("report parses");
    Ok(Outcome {
        pass: same && parsed.all_pass(),
        detail: format!("{compared} reports compared byte for byte (cold/warm cache, jobs 1/2/4)"),
    })
}

type Check = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        (
            "Milnor operations: squares, anticommutation, Leibniz, closed vs recursive",
            || default_suites(&[Suite::Steenrod]),
        ),
        ("exact divisions by f_n leave no remainder", || {
            default_suites(&[Suite::Division])
        }),
        ("product law for all pairs of Mui classes", || {
            default_suites(&[Suite::ProductLaw])
        }),
        ("invariant dimensions equal the free-module series", || {
            let dir = tempfile::tempdir().expect("temporary directory");
            suites(
                &[Suite::InvariantRings],
                &RunConfig {
                    cache_dir: Some(dir.path().to_path_buf()),
                    ..Default::default()
                },
            )
        }),
        ("weight filtration items and short exact sequences", || {
            default_suites(&[Suite::WeightFiltration, Suite::ExactSequences])
        }),
        (
            "image of the restriction map inside the invariant rings",
            || default_suites(&[Suite::RestrictionImage]),
        ),
        (
            "Steenrod and product closure of the listed generators",
            || default_suites(&[Suite::GeneratorClosure]),
        ),
        ("spectral sequence replay to degree 200", || {
            default_suites(&[Suite::Serre])
        }),
        (
            "Weyl invariants bound the known part; golden tables; SU(3) control",
            || default_suites(&[Suite::Weyl]),
        ),
        (
            "determinism across cache state and thread count",
            determinism,
        ),
    ];

    let mut all = true;
    let mut elapsed = Duration::ZERO;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check().unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!("error: {e}"),
        });
        let took = start.elapsed();
        elapsed += took;
        all &= outcome.pass;
        println!(
            "criterion {:>2}: {} {title} ({}, {:.1?})",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail,
            took
        );
    }
    println!(
        "acceptance: {} in {elapsed:.1?}",
        if all { "all criteria pass" } else { "FAILED" }
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
