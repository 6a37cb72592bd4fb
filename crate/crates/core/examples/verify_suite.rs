//! Runs every verification suite on a small configuration and prints the summaries.
//!
//! Usage: `cargo run --release --example verify_suite`

use weylinv::config::RunConfig;
use weylinv::suites::{run_suite, Suite};

fn main() -> weylinv::Result<()> {
    for suite in Suite::ALL {
        let cfg = RunConfig {
            p: Some(3),
            max_deg: Some(20),
            case: matches!(
                suite,
                Suite::RestrictionImage | Suite::GeneratorClosure | Suite::Serre | Suite::Weyl
            )
            .then(|| "pu3".to_string()),
            n: (!matches!(
                suite,
                Suite::RestrictionImage | Suite::GeneratorClosure | Suite::Serre | Suite::Weyl
            ))
            .then_some(2),
            ..Default::default()
        };
        let report = run_suite(suite, &cfg, None)?;
        println!(
            "{:<14} {:>5} checks, {:>3} failed",
            suite.name(),
            report.summary.total,
            report.summary.failed
        );
    }
    Ok(())
}
