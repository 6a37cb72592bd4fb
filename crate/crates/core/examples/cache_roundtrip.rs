//! Cold and warm runs of a suite through the on-disk cache give the same report.
//!
//! Usage: `cargo run --release --example cache_roundtrip -- [cache_dir]`
//! (defaults to a fresh temporary directory).

use std::time::Instant;

use weylinv::config::RunConfig;
use weylinv::mui::GroupFamily;
use weylinv::report::Format;
use weylinv::suites::{execute, Suite};

fn main() -> weylinv::Result<()> {
    let tmp = tempfile::tempdir().expect("temporary directory");
    let dir = std::env::args()
        .nth(1)
        .map_or_else(|| tmp.path().to_path_buf(), Into::into);
    let cfg = RunConfig {
        family: Some(GroupFamily::SL),
        n: Some(3),
        p: Some(3),
        max_deg: Some(40),
        cache_dir: Some(dir.clone()),
        ..Default::default()
    };
    let mut outputs = Vec::new();
    for label in ["cold", "warm"] {
        let start = Instant::now();
        let report = execute(Suite::InvariantRings, &cfg)?;
        println!(
            "{label}: {} checks, {} failed, {:.2?}",
            report.summary.total,
            report.summary.failed,
            start.elapsed()
        );
        outputs.push(report.render(Format::Json));
    }
    println!("cache directory {}", dir.display());
    println!("byte-identical reports: {}", outputs[0] == outputs[1]);
    Ok(())
}
