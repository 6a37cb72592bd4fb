//! Products of Mui classes against the closed sign formula, for every pair of subsets.
//!
//! Usage: `cargo run --example product_law -- [family] [n] [p]` (defaults: sl 3 3).

use weylinv::filtration::verify_product_law;
use weylinv::mui::{group_generators, GroupFamily};

fn main() -> weylinv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family =
        GroupFamily::parse(args.first().map(String::as_str).unwrap_or("sl")).expect("family");
    let n: usize = args.get(1).map_or(3, |s| s.parse().unwrap());
    let p: u32 = args.get(2).map_or(3, |s| s.parse().unwrap());

    let h = group_generators(family, n, p)?;
    let rows = verify_product_law(&h)?;
    for r in rows.iter().filter(|r| r.expected != "0") {
        println!(
            "{:<40} = {:<16} {}",
            r.statement,
            r.expected,
            if r.pass { "ok" } else { "FAIL" }
        );
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    println!(
        "{} pairs checked, {} vanish, {} failures",
        rows.len(),
        rows.iter().filter(|r| r.expected == "0").count(),
        failed
    );
    Ok(())
}
