//! Compares brute-force Weyl invariants of `H*(BT)` with the known part for one case.
//!
//! Usage: `cargo run --release --example weyl_invariants -- [case] [max_deg]`

use std::time::Instant;

use weylinv::bgmodel::case;
use weylinv::weyl::{case_datum, compare_with_known_part, control_su3, product_spot_check};

fn main() -> weylinv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let id = args.first().map(String::as_str).unwrap_or("pu3");
    let max_deg: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(40);

    let spec = case(id)?;
    let start = Instant::now();
    let report = compare_with_known_part(&spec, max_deg)?;
    print!("{}", report.to_csv());
    println!(
        "# {}: {} violations, inferred kernel {:?} ({:.2?})",
        report.label,
        report.violations(),
        report.inferred_kernel(),
        start.elapsed()
    );

    let products = product_spot_check(&case_datum(id)?, spec.p, max_deg, 100, 7)?;
    let ok = products.iter().filter(|r| r.pass).count();
    println!("# products invariant: {ok}/{}", products.len());

    let control = control_su3(max_deg)?;
    let ok = control.iter().filter(|r| r.pass).count();
    println!("# SU(3) at 5 control: {ok}/{} degrees match", control.len());
    Ok(())
}
