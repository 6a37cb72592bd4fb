//! Replays the spectral-sequence bookkeeping for one case and prints each page.
//!
//! Usage: `cargo run --example serre_replay -- [case] [max_deg]` (defaults: pu3 60).

use weylinv::bgmodel::case;
use weylinv::serre::replay;

fn main() -> weylinv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let id = args.first().map(String::as_str).unwrap_or("pu3");
    let max_deg: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(60);

    let spec = case(id)?;
    let run = replay(&spec, max_deg)?;
    println!("assumptions about the fiber:");
    for a in &run.contract.assumptions {
        println!("  - {a}");
    }
    for page in &run.pages {
        println!("E_{}:", page.index);
        for piece in &page.pieces {
            println!("  {:<28} {}", piece.label, piece.fiber_label);
        }
    }
    println!("bottom row of E_infinity: {}", run.bottom_row);
    let failed = run.rows.iter().filter(|r| !r.pass).count();
    println!("{} identities checked, {failed} failed", run.rows.len());
    Ok(())
}
