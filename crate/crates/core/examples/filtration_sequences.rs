//! The splitting into N_0 and N_1 and its two exact sequences, checked degree by degree.
//!
//! Usage: `cargo run --example filtration_sequences -- [family] [n] [i] [ell] [max_deg]`
//! (defaults: sl 3 1 2 40).

use weylinv::filtration::{check_exact_sequences, check_weight_filtration, split, ModuleModel};
use weylinv::mui::GroupFamily;

fn main() -> weylinv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family =
        GroupFamily::parse(args.first().map(String::as_str).unwrap_or("sl")).expect("family");
    let n: usize = args.get(1).map_or(3, |s| s.parse().unwrap());
    let i: usize = args.get(2).map_or(1, |s| s.parse().unwrap());
    let ell: usize = args.get(3).map_or(2, |s| s.parse().unwrap());
    let max_deg: usize = args.get(4).map_or(40, |s| s.parse().unwrap());
    let p = 3;

    let model = ModuleModel::for_family(family, n, p)?;
    let spec = split(&model, ell, i)?;
    println!("N_0 generators:");
    for g in &spec.n0 {
        println!("  {:<24} degree {}", g.label, g.degree);
    }
    println!("N_1 generators:");
    for g in &spec.n1 {
        println!("  {:<24} degree {}", g.label, g.degree);
    }
    println!("z_{ell} in degree {}", spec.z_degree);

    for (name, rows) in [
        (
            "weight filtration",
            check_weight_filtration(&model, i, ell, max_deg)?,
        ),
        (
            "exact sequences",
            check_exact_sequences(&model, i, ell, max_deg)?,
        ),
    ] {
        let failed: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
        println!("{name}: {} rows, {} failed", rows.len(), failed.len());
        for r in failed {
            println!(
                "  FAIL d={:?} {}: expected {}, computed {}",
                r.degree, r.statement, r.expected, r.computed
            );
        }
    }
    Ok(())
}
