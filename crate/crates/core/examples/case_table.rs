//! Checks the image of the restriction map for one case of the table.
//!
//! Usage: `cargo run --release --example case_table -- [case] [max_deg]`
//! where `case` is one of pu3, pu5, f4, e6, e7, e8 (default f4).

use std::time::Instant;

use weylinv::bgmodel::{
    case, check_prop_image, series_m, steenrod_closure_check, CaseModel, MPart,
};

fn main() -> weylinv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let id = args.first().map(String::as_str).unwrap_or("f4");
    let max_deg: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(40);

    let spec = case(id)?;
    println!(
        "{} at p = {}: m = {}, k = {}, rank {}",
        spec.label, spec.p, spec.m, spec.k, spec.rank
    );
    for (name, list) in [("M_0", &spec.m0), ("M_1", &spec.m1)] {
        let gens: Vec<String> = list
            .iter()
            .map(|g| format!("{} ({})", g.label, g.degree))
            .collect();
        println!("  {name} = R{{{}}}", gens.join(", "));
    }
    println!("  M_0 series: {}", series_m(&spec, MPart::M0, 30));

    let start = Instant::now();
    let cm = CaseModel::new(spec)?;
    for c in &cm.spec.classes {
        println!("  xi*({}) = {}", c.label, cm.images[&c.label]);
    }
    let image = check_prop_image(&cm, max_deg)?;
    let closure = steenrod_closure_check(&cm, max_deg)?;
    for (name, rows) in [("image checks", &image), ("Steenrod closure", &closure)] {
        let failed: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
        println!("{name}: {} rows, {} failed", rows.len(), failed.len());
        for r in failed.iter().take(10) {
            println!(
                "  FAIL d={:?} {}: expected {}, computed {}",
                r.degree, r.statement, r.expected, r.computed
            );
        }
    }
    println!("elapsed {:.2?}", start.elapsed());
    Ok(())
}
