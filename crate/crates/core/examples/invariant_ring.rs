//! Brute-force invariants of SL_n, G_n or G_n' compared against the free-module prediction.
//!
//! Usage: `cargo run --example invariant_ring -- [family] [n] [p] [max_deg]`
//! with family one of `sl`, `gn`, `gnp` (defaults: sl 2 3 30).

use std::time::Instant;

use rayon::prelude::*;
use weylinv::mui::{group_generators, invariant_basis, GroupFamily, MuiBasisDescription};

fn main() -> weylinv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family =
        GroupFamily::parse(args.first().map(String::as_str).unwrap_or("sl")).expect("family");
    let n: usize = args.get(1).map_or(2, |s| s.parse().unwrap());
    let p: u32 = args.get(2).map_or(3, |s| s.parse().unwrap());
    let max_deg: usize = args.get(3).map_or(30, |s| s.parse().unwrap());

    let h = group_generators(family, n, p)?;
    let desc = MuiBasisDescription::new(family, n, p)?;
    let predicted = desc.series(max_deg);
    println!("{} with {} generators", h.label, h.generators.len());
    for r in &desc.ring {
        println!("  ring generator {} in degree {}", r.label, r.degree);
    }

    let start = Instant::now();
    let dims: Vec<usize> = (0..=max_deg)
        .into_par_iter()
        .map(|d| invariant_basis(&h, d).map(|b| b.len()))
        .collect::<weylinv::Result<_>>()?;
    let mut all_equal = true;
    for (d, &dim) in dims.iter().enumerate() {
        let expect = predicted.coeff(d) as usize;
        all_equal &= expect == dim;
        if dim > 0 || expect > 0 {
            println!("degree {d:>3}: computed {dim:>4}  predicted {expect:>4}");
        }
    }
    println!("all degrees agree: {all_equal} ({:.2?})", start.elapsed());
    Ok(())
}
