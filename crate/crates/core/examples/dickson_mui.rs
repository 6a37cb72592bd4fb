//! Dickson invariants, the Euler classes, `O_{n-1}` and `f_n`, with the two exact divisions.
//!
//! Usage: `cargo run --example dickson_mui -- [p] [n]` (defaults: 3 2).

use weylinv::koszul::KoszulCtx;
use weylinv::mui::{
    dickson, dickson_degree, euler_class, exact_divide, f_class, omega_apply, top_form,
    SubspaceSpec,
};

fn main() -> weylinv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u32 = args.first().map_or(3, |s| s.parse().unwrap());
    let n: usize = args.get(1).map_or(2, |s| s.parse().unwrap());
    let ctx = KoszulCtx::new(p, n)?;

    for i in 0..n {
        let c = dickson(ctx, SubspaceSpec::Full, i)?;
        println!(
            "c_{{{n},{i}}} (degree {}): {} terms",
            dickson_degree(p, n, i),
            c.len()
        );
        if c.len() <= 8 {
            println!("  = {c}");
        }
    }
    let e = euler_class(ctx, SubspaceSpec::Full);
    println!("e_{n} = {e}");

    let f = f_class(ctx)?;
    println!("f_{n} = {f}");
    let o = omega_apply(&top_form(ctx, SubspaceSpec::Full))?;
    let q = exact_divide(&o, &f)?;
    println!("O_{{n-1}}(u_n) / f_n = {q}");
    println!(
        "equals u_{{n-1}}: {}",
        q == top_form(ctx, SubspaceSpec::Tail)
    );
    Ok(())
}
