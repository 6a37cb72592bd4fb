//! Milnor primitives and reduced powers on a few classes, closed form against the recursion.
//!
//! Usage: `cargo run --example milnor_operations -- [p] [n]` (defaults: 3 2).

use weylinv::koszul::{KoszulCtx, KoszulElement};
use weylinv::mui::top_form;
use weylinv::mui::SubspaceSpec;
use weylinv::steenrod::{
    bockstein, milnor_degree, milnor_q, milnor_q_recursive, q_composite, reduced_power, QComposite,
};

fn main() -> weylinv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u32 = args.first().map_or(3, |s| s.parse().unwrap());
    let n: usize = args.get(1).map_or(2, |s| s.parse().unwrap());
    let ctx = KoszulCtx::new(p, n)?;
    let u = top_form(ctx, SubspaceSpec::Full);
    let x = &KoszulElement::t(ctx, 0) * &KoszulElement::dt(ctx, n - 1);

    println!("u = {u}, x = {x}");
    println!("beta(u) = {}", bockstein(&u));
    for i in 0..=2 {
        let closed = milnor_q(i, &x);
        let recursive = milnor_q_recursive(i, &x);
        println!(
            "Q_{i} (degree {}): {closed}   [recursion agrees: {}]",
            milnor_degree(p, i),
            closed == recursive
        );
    }
    for k in 0..=2 {
        println!("P^{k}(x) = {}", reduced_power(k, &x));
    }
    let all = QComposite::new(&(0..n).collect::<Vec<_>>())?;
    let e = q_composite(&all, &u);
    println!("{}(u) = {e}  (degree {:?})", all.label(), e.degree()?);
    Ok(())
}
