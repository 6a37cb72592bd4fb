//! Arithmetic in `F_p[t_1..t_n] ⊗ Λ(dt_1..dt_n)`: signs, degree slices and a linear substitution.
//!
//! Usage: `cargo run --example koszul_algebra -- [p] [n]` (defaults: 3 3).

use weylinv::koszul::{sign_interleave, KoszulCtx, KoszulElement};
use weylinv::linalg::DegreeSlice;
use weylinv::matrix::{apply_matrix, MatrixGL};

fn main() -> weylinv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u32 = args.first().map_or(3, |s| s.parse().unwrap());
    let n: usize = args.get(1).map_or(3, |s| s.parse().unwrap());
    let ctx = KoszulCtx::new(p, n)?;
    let t = |i| KoszulElement::t(ctx, i);
    let dt = |i| KoszulElement::dt(ctx, i);

    let a = &(&t(0) * &dt(1)) + &dt(0);
    let b = &dt(1) - &t(1).pow(2);
    println!("a = {a}");
    println!("b = {b}");
    println!("a * b = {}", &a * &b);
    println!("dt_2 dt_1 = {}", &dt(1) * &dt(0));
    println!("dt_1 dt_1 = {}", &dt(0) * &dt(0));
    println!(
        "sign of interleaving {{0,2}} with {{1}}: {}",
        sign_interleave(&[0, 2], &[1])?
    );

    for d in 0..=6 {
        println!("degree {d}: {} monomials", DegreeSlice::new(ctx, d).dim());
    }

    // t_1 ↦ t_1 + t_2, the other generators fixed.
    let g = MatrixGL::transvection(*ctx.field(), n, 0, 1, 1);
    println!("g = {g:?}");
    println!("g · (t_1 dt_1) = {}", apply_matrix(&g, &(&t(0) * &dt(0)))?);
    Ok(())
}
