//! The filtration F_j = e2⁻¹(e1 F_{j-1}) on the stage M(0) ⊕ ... ⊕ M(N),
//! degree by degree, next to the same chain for a truncated L(∞,0).
//!
//!     cargo run --example filtration -- 6

use lightning_flash::module::{counterexample_stage, truncated_infinite_flash, AlgebraParams};
use lightning_flash::operators::{filtration_trace, stable_intersection};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let j_max = n + 2;
    let params = AlgebraParams::default();

    let stage = counterexample_stage(n, &params).expect("valid parameters");
    let trace = filtration_trace(&stage, j_max);
    println!("stage N = {n}: dim (F_j)_0 for j = 0..={j_max}: {:?}", trace.degree_dims(0, j_max));
    println!("chain stabilizes at j = {}", trace.stable_index);
    println!("stable intersection dims: {}", stable_intersection(&stage).dims());

    let trunc = truncated_infinite_flash(false, j_max as i64 * params.gap() + params.deg_e2(), &params).unwrap();
    let t = filtration_trace(&trunc.module, j_max);
    println!(
        "truncated L(inf,0) (realized as {}): dim (F_j)_0 = {:?}",
        trunc.realized.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" + "),
        t.degree_dims(0, j_max)
    );
}
