//! Over the full exterior algebra, split off free summands and decompose
//! what is left.
//!
//!     cargo run --example split_free

use lightning_flash::decompose::{decompose, split_free};
use lightning_flash::io::build_module;
use lightning_flash::module::{random_basis_change, AlgebraParams, Variant};
use lightning_flash::Generator;

fn main() {
    let params = AlgebraParams::default().with_variant(Variant::A);
    let m = random_basis_change(&build_module("free@0 + free@0 + free@3 + M(1) + L(1,1,1)@2", &params).unwrap(), 1);

    let split = split_free(&m).unwrap();
    println!("free ranks: {}", split.free_ranks);
    println!("complement dims: {}", split.complement.dims());
    let c = &split.complement;
    let killed = c.degrees().all(|d| c.composite(Generator::E1, Generator::E2, d).is_zero());
    println!("e1 e2 acts as zero on the complement: {killed}");

    print!("full decomposition:\n{}", decompose(&m).unwrap().multiset());
}
