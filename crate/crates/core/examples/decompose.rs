//! Scramble a direct sum of flashes, then recover the summands two ways:
//! the constructive decomposition with its basis certificate, and the
//! endomorphism-ring oracle.
//!
//!     cargo run --example decompose

use lightning_flash::decompose::{decompose, idempotent_oracle, verify_decomposition, DEFAULT_ORACLE_BOUND};
use lightning_flash::io::build_module;
use lightning_flash::module::{random_basis_change, AlgebraParams};
use lightning_flash::Field;

fn main() {
    let params = AlgebraParams::new(Field::Prime(5), 2, 5, lightning_flash::Variant::B).unwrap();
    let m = build_module("M(2) + L(1,1,0)@4 + L(0,1,1)@1", &params).unwrap();
    let scrambled = random_basis_change(&m, 2024);

    let d = decompose(&scrambled).expect("valid module");
    print!("{}", d.multiset());
    let check = verify_decomposition(&scrambled, &d);
    println!("certificate holds: {}", check.holds());
    for s in &d.summands {
        println!("  {} realized by {} vectors, first in degree {}", s.shape, s.vectors.len(), s.vectors[0].0);
    }

    // the oracle only handles small modules
    let small = random_basis_change(&build_module("M(1) + simple@3", &params).unwrap(), 7);
    let o = idempotent_oracle(&small, DEFAULT_ORACLE_BOUND).unwrap();
    println!("oracle on M(1) + simple@3: {}", o.multiset().to_string().trim_end().replace('\n', ", "));
    println!("agrees with decompose: {}", o.multiset() == decompose(&small).unwrap().multiset());
}
