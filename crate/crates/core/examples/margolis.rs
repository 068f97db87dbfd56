//! Margolis homology of M(n) and of a free module.
//!
//!     cargo run --example margolis

use lightning_flash::module::{make_flash, make_free, AlgebraParams, FlashShape, Variant};
use lightning_flash::operators::margolis_homology;
use lightning_flash::Generator;

fn main() {
    let params = AlgebraParams::default();
    for n in 0..5 {
        let m = make_flash(FlashShape::m(n), &params).unwrap();
        println!(
            "M({n}): H(e1) = {}, H(e2) = {}",
            margolis_homology(&m, Generator::E1),
            margolis_homology(&m, Generator::E2)
        );
    }
    let free = make_free(0, &params.with_variant(Variant::A)).unwrap();
    println!(
        "free@0: H(e1) = {}, H(e2) = {}",
        margolis_homology(&free, Generator::E1),
        margolis_homology(&free, Generator::E2)
    );
}
