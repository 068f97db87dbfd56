//! Build a few flashes and print them as documents and as a Graphviz diagram.
//!
//!     cargo run --example flashes

use lightning_flash::io::{build_module, print_module, to_dot};
use lightning_flash::module::{make_flash, AlgebraParams, FlashShape};

fn main() {
    let params = AlgebraParams::default();

    for shape in [FlashShape::m(1), FlashShape::lightning(2, true, false, 4), FlashShape::simple(0)] {
        let m = make_flash(shape, &params).expect("finite shape");
        println!("# {shape}: total dimension {}, dims {}", m.total_dim(), m.dims());
        print!("{}", print_module(&m));
        println!();
    }

    let m1 = build_module("M(1)", &params).expect("valid expression");
    print!("{}", to_dot(&m1));
}
