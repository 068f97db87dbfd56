//! Run the finite-stage checks and print the report.
//!
//!     cargo run --example paper_check -- 8 10
//!     cargo run --example paper_check -- 8 10 json

use lightning_flash::module::AlgebraParams;
use lightning_flash::suite::{exclusion_probe, run_paper_checks, PaperCheckParams};
use lightning_flash::FlashShape;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().and_then(|a| a.parse().ok()).unwrap_or(8);
    let j_max = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(n + 2);
    let params = PaperCheckParams::new(n, j_max, AlgebraParams::default()).expect("j_max > N");

    let report = run_paper_checks(&params);
    if args.get(2).is_some_and(|a| a == "json") {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }

    println!("\nexclusion probes (e1 at bottom, stable intersection at bottom):");
    for shape in [FlashShape::m(3), FlashShape::lightning(3, false, false, 0), FlashShape::lightning(3, true, false, 0)] {
        let p = exclusion_probe(shape, &params.params);
        println!("  {shape}: ({}, {})", p.e1_at_bottom_nonzero, p.stable_intersection_at_bottom_nonzero);
    }
}
