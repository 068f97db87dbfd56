//! Parse a module document, print it back, and show a parse error.
//!
//!     cargo run --example documents

use lightning_flash::io::{parse_module, print_module};

const DOC: &str = "\
# M(1) over F_2 with |e1| = 1, |e2| = 3
field 2
deg e1 1
deg e2 3
algebra B
basis x0 0, x1 2, y0 3, y1 5
e1 x1 = y0
e2 x0 = y0
e2 x1 = y1
";

fn main() {
    let m = parse_module(DOC).expect("well-formed document");
    println!("parsed: dims {}", m.dims());
    let text = print_module(&m);
    print!("{text}");
    assert_eq!(parse_module(&text).unwrap(), m);

    let bad = DOC.replace("e1 x1 = y0", "e1 x0 = x1");
    match parse_module(&bad) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
