use super::document::basis_names;
use crate::module::{Generator, Module};

/// Graphviz rendering: one node per basis vector (bottom to top by degree),
/// `e1` edges solid and `e2` edges dashed, with non-unit coefficients shown.
pub fn to_dot(m: &Module) -> String {
    let f = m.params().field();
    let names = basis_names(m);
    let mut out = String::from("digraph module {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (d, ns) in &names {
        for n in ns {
            out += &format!("  \"{n}\" [label=\"{n} ({d})\"];\n");
        }
    }
    for (d, ns) in &names {
        for (i, src) in ns.iter().enumerate() {
            for g in Generator::BOTH {
                let Some(a) = m.action(g, *d) else { continue };
                let style = match g {
                    Generator::E1 => "solid",
                    Generator::E2 => "dashed",
                };
                let targets = &names.get(&(d + m.params().degree(g)));
                for (r, c) in a.column(i).iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
                    let label = if f.is_one(c) { g.to_string() } else { format!("{} {g}", f.format(c)) };
                    let tgt = &targets.expect("nonzero entry has a target")[r];
                    out += &format!("  \"{src}\" -> \"{tgt}\" [label=\"{label}\", style={style}];\n");
                }
            }
        }
    }
    out += "}\n";
    out
}
