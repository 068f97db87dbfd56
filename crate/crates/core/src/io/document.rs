//! The plain-text module format.
//!
//! ```text
//! # M(1) over F_2
//! field 2
//! deg e1 1
//! deg e2 3
//! algebra B
//! basis x0 0, x1 2, y0 3, y1 5
//! e1 x1 = y0
//! e2 x0 = y0
//! e2 x1 = y1
//! ```
//!
//! `field 0` means the rationals. Action right-hand sides are sums of
//! `c*name` terms (`c` omitted when 1) or `0`; undeclared actions are zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::field::{Elem, Field};
use crate::module::{AlgebraParams, BasisElement, Generator, Module, Variant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\'' | '-'))
}

fn parse_int(line: usize, s: &str, what: &str) -> Result<i64, ParseError> {
    s.trim().parse().or_else(|_| err(line, format!("expected an integer {what}, found '{}'", s.trim())))
}

struct Action {
    line: usize,
    generator: Generator,
    source: usize,
    terms: Vec<(usize, Elem)>,
}

/// Parses a module document and validates the relations of its algebra.
pub fn parse_module(text: &str) -> Result<Module, ParseError> {
    let mut field: Option<(usize, Field)> = None;
    let mut degs: [Option<(usize, i64)>; 2] = [None, None];
    let mut variant = Variant::B;
    let mut basis: Vec<BasisElement> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut actions: Vec<Action> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match head {
            "field" => {
                let c = parse_int(line, rest, "characteristic")?;
                let f = u64::try_from(c).ok().and_then(|c| Field::new(c).ok());
                match f {
                    Some(f) => field = Some((line, f)),
                    None => return err(line, format!("'{rest}' is not a prime or 0")),
                }
            }
            "deg" => {
                let (g, d) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let g: Generator = match g.parse() {
                    Ok(g) => g,
                    Err(e) => return err(line, e),
                };
                degs[usize::from(g == Generator::E2)] = Some((line, parse_int(line, d, "degree")?));
            }
            "algebra" => {
                variant = match rest {
                    "A" => Variant::A,
                    "B" => Variant::B,
                    other => return err(line, format!("unknown algebra '{other}' (expected A or B)")),
                }
            }
            "basis" => {
                for entry in rest.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                    let mut parts = entry.split_whitespace();
                    let (Some(name), Some(deg), None) = (parts.next(), parts.next(), parts.next()) else {
                        return err(line, format!("basis entry '{entry}' should be 'name degree'"));
                    };
                    if !valid_name(name) {
                        return err(line, format!("invalid basis name '{name}'"));
                    }
                    let degree = parse_int(line, deg, "degree")?;
                    if index.insert(name.to_string(), basis.len()).is_some() {
                        return err(line, format!("basis name '{name}' declared twice"));
                    }
                    basis.push(BasisElement::new(name, degree));
                }
            }
            "e1" | "e2" => {
                let generator: Generator = head.parse().expect("matched e1|e2");
                let Some((src, rhs)) = rest.split_once('=') else {
                    return err(line, "action line needs '='");
                };
                let src = src.trim();
                let Some(&source) = index.get(src) else {
                    return err(line, format!("unknown basis name '{src}'"));
                };
                if actions.iter().any(|a| a.generator == generator && a.source == source) {
                    return err(line, format!("second action of {generator} on '{src}'"));
                }
                let Some((_, f)) = field else {
                    return err(line, "'field' must be declared before actions");
                };
                let mut terms = Vec::new();
                let rhs = rhs.trim();
                if rhs != "0" {
                    for term in rhs.split('+').map(str::trim) {
                        let (c, name) = match term.split_once('*') {
                            Some((c, n)) => match f.parse(c) {
                                Ok(c) => (c, n.trim()),
                                Err(e) => return err(line, e.to_string()),
                            },
                            None => (f.one(), term),
                        };
                        let Some(&target) = index.get(name) else {
                            return err(line, format!("unknown basis name '{name}'"));
                        };
                        terms.push((target, c));
                    }
                }
                actions.push(Action { line, generator, source, terms });
            }
            other => return err(line, format!("unknown directive '{other}'")),
        }
    }

    let Some((_, f)) = field else {
        return err(last_line.max(1), "missing 'field' line");
    };
    let (Some((l1, d1)), Some((l2, d2))) = (degs[0], degs[1]) else {
        return err(last_line.max(1), "missing 'deg e1' or 'deg e2' line");
    };
    let params = match AlgebraParams::new(f, d1, d2, variant) {
        Ok(p) => p,
        Err(e) => return err(l1.max(l2), e.to_string()),
    };

    let mut entries = Vec::new();
    for a in &actions {
        let k = params.degree(a.generator);
        let from = basis[a.source].degree;
        for (t, c) in &a.terms {
            let to = basis[*t].degree;
            if to != from + k {
                return err(
                    a.line,
                    format!(
                        "{} sends '{}' (degree {from}) to '{}' (degree {to}), expected degree {}",
                        a.generator,
                        basis[a.source].label,
                        basis[*t].label,
                        from + k
                    ),
                );
            }
            entries.push((a.generator, a.source, *t, c.clone()));
        }
    }
    let module = Module::from_basis(params, &basis, &entries).or_else(|e| err(last_line.max(1), e.to_string()))?;

    let violations = module.validate();
    if let Some(v) = violations.first() {
        // blame the first action line acting on the offending degree
        let line = actions
            .iter()
            .find(|a| basis[a.source].degree == v.degree)
            .map_or(last_line.max(1), |a| a.line);
        let all: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return err(line, format!("relations of algebra {} fail: {}", module.params().variant(), all.join(", ")));
    }
    Ok(module)
}

fn auto_label(d: i64, i: usize) -> String {
    if d < 0 {
        format!("vm{}_{i}", -d)
    } else {
        format!("v{d}_{i}")
    }
}

/// Basis names of `m` per degree: its own labels when present, otherwise
/// `v{d}_{i}` (`vm` for negative degrees).
pub fn basis_names(m: &Module) -> BTreeMap<i64, Vec<String>> {
    m.dims()
        .iter()
        .map(|(d, n)| (d, (0..n).map(|i| m.label(d, i).map_or_else(|| auto_label(d, i), str::to_string)).collect()))
        .collect()
}

/// Prints the canonical document of `m`.
pub fn print_module(m: &Module) -> String {
    let p = m.params();
    let f = p.field();
    let mut out = format!(
        "field {}\ndeg e1 {}\ndeg e2 {}\nalgebra {}\n",
        f.characteristic(),
        p.deg_e1(),
        p.deg_e2(),
        p.variant()
    );
    let names = basis_names(m);
    for (d, ns) in &names {
        let entries: Vec<String> = ns.iter().map(|n| format!("{n} {d}")).collect();
        out += &format!("basis {}\n", entries.join(", "));
    }
    for (d, ns) in &names {
        for (i, name) in ns.iter().enumerate() {
            for g in Generator::BOTH {
                let t = d + p.degree(g);
                let Some(col) = m.action(g, *d).map(|a| a.column(i)) else { continue };
                let terms: Vec<String> = col
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(r, c)| {
                        let target = &names[&t][r];
                        if f.is_one(c) {
                            target.clone()
                        } else {
                            format!("{}*{target}", f.format(c))
                        }
                    })
                    .collect();
                if !terms.is_empty() {
                    out += &format!("{g} {name} = {}\n", terms.join(" + "));
                }
            }
        }
    }
    out
}
