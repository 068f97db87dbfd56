//! Build expressions: `L(n,e,e')@s`, `M(n)[@s]`, `free@d`, `simple@d`,
//! `inf(e)@trunc=D`, joined with `+` for direct sums.

use std::fmt;

use crate::module::{direct_sum, make_flash, truncated_infinite_flash, AlgebraParams, FlashShape, Module, ModuleError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    Syntax { term: String, reason: String },
    Module(ModuleError),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { term, reason } => write!(f, "in '{term}': {reason}"),
            ExprError::Module(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ExprError {}

/// One summand of a build expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    Shape(FlashShape),
    /// `L(∞, left_top)` cut above the given degree.
    Truncated { left_top: bool, max_degree: i64 },
}

fn flag(s: &str) -> Option<bool> {
    match s.trim() {
        "0" => Some(false),
        "1" => Some(true),
        _ => None,
    }
}

fn parse_term(raw: &str) -> Result<Term, ExprError> {
    let t: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let fail = |reason: &str| ExprError::Syntax { term: raw.trim().to_string(), reason: reason.to_string() };
    let int = |s: &str| s.parse::<i64>().map_err(|_| fail("expected an integer"));
    let count = |s: &str| s.parse::<usize>().map_err(|_| fail("expected a non-negative integer"));

    let (body, at) = match t.split_once('@') {
        Some((b, a)) => (b, Some(a)),
        None => (t.as_str(), None),
    };
    let shift = || at.map_or(Ok(0), int);
    if let Some(args) = body.strip_prefix("L(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').collect();
        let [n, e, e2] = parts[..] else { return Err(fail("L takes three arguments")) };
        let (Some(lt), Some(rt)) = (flag(e), flag(e2)) else { return Err(fail("flags must be 0 or 1")) };
        return Ok(Term::Shape(FlashShape::lightning(count(n)?, lt, rt, shift()?)));
    }
    if let Some(n) = body.strip_prefix("M(").and_then(|r| r.strip_suffix(')')) {
        return Ok(Term::Shape(FlashShape::m(count(n)?).shifted(shift()?)));
    }
    if let Some(e) = body.strip_prefix("inf(").and_then(|r| r.strip_suffix(')')) {
        let left_top = flag(e).ok_or_else(|| fail("flag must be 0 or 1"))?;
        let d = at.and_then(|a| a.strip_prefix("trunc=")).ok_or_else(|| fail("expected '@trunc=D'"))?;
        return Ok(Term::Truncated { left_top, max_degree: int(d)? });
    }
    match (body, at) {
        ("free", Some(d)) => Ok(Term::Shape(FlashShape::free(int(d)?))),
        ("simple", Some(d)) => Ok(Term::Shape(FlashShape::simple(int(d)?))),
        _ => Err(fail("unknown term")),
    }
}

/// Parses a `+`-separated build expression.
pub fn parse_expr(text: &str) -> Result<Vec<Term>, ExprError> {
    if text.trim().is_empty() {
        return Err(ExprError::Syntax { term: String::new(), reason: "empty expression".into() });
    }
    text.split('+').map(parse_term).collect()
}

/// Builds the direct sum described by `text`.
pub fn build_module(text: &str, params: &AlgebraParams) -> Result<Module, ExprError> {
    let parts = parse_expr(text)?
        .into_iter()
        .map(|t| match t {
            Term::Shape(s) => make_flash(s, params),
            Term::Truncated { left_top, max_degree } => {
                truncated_infinite_flash(left_top, max_degree, params).map(|t| t.module)
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(ExprError::Module)?;
    direct_sum(params, &parts).map_err(ExprError::Module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{counterexample_stage, Variant};

    #[test]
    fn terms() {
        assert_eq!(parse_expr("L(2,1,0)@4").unwrap(), vec![Term::Shape(FlashShape::lightning(2, true, false, 4))]);
        assert_eq!(parse_expr(" M(3) ").unwrap(), vec![Term::Shape(FlashShape::m(3))]);
        assert_eq!(parse_expr("M(1)@-2").unwrap(), vec![Term::Shape(FlashShape::m(1).shifted(-2))]);
        assert_eq!(parse_expr("simple@5 + free@0").unwrap().len(), 2);
        assert_eq!(parse_expr("inf(0)@trunc=21").unwrap(), vec![Term::Truncated { left_top: false, max_degree: 21 }]);
        for bad in ["", "L(1,2,0)", "M(x)", "free", "inf(0)@9", "Q(1)"] {
            assert!(parse_expr(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn building() {
        let p = AlgebraParams::default();
        assert_eq!(build_module("M(0) + M(1) + M(2)", &p).unwrap(), counterexample_stage(2, &p).unwrap());
        assert_eq!(build_module("inf(0)@trunc=21", &p).unwrap().total_dim(), 21);
        assert!(matches!(build_module("free@0", &p), Err(ExprError::Module(ModuleError::FreeNeedsVariantA))));
        assert_eq!(build_module("free@0", &p.with_variant(Variant::A)).unwrap().total_dim(), 4);
    }
}
