use std::fmt;

use serde::{Serialize, Serializer};

use super::{AlgebraParams, Generator};
use crate::field::Elem;

/// The combinatorial type of a lightning flash, or a free generator.
///
/// `Finite { bottoms: b, left_top, right_top }` has bottoms `x_0..x_{b-1}`
/// joined by tops `y_i = e2 x_i = e1 x_{i+1}`; `left_top` adds
/// `y_{-1} = e1 x_0` and `right_top` adds `y_{b-1} = e2 x_{b-1}`.
///
/// In the `L(n, ε, ε')` naming, `L(n, ε, ε') = Finite(n + 1, ε, ε')`; the
/// module `M(n) = L(n, 0, 1)` and the simple module is `L(0, 0, 0)`.
/// One nonzero action coefficient: `(generator, source index, target index, coefficient)`.
pub type ActionEntry = (Generator, usize, usize, Elem);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlashKind {
    Finite { bottoms: usize, left_top: bool, right_top: bool },
    RightInfinite { left_top: bool },
    FreeGenerator,
}

/// A [`FlashKind`] placed so that its lowest bottom `x_0` (or the free
/// generator) sits in degree `shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlashShape {
    pub kind: FlashKind,
    pub shift: i64,
}

/// A labelled basis vector in a given degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: i64) -> Self {
        BasisElement { label: label.into(), degree }
    }
}

impl FlashShape {
    pub fn finite(bottoms: usize, left_top: bool, right_top: bool, shift: i64) -> FlashShape {
        assert!(bottoms >= 1, "a flash has at least one bottom");
        FlashShape { kind: FlashKind::Finite { bottoms, left_top, right_top }, shift }
    }

    /// `L(n, ε, ε')` placed at `shift`.
    pub fn lightning(n: usize, left_top: bool, right_top: bool, shift: i64) -> FlashShape {
        Self::finite(n + 1, left_top, right_top, shift)
    }

    /// `M(n) = L(n, 0, 1)` at degree 0.
    pub fn m(n: usize) -> FlashShape {
        Self::lightning(n, false, true, 0)
    }

    pub fn simple(degree: i64) -> FlashShape {
        Self::finite(1, false, false, degree)
    }

    pub fn free(degree: i64) -> FlashShape {
        FlashShape { kind: FlashKind::FreeGenerator, shift: degree }
    }

    pub fn right_infinite(left_top: bool, shift: i64) -> FlashShape {
        FlashShape { kind: FlashKind::RightInfinite { left_top }, shift }
    }

    pub fn shifted(self, by: i64) -> FlashShape {
        FlashShape { shift: self.shift + by, ..self }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, FlashKind::Finite { .. })
    }

    pub fn has_left_top(&self) -> bool {
        matches!(
            self.kind,
            FlashKind::Finite { left_top: true, .. } | FlashKind::RightInfinite { left_top: true }
        )
    }

    /// Total dimension; `None` for right-infinite shapes.
    pub fn dim(&self) -> Option<usize> {
        match self.kind {
            FlashKind::Finite { bottoms, left_top, right_top } => {
                Some(2 * bottoms - 1 + usize::from(left_top) + usize::from(right_top))
            }
            FlashKind::RightInfinite { .. } => None,
            FlashKind::FreeGenerator => Some(4),
        }
    }

    /// Canonical basis in canonical order together with the nonzero action
    /// entries. For finite flashes the order is `x_0..x_{b-1}`, then the tops
    /// from left to right. `None` for right-infinite shapes.
    pub fn canonical(&self, params: &AlgebraParams) -> Option<(Vec<BasisElement>, Vec<ActionEntry>)> {
        let f = params.field();
        let (d1, d2, g) = (params.deg_e1(), params.deg_e2(), params.gap());
        let s = self.shift;
        match self.kind {
            FlashKind::Finite { bottoms, left_top, right_top } => {
                let mut basis: Vec<BasisElement> =
                    (0..bottoms).map(|i| BasisElement::new(format!("x{i}"), s + i as i64 * g)).collect();
                let mut acts = Vec::new();
                if left_top {
                    basis.push(BasisElement::new("y-1", s + d1));
                    acts.push((Generator::E1, 0, basis.len() - 1, f.one()));
                }
                let inner = bottoms - 1 + usize::from(right_top);
                for i in 0..inner {
                    basis.push(BasisElement::new(format!("y{i}"), s + i as i64 * g + d2));
                    let y = basis.len() - 1;
                    acts.push((Generator::E2, i, y, f.one()));
                    if i + 1 < bottoms {
                        acts.push((Generator::E1, i + 1, y, f.one()));
                    }
                }
                Some((basis, acts))
            }
            FlashKind::FreeGenerator => {
                let basis = vec![
                    BasisElement::new("g", s),
                    BasisElement::new("e1g", s + d1),
                    BasisElement::new("e2g", s + d2),
                    BasisElement::new("e1e2g", s + d1 + d2),
                ];
                let acts = vec![
                    (Generator::E1, 0, 1, f.one()),
                    (Generator::E2, 0, 2, f.one()),
                    (Generator::E1, 2, 3, f.one()),
                    (Generator::E2, 1, 3, params.sigma()),
                ];
                Some((basis, acts))
            }
            FlashKind::RightInfinite { .. } => None,
        }
    }
}

impl fmt::Display for FlashShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bit = |b: bool| u8::from(b);
        match self.kind {
            FlashKind::Finite { bottoms, left_top, right_top } => {
                write!(f, "L({},{},{})@{}", bottoms - 1, bit(left_top), bit(right_top), self.shift)
            }
            FlashKind::RightInfinite { left_top } => write!(f, "L(inf,{})@{}", bit(left_top), self.shift),
            FlashKind::FreeGenerator => write!(f, "free@{}", self.shift),
        }
    }
}

impl Serialize for FlashShape {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
