//! Decomposition of finite modules into lightning flashes and free modules.
//!
//! [`decompose`] is the constructive route (socle splitting followed by
//! zigzag interval reduction); [`idempotent_oracle`] is an independent
//! route through endomorphism rings. Every decomposition carries explicit
//! basis vectors that [`verify_decomposition`] checks against the canonical
//! relations of each shape.

mod hom;
mod oracle;
mod split_free;
mod verify;
mod zigzag;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use hom::hom_space;
pub use oracle::{idempotent_oracle, DEFAULT_ORACLE_BOUND};
pub use split_free::{split_free, FreeSplitting};
pub use verify::{verify_decomposition, Verification};

use crate::field::Elem;
use crate::module::{FlashShape, Generator, GradedDims, Module, ModuleError, Variant, Violation};
use crate::operators::{filtration, op_preimage, stable_intersection, GradedSubspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("operation requires a variant-B module")]
    NeedsVariantB,
    #[error("operation requires a variant-A module")]
    NeedsVariantA,
    #[error("module fails its relations: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))]
    Invalid(Vec<Violation>),
    #[error("decomposition left a residual of dimensions {0}")]
    Residual(GradedDims),
    #[error("total dimension {dim} exceeds the oracle bound {bound}")]
    BoundExceeded { dim: usize, bound: usize },
    #[error("oracle could not identify an indecomposable piece: {0}")]
    Unidentified(String),
    #[error("precondition failed at degree {degree}: {reason}")]
    Precondition { degree: i64, reason: String },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// One summand of a decomposition: its shape and the parent-module vectors
/// realizing the shape's canonical basis, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub shape: FlashShape,
    pub vectors: Vec<(i64, Vec<Elem>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Dimensions not covered by any summand; empty on success.
    pub residual: GradedDims,
}

impl Decomposition {
    pub fn multiset(&self) -> Multiset {
        self.summands.iter().map(|s| s.shape).collect()
    }

    fn from_summands(m: &Module, mut summands: Vec<Summand>) -> Result<Decomposition, DecomposeError> {
        summands.sort_by_key(|s| (s.shape.shift, s.shape.kind));
        let mut residual = m.dims().clone();
        for (d, _) in summands.iter().flat_map(|s| s.vectors.iter()) {
            let left = residual.get(*d);
            residual.set(*d, left.saturating_sub(1));
        }
        if !residual.is_empty() {
            return Err(DecomposeError::Residual(residual));
        }
        Ok(Decomposition { summands, residual })
    }
}

/// Shapes with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Multiset(BTreeMap<FlashShape, usize>);

impl Multiset {
    pub fn new() -> Self {
        Multiset(BTreeMap::new())
    }

    pub fn insert(&mut self, shape: FlashShape) {
        *self.0.entry(shape).or_insert(0) += 1;
    }

    pub fn count(&self, shape: &FlashShape) -> usize {
        self.0.get(shape).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FlashShape, usize)> {
        self.0.iter().map(|(s, n)| (s, *n))
    }

    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shifted(&self, by: i64) -> Multiset {
        Multiset(self.0.iter().map(|(s, n)| (s.shifted(by), *n)).collect())
    }
}

impl FromIterator<FlashShape> for Multiset {
    fn from_iter<I: IntoIterator<Item = FlashShape>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for s in iter {
            m.insert(s);
        }
        m
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (shape, n) in &self.0 {
            writeln!(f, "{shape} ×{n}")?;
        }
        Ok(())
    }
}

/// Decomposes a finite module into flashes (and, over variant A, free
/// generators), with a basis realization for every summand.
pub fn decompose(m: &Module) -> Result<Decomposition, DecomposeError> {
    let violations = m.validate();
    if !violations.is_empty() {
        return Err(DecomposeError::Invalid(violations));
    }
    match m.params().variant() {
        Variant::B => Decomposition::from_summands(m, zigzag::decompose_b(m)),
        Variant::A => {
            let split = split_free(m)?;
            let mut summands = split.free_summands(m);
            let complement = split.complement.reinterpret(Variant::B)?;
            for s in zigzag::decompose_b(&complement) {
                let vectors = s
                    .vectors
                    .into_iter()
                    .map(|(d, v)| (d, split.complement_inclusion.part(d).expect("degree in support").mul_vec(&v)))
                    .collect();
                summands.push(Summand { shape: s.shape, vectors });
            }
            Decomposition::from_summands(m, summands)
        }
    }
}

/// The multiset of shapes in [`decompose`]'s output.
pub fn multiplicities(m: &Module) -> Result<Multiset, DecomposeError> {
    Ok(decompose(m)?.multiset())
}

/// Number of summands `M(n)` based at degree `d`, read off from the
/// filtration: `dim (F_n ∩ ker e1)_d - dim (F_{n+1} ∩ ker e1)_d`.
///
/// Requires `e1` to vanish on `M_d` and the stable intersection of the
/// filtration to vanish in degree `d`; those rule out every other flash
/// type with a bottom in degree `d`.
pub fn flash_multiplicity_at_degree(m: &Module, d: i64, n: usize) -> Result<usize, DecomposeError> {
    if m.action(Generator::E1, d).is_some_and(|a| !a.is_zero()) {
        return Err(DecomposeError::Precondition {
            degree: d,
            reason: "e1 is nonzero on this degree (a summand with a left top contributes here)".into(),
        });
    }
    if !stable_intersection(m).part(d).is_zero() {
        return Err(DecomposeError::Precondition {
            degree: d,
            reason: "the stable intersection of the filtration is nonzero here (an L(n,0,0) summand contributes)".into(),
        });
    }
    let ker_e1 = op_preimage(m, Generator::E1, &GradedSubspace::zero(m)).expect("same parent");
    let dim_at = |j: usize| filtration(m, j).intersect(&ker_e1).expect("same parent").part(d).dim();
    Ok(dim_at(n) - dim_at(n + 1))
}
