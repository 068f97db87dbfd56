//! Graded modules over `E(e1, e2)` and `E(e1, e2)/(e1 e2)`.
//!
//! A [`Module`] is a finite-dimensional graded vector space together with
//! two degree-raising action maps. Each degree `d` in the support stores
//! one matrix per generator, from `M_d` to `M_{d + |e|}` (the matrix has
//! zero rows when the target degree is empty).

mod construct;
mod params;
mod random;
mod shape;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use construct::{
    counterexample_stage, direct_sum, make_flash, make_free, shift, truncate_above,
    truncated_infinite_flash, TruncatedFlash,
};
pub use params::{AlgebraParams, Generator, GradedDims, Variant};
pub use random::{random_basis_change, random_variant_b_module};
pub use shape::{ActionEntry, BasisElement, FlashKind, FlashShape};

use crate::field::{Elem, FieldError};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("generator degrees must satisfy 0 < |e1| < |e2|, got |e1| = {deg_e1}, |e2| = {deg_e2}")]
    BadDegrees { deg_e1: i64, deg_e2: i64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("summands have different algebra parameters")]
    MismatchedParams,
    #[error("action matrix for {generator} at degree {degree} has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    BadShape { generator: Generator, degree: i64, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("{generator} sends a vector of degree {from} to degree {to}, expected {expected}")]
    DegreeInconsistent { generator: Generator, from: i64, to: i64, expected: i64 },
    #[error("basis index out of range")]
    BadIndex,
    #[error("free modules exist only over the full exterior algebra (variant A); the free B-module is L(0,1,1)")]
    FreeNeedsVariantA,
    #[error("infinite shapes must be built with truncated_infinite_flash")]
    InfiniteShape,
    #[error("module does not satisfy the relations of variant {0}")]
    RelationsFail(Variant),
    #[error("subspace is not closed under the action of {0}")]
    NotSubmodule(Generator),
}

/// Which relation a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    E1Squared,
    E2Squared,
    /// `e1 e2 - σ e2 e1 = 0` (variant A).
    GradedCommutation,
    /// `e1 e2 = 0` (variant B).
    E1E2,
    /// `e2 e1 = 0` (variant B).
    E2E1,
    Shape,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::E1Squared => "e1^2",
            Relation::E2Squared => "e2^2",
            Relation::GradedCommutation => "e1e2 - s*e2e1",
            Relation::E1E2 => "e1e2",
            Relation::E2E1 => "e2e1",
            Relation::Shape => "shape",
        })
    }
}

/// A relation that fails on the given source degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation {
    pub relation: Relation,
    pub degree: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.relation, self.degree)
    }
}

/// A degree-preserving linear map, one matrix per source degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedMap {
    parts: BTreeMap<i64, Matrix>,
}

impl GradedMap {
    pub fn new(parts: BTreeMap<i64, Matrix>) -> Self {
        GradedMap { parts }
    }

    pub fn part(&self, d: i64) -> Option<&Matrix> {
        self.parts.get(&d)
    }

    pub fn parts(&self) -> &BTreeMap<i64, Matrix> {
        &self.parts
    }

    /// `self ∘ other`, for maps whose degree supports line up.
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        let parts = other
            .parts
            .iter()
            .filter_map(|(d, m)| self.parts.get(d).map(|s| (*d, s.mul(m))))
            .collect();
        GradedMap { parts }
    }
}

/// A finite-dimensional graded module over `E(e1, e2)` or its quotient by `e1 e2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module {
    params: AlgebraParams,
    dims: GradedDims,
    e1: BTreeMap<i64, Matrix>,
    e2: BTreeMap<i64, Matrix>,
    labels: Option<BTreeMap<i64, Vec<String>>>,
}

impl Module {
    pub fn zero(params: AlgebraParams) -> Module {
        Module { params, dims: GradedDims::new(), e1: BTreeMap::new(), e2: BTreeMap::new(), labels: None }
    }

    /// Assembles a module from dimensions and action matrices. Missing
    /// matrices are taken to be zero; shapes are checked, relations are not
    /// (see [`Module::validate`]).
    pub fn from_parts(
        params: AlgebraParams,
        dims: GradedDims,
        mut e1: BTreeMap<i64, Matrix>,
        mut e2: BTreeMap<i64, Matrix>,
        labels: Option<BTreeMap<i64, Vec<String>>>,
    ) -> Result<Module, ModuleError> {
        let f = params.field();
        for (g, maps) in [(Generator::E1, &mut e1), (Generator::E2, &mut e2)] {
            let k = params.degree(g);
            maps.retain(|d, _| dims.get(*d) > 0);
            for (d, n) in dims.iter() {
                let want = (dims.get(d + k), n);
                let m = maps.entry(d).or_insert_with(|| Matrix::zeros(f, want.0, want.1));
                if (m.rows(), m.cols()) != want {
                    return Err(ModuleError::BadShape {
                        generator: g,
                        degree: d,
                        rows: m.rows(),
                        cols: m.cols(),
                        want_rows: want.0,
                        want_cols: want.1,
                    });
                }
            }
        }
        let labels = labels.filter(|l| dims.iter().all(|(d, n)| l.get(&d).map_or(0, Vec::len) == n));
        let labels = labels.map(|mut l| {
            l.retain(|d, _| dims.get(*d) > 0);
            l
        });
        Ok(Module { params, dims, e1, e2, labels })
    }

    /// Builds a module from a global list of labelled basis vectors and a
    /// list of action entries `(generator, source index, target index, coefficient)`.
    /// Within each degree, basis vectors keep the order in which they are listed.
    pub fn from_basis(
        params: AlgebraParams,
        basis: &[BasisElement],
        actions: &[ActionEntry],
    ) -> Result<Module, ModuleError> {
        let f = params.field();
        let mut dims = GradedDims::new();
        let mut position = Vec::with_capacity(basis.len());
        let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for b in basis {
            position.push(dims.get(b.degree));
            dims.add(b.degree, 1);
            labels.entry(b.degree).or_default().push(b.label.clone());
        }
        let mut maps: [BTreeMap<i64, Matrix>; 2] = [BTreeMap::new(), BTreeMap::new()];
        for (g, src, tgt, c) in actions {
            let (s, t) = (basis.get(*src).ok_or(ModuleError::BadIndex)?, basis.get(*tgt).ok_or(ModuleError::BadIndex)?);
            let k = params.degree(*g);
            if t.degree != s.degree + k {
                return Err(ModuleError::DegreeInconsistent {
                    generator: *g,
                    from: s.degree,
                    to: t.degree,
                    expected: s.degree + k,
                });
            }
            let idx = usize::from(*g == Generator::E2);
            let m = maps[idx]
                .entry(s.degree)
                .or_insert_with(|| Matrix::zeros(f, dims.get(t.degree), dims.get(s.degree)));
            let v = f.add(m.get(position[*tgt], position[*src]), c);
            m.set(position[*tgt], position[*src], v);
        }
        let [e1, e2] = maps;
        Module::from_parts(params, dims, e1, e2, Some(labels))
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn dims(&self) -> &GradedDims {
        &self.dims
    }

    pub fn dim(&self, d: i64) -> usize {
        self.dims.get(d)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.degrees()
    }

    /// Stored action matrix at source degree `d`, `None` outside the support.
    pub fn action(&self, g: Generator, d: i64) -> Option<&Matrix> {
        match g {
            Generator::E1 => self.e1.get(&d),
            Generator::E2 => self.e2.get(&d),
        }
    }

    /// Action matrix `M_d -> M_{d+|g|}`, zero-sized outside the support.
    pub fn action_or_zero(&self, g: Generator, d: i64) -> Matrix {
        self.action(g, d).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.params.field(), self.dim(d + self.params.degree(g)), self.dim(d))
        })
    }

    /// Matrix of the composite "apply `first`, then `second`" from degree `d`.
    pub fn composite(&self, second: Generator, first: Generator, d: i64) -> Matrix {
        let mid = d + self.params.degree(first);
        self.action_or_zero(second, mid).mul(&self.action_or_zero(first, d))
    }

    pub fn labels(&self) -> Option<&BTreeMap<i64, Vec<String>>> {
        self.labels.as_ref()
    }

    pub fn label(&self, d: i64, i: usize) -> Option<&str> {
        self.labels.as_ref()?.get(&d)?.get(i).map(String::as_str)
    }

    /// Index of the basis vector carrying `label`, as `(degree, position)`.
    pub fn find_label(&self, label: &str) -> Option<(i64, usize)> {
        self.labels.as_ref()?.iter().find_map(|(d, ls)| ls.iter().position(|l| l == label).map(|i| (*d, i)))
    }

    pub fn without_labels(mut self) -> Module {
        self.labels = None;
        self
    }

    /// Equality of parameters, dimensions and actions, ignoring labels.
    pub fn same_structure(&self, other: &Module) -> bool {
        self.params == other.params && self.dims == other.dims && self.e1 == other.e1 && self.e2 == other.e2
    }

    /// Standard basis vector `i` of degree `d`.
    pub fn unit(&self, d: i64, i: usize) -> Vec<Elem> {
        let f = self.params.field();
        let mut v = vec![f.zero(); self.dim(d)];
        v[i] = f.one();
        v
    }

    /// Every relation that fails, as `(relation, source degree)`.
    pub fn validate(&self) -> Vec<Violation> {
        use Generator::{E1, E2};
        let mut out = Vec::new();
        let p = &self.params;
        for d in self.degrees() {
            for g in Generator::BOTH {
                let m = self.action(g, d);
                let want = (self.dim(d + p.degree(g)), self.dim(d));
                if m.map(|m| (m.rows(), m.cols())) != Some(want) {
                    out.push(Violation { relation: Relation::Shape, degree: d });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for d in self.degrees() {
            if !self.composite(E1, E1, d).is_zero() {
                out.push(Violation { relation: Relation::E1Squared, degree: d });
            }
            if !self.composite(E2, E2, d).is_zero() {
                out.push(Violation { relation: Relation::E2Squared, degree: d });
            }
            let e1e2 = self.composite(E1, E2, d);
            let e2e1 = self.composite(E2, E1, d);
            match p.variant() {
                Variant::A => {
                    let neg_sigma = p.field().neg(&p.sigma());
                    if !e1e2.add(&e2e1.scale(&neg_sigma)).is_zero() {
                        out.push(Violation { relation: Relation::GradedCommutation, degree: d });
                    }
                }
                Variant::B => {
                    if !e1e2.is_zero() {
                        out.push(Violation { relation: Relation::E1E2, degree: d });
                    }
                    if !e2e1.is_zero() {
                        out.push(Violation { relation: Relation::E2E1, degree: d });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The same data read over the other algebra variant. Fails unless the
    /// relations of the requested variant hold.
    pub fn reinterpret(&self, variant: Variant) -> Result<Module, ModuleError> {
        let mut m = self.clone();
        m.params = self.params.with_variant(variant);
        if m.is_valid() {
            Ok(m)
        } else {
            Err(ModuleError::RelationsFail(variant))
        }
    }

    /// The submodule spanned by a per-degree family of subspaces, in the
    /// canonical basis of each subspace, together with its inclusion map.
    pub fn submodule(&self, parts: &BTreeMap<i64, Subspace>) -> Result<(Module, GradedMap), ModuleError> {
        let f = self.params.field();
        let sub = |d: i64| parts.get(&d).filter(|s| !s.is_zero());
        let dims: GradedDims = self.degrees().map(|d| (d, sub(d).map_or(0, Subspace::dim))).collect();
        let mut maps: [BTreeMap<i64, Matrix>; 2] = [BTreeMap::new(), BTreeMap::new()];
        for (gi, g) in Generator::BOTH.into_iter().enumerate() {
            let k = self.params.degree(g);
            for (d, n) in dims.iter() {
                let src = sub(d).expect("nonzero part");
                let images = self.action_or_zero(g, d).mul(src.basis());
                let tgt_dim = dims.get(d + k);
                let mut m = Matrix::zeros(f, tgt_dim, n);
                for (c, v) in images.columns().iter().enumerate() {
                    let coords = match sub(d + k) {
                        Some(t) => t.coordinates(v).ok_or(ModuleError::NotSubmodule(g))?,
                        None if v.iter().all(|e| f.is_zero(e)) => Vec::new(),
                        None => return Err(ModuleError::NotSubmodule(g)),
                    };
                    for (r, e) in coords.into_iter().enumerate() {
                        m.set(r, c, e);
                    }
                }
                maps[gi].insert(d, m);
            }
        }
        let inclusion = GradedMap::new(dims.degrees().map(|d| (d, sub(d).unwrap().basis().clone())).collect());
        let [e1, e2] = maps;
        Ok((Module::from_parts(self.params.clone(), dims, e1, e2, None)?, inclusion))
    }

    pub(crate) fn raw_actions(&self) -> (&BTreeMap<i64, Matrix>, &BTreeMap<i64, Matrix>) {
        (&self.e1, &self.e2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn validate_reports_e1_squared() {
        let p = AlgebraParams::default();
        let f = p.field();
        let basis = vec![BasisElement::new("a", 0), BasisElement::new("b", 1), BasisElement::new("c", 2)];
        let acts = vec![(Generator::E1, 0, 1, f.one()), (Generator::E1, 1, 2, f.one())];
        let m = Module::from_basis(p, &basis, &acts).unwrap();
        assert_eq!(m.validate(), vec![Violation { relation: Relation::E1Squared, degree: 0 }]);
    }

    #[test]
    fn validate_reports_e2e1_in_variant_b() {
        let p = AlgebraParams::default();
        let f = p.field();
        let basis = vec![BasisElement::new("a", 0), BasisElement::new("b", 1), BasisElement::new("c", 4)];
        let acts = vec![(Generator::E1, 0, 1, f.one()), (Generator::E2, 1, 2, f.one())];
        let m = Module::from_basis(p.clone(), &basis, &acts).unwrap();
        assert_eq!(m.validate(), vec![Violation { relation: Relation::E2E1, degree: 0 }]);
        // over A with σ = 1 the same data breaks graded commutation instead
        let m = Module::from_basis(p.with_variant(Variant::A), &basis, &acts).unwrap();
        assert_eq!(m.validate(), vec![Violation { relation: Relation::GradedCommutation, degree: 0 }]);
    }

    #[test]
    fn from_basis_rejects_wrong_degree() {
        let p = AlgebraParams::default();
        let f = p.field();
        let basis = vec![BasisElement::new("x0", 0), BasisElement::new("x1", 2)];
        let err = Module::from_basis(p, &basis, &[(Generator::E1, 0, 1, f.one())]).unwrap_err();
        assert!(matches!(err, ModuleError::DegreeInconsistent { from: 0, to: 2, expected: 1, .. }));
    }

    #[test]
    fn from_parts_checks_shapes() {
        let p = AlgebraParams::default();
        let f = Field::Prime(2);
        let dims: GradedDims = [(0, 1), (1, 1)].into_iter().collect();
        let mut e1 = BTreeMap::new();
        e1.insert(0, Matrix::zeros(f, 2, 1));
        assert!(matches!(
            Module::from_parts(p, dims, e1, BTreeMap::new(), None),
            Err(ModuleError::BadShape { .. })
        ));
    }
}
