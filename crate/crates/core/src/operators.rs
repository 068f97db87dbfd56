//! Subspace calculus on a module: action images, preimages under an
//! action, the filtration `F_j = e2⁻¹(e1 F_{j-1})`, socle, radical and
//! Margolis homology.

use std::collections::BTreeMap;

use crate::field::{Elem, Field};
use crate::linalg::{self, LinalgError, Subspace};
use crate::module::{Generator, GradedDims, Module};

/// A subspace of a module's carrier, one canonical [`Subspace`] per degree
/// of the parent's support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    field: Field,
    parts: BTreeMap<i64, Subspace>,
}

impl GradedSubspace {
    pub fn full(m: &Module) -> Self {
        let field = m.params().field();
        GradedSubspace { field, parts: m.dims().iter().map(|(d, n)| (d, Subspace::full(field, n))).collect() }
    }

    pub fn zero(m: &Module) -> Self {
        let field = m.params().field();
        GradedSubspace { field, parts: m.dims().iter().map(|(d, n)| (d, Subspace::zero(field, n))).collect() }
    }

    /// Span of `(degree, vector)` pairs inside `m`.
    pub fn span(m: &Module, vectors: &[(i64, Vec<Elem>)]) -> Self {
        let mut out = Self::zero(m);
        for (d, n) in m.dims().iter() {
            let vs: Vec<Vec<Elem>> = vectors.iter().filter(|(e, _)| *e == d).map(|(_, v)| v.clone()).collect();
            out.parts.insert(d, Subspace::span(out.field, n, &vs));
        }
        out
    }

    pub fn parts(&self) -> &BTreeMap<i64, Subspace> {
        &self.parts
    }

    /// The degree-`d` slice; the zero space outside the parent's support.
    pub fn part(&self, d: i64) -> Subspace {
        self.parts.get(&d).cloned().unwrap_or_else(|| Subspace::zero(self.field, 0))
    }

    pub fn dims(&self) -> GradedDims {
        self.parts.iter().map(|(d, s)| (*d, s.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.parts.values().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.values().all(Subspace::is_zero)
    }

    pub fn contains(&self, d: i64, v: &[Elem]) -> bool {
        match self.parts.get(&d) {
            Some(s) => s.contains(v),
            None => v.is_empty(),
        }
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.parts.iter().all(|(d, s)| other.parts.get(d).is_some_and(|o| s.is_subspace_of(o)) || s.is_zero())
    }

    fn zip(&self, other: &GradedSubspace, op: fn(&Subspace, &Subspace) -> Result<Subspace, LinalgError>) -> Result<GradedSubspace, LinalgError> {
        if self.parts.keys().ne(other.parts.keys()) {
            return Err(LinalgError::AmbientMismatch { left: self.parts.len(), right: other.parts.len() });
        }
        let parts = self
            .parts
            .iter()
            .map(|(d, s)| Ok((*d, op(s, &other.parts[d])?)))
            .collect::<Result<_, LinalgError>>()?;
        Ok(GradedSubspace { field: self.field, parts })
    }

    pub fn intersect(&self, other: &GradedSubspace) -> Result<GradedSubspace, LinalgError> {
        self.zip(other, linalg::intersect)
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace, LinalgError> {
        self.zip(other, linalg::sum_space)
    }

    pub fn shifted(&self, by: i64) -> GradedSubspace {
        GradedSubspace { field: self.field, parts: self.parts.iter().map(|(d, s)| (d + by, s.clone())).collect() }
    }

    fn check_parent(&self, m: &Module) -> Result<(), LinalgError> {
        for (d, n) in m.dims().iter() {
            let amb = self.parts.get(&d).map_or(0, Subspace::ambient);
            if amb != n {
                return Err(LinalgError::AmbientMismatch { left: amb, right: n });
            }
        }
        if self.parts.len() != m.dims().iter().count() {
            return Err(LinalgError::AmbientMismatch { left: self.parts.len(), right: m.dims().iter().count() });
        }
        Ok(())
    }
}

/// Degreewise image of `u` under the chosen action.
pub fn act_image(m: &Module, which: Generator, u: &GradedSubspace) -> Result<GradedSubspace, LinalgError> {
    u.check_parent(m)?;
    let k = m.params().degree(which);
    let mut out = GradedSubspace::zero(m);
    for (d, part) in out.parts.iter_mut() {
        let src = d - k;
        if let (Some(a), Some(s)) = (m.action(which, src), u.parts.get(&src)) {
            *part = s.map(a);
        }
    }
    Ok(out)
}

/// `{v : which·v ∈ u}`, degree by degree.
pub fn op_preimage(m: &Module, which: Generator, u: &GradedSubspace) -> Result<GradedSubspace, LinalgError> {
    u.check_parent(m)?;
    let k = m.params().degree(which);
    let mut out = GradedSubspace::full(m);
    for (d, part) in out.parts.iter_mut() {
        if let Some(target) = u.parts.get(&(d + k)) {
            *part = linalg::preimage_space(m.action(which, *d).expect("degree in support"), target)?;
        }
    }
    Ok(out)
}

fn filtration_step(m: &Module, prev: &GradedSubspace) -> GradedSubspace {
    let pushed = act_image(m, Generator::E1, prev).expect("same parent");
    op_preimage(m, Generator::E2, &pushed).expect("same parent")
}

/// `F_j`, with `F_0 = M` and `F_j = e2⁻¹(e1 F_{j-1})`.
pub fn filtration(m: &Module, j: usize) -> GradedSubspace {
    let mut cur = GradedSubspace::full(m);
    for _ in 0..j {
        let next = filtration_step(m, &cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// The decreasing chain `F_0 ⊇ F_1 ⊇ ...` and the first index at which it stops moving.
#[derive(Debug, Clone)]
pub struct FiltrationTrace {
    pub terms: Vec<GradedSubspace>,
    pub stable_index: usize,
}

impl FiltrationTrace {
    /// `F_j` for any `j`, using stabilization past the recorded terms.
    pub fn term(&self, j: usize) -> &GradedSubspace {
        &self.terms[j.min(self.terms.len() - 1)]
    }

    /// Dimension of `(F_j)_d` for `j = 0..=j_max`.
    pub fn degree_dims(&self, d: i64, j_max: usize) -> Vec<usize> {
        (0..=j_max).map(|j| self.term(j).part(d).dim()).collect()
    }
}

/// Records `F_0..F_{j_max}`, continuing past `j_max` if needed until the
/// chain repeats, so `stable_index` is always exact.
pub fn filtration_trace(m: &Module, j_max: usize) -> FiltrationTrace {
    let mut terms = vec![GradedSubspace::full(m)];
    let mut stable = None;
    loop {
        let j = terms.len() - 1;
        if stable.is_some() && j >= j_max {
            break;
        }
        let next = filtration_step(m, &terms[j]);
        if stable.is_none() && next == terms[j] {
            stable = Some(j);
        }
        terms.push(next);
    }
    FiltrationTrace { terms, stable_index: stable.expect("chain stabilizes in finite dimension") }
}

/// `⋂_j F_j`, which equals the stable term of the chain.
pub fn stable_intersection(m: &Module) -> GradedSubspace {
    let mut cur = GradedSubspace::full(m);
    loop {
        let next = filtration_step(m, &cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn degree_part(u: &GradedSubspace, d: i64) -> Subspace {
    u.part(d)
}

fn kernel_of(m: &Module, which: Generator) -> GradedSubspace {
    op_preimage(m, which, &GradedSubspace::zero(m)).expect("same parent")
}

/// `ker e1 ∩ ker e2`.
pub fn socle(m: &Module) -> GradedSubspace {
    kernel_of(m, Generator::E1).intersect(&kernel_of(m, Generator::E2)).expect("same parent")
}

/// `e1 M + e2 M`.
pub fn radical(m: &Module) -> GradedSubspace {
    let full = GradedSubspace::full(m);
    let a = act_image(m, Generator::E1, &full).expect("same parent");
    let b = act_image(m, Generator::E2, &full).expect("same parent");
    a.sum(&b).expect("same parent")
}

/// Degreewise `dim ker / dim im` for an action that squares to zero.
pub fn margolis_homology(m: &Module, which: Generator) -> GradedDims {
    let ker = kernel_of(m, which);
    let im = act_image(m, which, &GradedSubspace::full(m)).expect("same parent");
    m.degrees()
        .map(|d| (d, linalg::quotient_dim(&ker.part(d), &im.part(d)).expect("im ⊆ ker when the action squares to zero")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{counterexample_stage, make_flash, make_free, AlgebraParams, FlashShape, Variant};

    fn span_of(m: &Module, labels: &[&str]) -> GradedSubspace {
        let vs: Vec<(i64, Vec<Elem>)> = labels
            .iter()
            .map(|l| {
                let (d, i) = m.find_label(l).unwrap_or_else(|| panic!("no label {l}"));
                (d, m.unit(d, i))
            })
            .collect();
        GradedSubspace::span(m, &vs)
    }

    fn m(n: usize) -> Module {
        make_flash(FlashShape::m(n), &AlgebraParams::default()).unwrap()
    }

    #[test]
    fn action_images() {
        let m2 = m(2);
        let full = GradedSubspace::full(&m2);
        assert_eq!(act_image(&m2, Generator::E1, &full).unwrap(), span_of(&m2, &["y0", "y1"]));
        let m1 = m(1);
        assert_eq!(act_image(&m1, Generator::E2, &GradedSubspace::full(&m1)).unwrap(), span_of(&m1, &["y0", "y1"]));
        assert!(act_image(&m1, Generator::E2, &GradedSubspace::zero(&m1)).unwrap().is_zero());
        assert!(act_image(&m1, Generator::E2, &GradedSubspace::full(&m2)).is_err());
    }

    #[test]
    fn preimages() {
        for n in 0..5 {
            let mn = m(n);
            let e1m = act_image(&mn, Generator::E1, &GradedSubspace::full(&mn)).unwrap();
            let pre = op_preimage(&mn, Generator::E2, &e1m).unwrap();
            let mut want: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            want.extend((0..=n).map(|i| format!("y{i}")));
            let want: Vec<&str> = want.iter().map(String::as_str).collect();
            assert_eq!(pre, span_of(&mn, &want), "n = {n}");
        }
        let m1 = m(1);
        assert_eq!(op_preimage(&m1, Generator::E2, &GradedSubspace::full(&m1)).unwrap(), GradedSubspace::full(&m1));
        assert_eq!(op_preimage(&m1, Generator::E2, &GradedSubspace::zero(&m1)).unwrap(), span_of(&m1, &["y0", "y1"]));
    }

    #[test]
    fn filtration_of_m2() {
        let m2 = m(2);
        assert_eq!(filtration(&m2, 0), GradedSubspace::full(&m2));
        assert_eq!(filtration(&m2, 1), span_of(&m2, &["x0", "x1", "y0", "y1", "y2"]));
        let tops = span_of(&m2, &["y0", "y1", "y2"]);
        for j in 3..7 {
            assert_eq!(filtration(&m2, j), tops);
        }
        let trace = filtration_trace(&m2, 5);
        assert_eq!(trace.stable_index, 3);
        assert_eq!(trace.terms.len(), 6);
    }

    #[test]
    fn stable_intersections() {
        let p = AlgebraParams::default();
        for n in 0..5 {
            let stage = counterexample_stage(n, &p).unwrap();
            assert!(stable_intersection(&stage).part(0).is_zero());
            let l = make_flash(FlashShape::lightning(n, false, false, 0), &p).unwrap();
            assert_eq!(stable_intersection(&l), GradedSubspace::full(&l));
        }
        assert!(stable_intersection(&Module::zero(p)).is_zero());
    }

    #[test]
    fn degree_parts() {
        let p = AlgebraParams::default();
        assert_eq!(degree_part(&GradedSubspace::full(&m(3)), 0).dim(), 1);
        assert_eq!(degree_part(&GradedSubspace::full(&m(3)), 1).dim(), 0);
        let stage = counterexample_stage(4, &p).unwrap();
        assert_eq!(degree_part(&filtration(&stage, 2), 0).dim(), 3);
    }

    #[test]
    fn socle_and_radical() {
        let m1 = m(1);
        assert_eq!(socle(&m1), span_of(&m1, &["y0", "y1"]));
        let pa = AlgebraParams::default().with_variant(Variant::A);
        let free = make_free(0, &pa).unwrap();
        assert_eq!(radical(&free), span_of(&free, &["e1g", "e2g", "e1e2g"]));
        let s = make_flash(FlashShape::simple(0), &AlgebraParams::default()).unwrap();
        assert_eq!(socle(&s), GradedSubspace::full(&s));
    }

    #[test]
    fn margolis_examples() {
        let pa = AlgebraParams::default().with_variant(Variant::A);
        let free = make_free(0, &pa).unwrap();
        assert!(margolis_homology(&free, Generator::E1).is_empty());
        assert!(margolis_homology(&free, Generator::E2).is_empty());
        for n in 0..5 {
            assert!(margolis_homology(&m(n), Generator::E2).is_empty());
        }
        let want: GradedDims = [(0, 1), (7, 1)].into_iter().collect();
        assert_eq!(margolis_homology(&m(2), Generator::E1), want);
    }
}
