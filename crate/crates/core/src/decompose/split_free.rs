use std::collections::BTreeMap;

use super::{DecomposeError, Summand};
use crate::field::Elem;
use crate::linalg::{kernel, Matrix, Subspace};
use crate::module::{FlashShape, Generator, GradedDims, GradedMap, Module, Variant};

/// A splitting `M = F ⊕ C` of a variant-A module into a free part `F` and
/// a complement `C` on which `e1 e2` acts as zero.
#[derive(Debug, Clone)]
pub struct FreeSplitting {
    /// Number of free generators in each degree.
    pub free_ranks: GradedDims,
    /// Generators of `F`, as vectors of `M`.
    pub generators: Vec<(i64, Vec<Elem>)>,
    /// The complement, as a module in its own basis.
    pub complement: Module,
    /// Inclusion `C -> M`.
    pub complement_inclusion: GradedMap,
}

impl FreeSplitting {
    /// The free summands with the realization `[g, e1 g, e2 g, e1 e2 g]`.
    pub(crate) fn free_summands(&self, m: &Module) -> Vec<Summand> {
        self.generators
            .iter()
            .map(|(d, g)| Summand { shape: FlashShape::free(*d), vectors: free_basis(m, *d, g) })
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tag {
    G,
    E1,
    E2,
    E1E2,
}

fn free_basis(m: &Module, d: i64, g: &[Elem]) -> Vec<(i64, Vec<Elem>)> {
    let p = m.params();
    let (d1, d2) = (p.deg_e1(), p.deg_e2());
    let e1g = m.action_or_zero(Generator::E1, d).mul_vec(g);
    let e2g = m.action_or_zero(Generator::E2, d).mul_vec(g);
    let e1e2g = m.action_or_zero(Generator::E1, d + d2).mul_vec(&e2g);
    vec![(d, g.to_vec()), (d + d1, e1g), (d + d2, e2g), (d + d1 + d2, e1e2g)]
}

/// Splits off the free summands of a variant-A module.
///
/// Generators are chosen where the composite `e1 e2` has independent
/// images. The complement is the kernel of a module retraction `M -> F`
/// built from functionals `λ_g` dual to the `e1 e2 g` (and vanishing on
/// the rest of `F` in that degree).
pub fn split_free(m: &Module) -> Result<FreeSplitting, DecomposeError> {
    let p = m.params();
    if p.variant() != Variant::A {
        return Err(DecomposeError::NeedsVariantA);
    }
    let violations = m.validate();
    if !violations.is_empty() {
        return Err(DecomposeError::Invalid(violations));
    }
    let f = p.field();
    let (d1, d2) = (p.deg_e1(), p.deg_e2());
    let top = d1 + d2;

    let mut generators = Vec::new();
    let mut free_ranks = GradedDims::new();
    for d in m.degrees().collect::<Vec<_>>() {
        let c = m.composite(Generator::E1, Generator::E2, d);
        // pivot columns of c have independent images
        let pivots = c.echelon().pivots;
        for &i in &pivots {
            generators.push((d, m.unit(d, i)));
        }
        free_ranks.set(d, pivots.len());
    }

    // the tagged basis of F, grouped by degree
    let mut f_basis: BTreeMap<i64, Vec<(usize, Tag, Vec<Elem>)>> = BTreeMap::new();
    for (gi, (d, g)) in generators.iter().enumerate() {
        for ((deg, v), tag) in free_basis(m, *d, g).into_iter().zip([Tag::G, Tag::E1, Tag::E2, Tag::E1E2]) {
            f_basis.entry(deg).or_default().push((gi, tag, v));
        }
    }

    // λ_g: row of the inverse of [F-basis | standard complement] in degree d_g + |e1| + |e2|
    let mut lambda: Vec<Vec<Elem>> = Vec::with_capacity(generators.len());
    let mut duals: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (e, items) in &f_basis {
        let n = m.dim(*e);
        let cols: Vec<Vec<Elem>> = items.iter().map(|(_, _, v)| v.clone()).collect();
        let span = Subspace::span(f, n, &cols);
        debug_assert_eq!(span.dim(), cols.len(), "free basis is independent");
        let mut all = cols;
        all.extend(span.complement_indices().into_iter().map(|i| m.unit(*e, i)));
        duals.insert(*e, Matrix::from_columns(f, n, &all).inverse().expect("basis of the degree"));
    }
    for (gi, (d, _)) in generators.iter().enumerate() {
        let e = d + top;
        let pos = f_basis[&e].iter().position(|(i, t, _)| *i == gi && *t == Tag::E1E2).expect("tag present");
        lambda.push(duals[&e].row(pos).to_vec());
    }

    // retraction rows ρ, one per F-basis vector, acting on M in that vector's degree
    let sigma = p.sigma();
    let row_times = |l: &[Elem], a: &Matrix| -> Vec<Elem> {
        (0..a.cols()).map(|c| (0..a.rows()).fold(f.zero(), |acc, r| f.add(&acc, &f.mul(&l[r], a.get(r, c))))).collect()
    };
    let mut complement_parts: BTreeMap<i64, Subspace> = BTreeMap::new();
    for d in m.degrees() {
        let n = m.dim(d);
        let rows: Vec<Vec<Elem>> = f_basis
            .get(&d)
            .map(|items| {
                items
                    .iter()
                    .map(|(gi, tag, _)| {
                        let l = &lambda[*gi];
                        match tag {
                            Tag::G => row_times(l, &m.composite(Generator::E1, Generator::E2, d)),
                            Tag::E1 => row_times(l, &m.action_or_zero(Generator::E2, d)).iter().map(|x| f.mul(&sigma, x)).collect(),
                            Tag::E2 => row_times(l, &m.action_or_zero(Generator::E1, d)),
                            Tag::E1E2 => l.clone(),
                        }
                    })
                    .collect()
            })
            .unwrap_or_default();
        let part = if rows.is_empty() { Subspace::full(f, n) } else { kernel(&Matrix::from_rows(f, n, rows)) };
        complement_parts.insert(d, part);
    }
    let (complement, complement_inclusion) = m.submodule(&complement_parts)?;
    Ok(FreeSplitting { free_ranks, generators, complement, complement_inclusion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::module::{direct_sum, make_flash, make_free, random_basis_change, shift, AlgebraParams};

    fn pa() -> AlgebraParams {
        AlgebraParams::default().with_variant(Variant::A)
    }

    #[test]
    fn free_module_has_zero_complement() {
        let s = split_free(&make_free(2, &pa()).unwrap()).unwrap();
        assert_eq!(s.free_ranks, [(2, 1)].into_iter().collect());
        assert!(s.complement.is_zero());
    }

    #[test]
    fn flash_has_no_free_part() {
        let m = make_flash(FlashShape::m(2), &pa()).unwrap();
        let s = split_free(&m).unwrap();
        assert!(s.free_ranks.is_empty());
        assert_eq!(s.complement.dims(), m.dims());
    }

    #[test]
    fn scrambled_mixture_over_f5() {
        let p = AlgebraParams::new(Field::Prime(5), 2, 5, Variant::A).unwrap();
        let parts = vec![
            make_free(0, &p).unwrap(),
            make_free(2, &p).unwrap(),
            make_free(2, &p).unwrap(),
            shift(&make_flash(FlashShape::finite(2, true, true, 0), &p).unwrap(), 2),
        ];
        let m = random_basis_change(&direct_sum(&p, &parts).unwrap(), 11);
        let s = split_free(&m).unwrap();
        assert_eq!(s.free_ranks, [(0, 1), (2, 2)].into_iter().collect());
        assert_eq!(s.complement.total_dim(), 5);
        for d in s.complement.degrees() {
            assert!(s.complement.composite(Generator::E1, Generator::E2, d).is_zero());
        }
        assert!(s.complement.reinterpret(Variant::B).is_ok());
    }

    #[test]
    fn rejects_variant_b() {
        let m = make_flash(FlashShape::m(0), &AlgebraParams::default()).unwrap();
        assert!(matches!(split_free(&m), Err(DecomposeError::NeedsVariantA)));
    }
}
