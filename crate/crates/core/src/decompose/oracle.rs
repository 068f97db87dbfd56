//! A decomposition oracle that shares no code path with the zigzag
//! reduction: it splits modules along Fitting decompositions of
//! endomorphisms and identifies the indecomposable leaves by explicit
//! isomorphisms from canonical flashes.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_space, DecomposeError, Decomposition, Summand};
use crate::field::{Elem, Field};
use crate::linalg::{image, kernel, Matrix};
use crate::module::{make_flash, FlashShape, Generator, GradedMap, Module, Variant};
use crate::operators::{radical, socle};

pub const DEFAULT_ORACLE_BOUND: usize = 12;

/// Beyond this many elements a hom space is sampled instead of enumerated.
const EXHAUSTIVE_LIMIT: u64 = 1 << 14;
const SAMPLES: usize = 512;

fn combine(f: Field, basis: &[GradedMap], coeffs: &[Elem]) -> GradedMap {
    let mut parts: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (phi, c) in basis.iter().zip(coeffs) {
        if f.is_zero(c) {
            continue;
        }
        for (d, x) in phi.parts() {
            let term = x.scale(c);
            parts.entry(*d).and_modify(|acc| *acc = acc.add(&term)).or_insert(term);
        }
    }
    // keep every degree present, even when all chosen coefficients vanish
    if let Some(first) = basis.first() {
        for (d, x) in first.parts() {
            parts.entry(*d).or_insert_with(|| Matrix::zeros(f, x.rows(), x.cols()));
        }
    }
    GradedMap::new(parts)
}

/// Looks for an element of the span of `basis` satisfying `pred`: every
/// element when the span is small enough, otherwise the basis itself and
/// a fixed number of seeded random combinations.
fn search(f: Field, basis: &[GradedMap], pred: impl Fn(&GradedMap) -> bool) -> Option<GradedMap> {
    let k = basis.len();
    let small = f.order().and_then(|q| q.checked_pow(k as u32)).filter(|&n| n <= EXHAUSTIVE_LIMIT);
    if let Some(count) = small {
        let q = f.order().expect("finite field");
        for mut idx in 1..count {
            let coeffs: Vec<Elem> = (0..k)
                .map(|_| {
                    let c = f.from_i64((idx % q) as i64);
                    idx /= q;
                    c
                })
                .collect();
            let phi = combine(f, basis, &coeffs);
            if pred(&phi) {
                return Some(phi);
            }
        }
        return None;
    }
    if let Some(phi) = basis.iter().find(|phi| pred(phi)) {
        return Some(phi.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
    (0..SAMPLES).find_map(|_| {
        let coeffs: Vec<Elem> = (0..k).map(|_| if rng.gen_bool(0.5) { f.random(&mut rng) } else { f.zero() }).collect();
        let phi = combine(f, basis, &coeffs);
        pred(&phi).then_some(phi)
    })
}

/// Per-degree image and kernel of `φ^N` for `N` at least every dimension.
fn fitting_parts(m: &Module, phi: &GradedMap) -> (BTreeMap<i64, crate::linalg::Subspace>, BTreeMap<i64, crate::linalg::Subspace>) {
    let n = m.dims().iter().map(|(_, n)| n).max().unwrap_or(0);
    let mut im = BTreeMap::new();
    let mut ker = BTreeMap::new();
    for (d, x) in phi.parts() {
        let p = x.pow(n);
        im.insert(*d, image(&p));
        ker.insert(*d, kernel(&p));
    }
    (im, ker)
}

fn is_nilpotent_or_invertible(m: &Module, phi: &GradedMap) -> bool {
    let (im, ker) = fitting_parts(m, phi);
    im.values().all(|s| s.is_zero()) || ker.values().all(|s| s.is_zero())
}

/// Decomposes `m` by recursive Fitting splitting. Independent of
/// [`super::decompose`]; intended as a cross-check on small modules.
pub fn idempotent_oracle(m: &Module, bound: usize) -> Result<Decomposition, DecomposeError> {
    if m.total_dim() > bound {
        return Err(DecomposeError::BoundExceeded { dim: m.total_dim(), bound });
    }
    let violations = m.validate();
    if !violations.is_empty() {
        return Err(DecomposeError::Invalid(violations));
    }
    Decomposition::from_summands(m, split(m)?)
}

fn split(m: &Module) -> Result<Vec<Summand>, DecomposeError> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let f = m.params().field();
    let ends = hom_space(m, m);
    let Some(phi) = search(f, &ends, |phi| !is_nilpotent_or_invertible(m, phi)) else {
        return Ok(vec![identify(m)?]);
    };
    let (im, ker) = fitting_parts(m, &phi);
    let mut out = Vec::new();
    for parts in [im, ker] {
        let (sub, inc) = m.submodule(&parts)?;
        for s in split(&sub)? {
            let vectors = s.vectors.into_iter().map(|(d, v)| (d, inc.part(d).expect("degree in support").mul_vec(&v))).collect();
            out.push(Summand { shape: s.shape, vectors });
        }
    }
    Ok(out)
}

/// Names an indecomposable module from its top and socle, then confirms
/// the name with an explicit isomorphism from the canonical flash.
fn identify(m: &Module) -> Result<Summand, DecomposeError> {
    let p = m.params();
    let (d1, d2, gap) = (p.deg_e1(), p.deg_e2(), p.gap());
    let free = p.variant() == Variant::A
        && m.degrees().any(|d| !m.composite(Generator::E1, Generator::E2, d).is_zero());
    let shape = if free {
        FlashShape::free(m.dims().min_degree().expect("nonzero"))
    } else {
        let rad = radical(m);
        let soc = socle(m);
        let top: Vec<(i64, usize)> =
            m.degrees().map(|d| (d, m.dim(d) - rad.part(d).dim())).filter(|(_, n)| *n > 0).collect();
        let bottoms: usize = top.iter().map(|(_, n)| n).sum();
        let shift = top.first().map(|(d, _)| *d).expect("nonzero module has a nonzero top");
        let lt = !soc.part(shift + d1).is_zero();
        let rt = !soc.part(shift + (bottoms as i64 - 1) * gap + d2).is_zero();
        FlashShape::finite(bottoms, lt, rt, shift)
    };
    let canon = make_flash(shape, p)?;
    if canon.dims() != m.dims() {
        return Err(DecomposeError::Unidentified(format!("dimensions {} do not match {shape}", m.dims())));
    }
    let invertible = |phi: &GradedMap| phi.parts().values().all(|x| x.inverse().is_some());
    let iso = search(p.field(), &hom_space(&canon, m), invertible)
        .ok_or_else(|| DecomposeError::Unidentified(format!("no isomorphism from {shape}")))?;

    let (basis, _) = shape.canonical(p).expect("finite shape");
    let mut seen: BTreeMap<i64, usize> = BTreeMap::new();
    let vectors = basis
        .iter()
        .map(|b| {
            let i = seen.entry(b.degree).or_insert(0);
            let v = iso.part(b.degree).expect("degree in support").column(*i);
            *i += 1;
            (b.degree, v)
        })
        .collect();
    Ok(Summand { shape, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{decompose, verify_decomposition, Multiset};
    use crate::module::{direct_sum, make_free, random_basis_change, random_variant_b_module, AlgebraParams};

    #[test]
    fn single_flash() {
        let p = AlgebraParams::default();
        let m = make_flash(FlashShape::m(1), &p).unwrap();
        let d = idempotent_oracle(&m, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(d.multiset(), [FlashShape::m(1)].into_iter().collect::<Multiset>());
        assert!(verify_decomposition(&m, &d).holds());
    }

    #[test]
    fn scrambled_sum_with_free_part() {
        let p = AlgebraParams::default().with_variant(Variant::A);
        let parts = [make_free(0, &p).unwrap(), make_flash(FlashShape::finite(2, true, false, 1), &p).unwrap()];
        let m = random_basis_change(&direct_sum(&p, &parts).unwrap(), 5);
        let d = idempotent_oracle(&m, DEFAULT_ORACLE_BOUND).unwrap();
        assert!(verify_decomposition(&m, &d).holds());
        assert_eq!(d.multiset(), decompose(&m).unwrap().multiset());
    }

    #[test]
    fn bound_is_enforced() {
        let p = AlgebraParams::default();
        let m = crate::module::counterexample_stage(3, &p).unwrap();
        assert!(matches!(idempotent_oracle(&m, 6), Err(DecomposeError::BoundExceeded { .. })));
    }

    #[test]
    fn agrees_on_random_modules() {
        let p = AlgebraParams::default();
        for seed in 0..10 {
            let m = random_variant_b_module(&p, 6, 6, seed);
            let d = idempotent_oracle(&m, DEFAULT_ORACLE_BOUND).unwrap();
            assert!(verify_decomposition(&m, &d).holds());
            assert_eq!(d.multiset(), decompose(&m).unwrap().multiset());
        }
    }
}
