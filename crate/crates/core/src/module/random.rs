use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgebraParams, Generator, GradedDims, Module, Variant};
use crate::field::Field;
use crate::linalg::Matrix;

fn random_invertible(field: Field, n: usize, rng: &mut ChaCha8Rng) -> (Matrix, Matrix) {
    loop {
        let p = Matrix::random(field, n, n, rng);
        if let Some(inv) = p.inverse() {
            return (p, inv);
        }
    }
}

/// Conjugates every action by a seeded random change of basis in each
/// degree. The result is isomorphic to `m`; labels are dropped.
pub fn random_basis_change(m: &Module, seed: u64) -> Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = m.params().field();
    let changes: BTreeMap<i64, (Matrix, Matrix)> =
        m.dims().iter().map(|(d, n)| (d, random_invertible(f, n, &mut rng))).collect();
    let mut maps: [BTreeMap<i64, Matrix>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for (gi, g) in Generator::BOTH.into_iter().enumerate() {
        let k = m.params().degree(g);
        for (d, (p, _)) in &changes {
            let a = m.action_or_zero(g, *d);
            let conj = match changes.get(&(d + k)) {
                Some((_, q_inv)) => q_inv.mul(&a).mul(p),
                None => a,
            };
            maps[gi].insert(*d, conj);
        }
    }
    let [e1, e2] = maps;
    Module::from_parts(m.params().clone(), m.dims().clone(), e1, e2, None).expect("conjugation preserves shapes")
}

/// A seeded random variant-B module of total dimension between 1 and
/// `max_total_dim`, supported in degrees `0..=max_degree`.
///
/// Every variant-B module has its radical inside its socle, so it is the
/// same thing as a pair of maps from a complement of the socle into the
/// socle; this draws such a pair at random and then scrambles the basis.
/// Every isomorphism class within the bounds can occur.
pub fn random_variant_b_module(params: &AlgebraParams, max_total_dim: usize, max_degree: i64, seed: u64) -> Module {
    let params = params.with_variant(Variant::B);
    let f = params.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = rng.gen_range(1..=max_total_dim.max(1));
    // per degree: (bottoms, socle) counts; bottoms come first in the basis
    let mut roles: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for _ in 0..total {
        let d = rng.gen_range(0..=max_degree.max(0));
        let e = roles.entry(d).or_default();
        if rng.gen_bool(0.5) {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    let dims: GradedDims = roles.iter().map(|(d, (b, s))| (*d, b + s)).collect();
    let mut maps: [BTreeMap<i64, Matrix>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for (gi, g) in Generator::BOTH.into_iter().enumerate() {
        let k = params.degree(g);
        for (d, (bottoms, socle)) in &roles {
            let (tb, ts) = roles.get(&(d + k)).copied().unwrap_or((0, 0));
            let mut a = Matrix::zeros(f, tb + ts, bottoms + socle);
            for r in tb..tb + ts {
                for c in 0..*bottoms {
                    a.set(r, c, f.random(&mut rng));
                }
            }
            maps[gi].insert(*d, a);
        }
    }
    let [e1, e2] = maps;
    let m = Module::from_parts(params, dims, e1, e2, None).expect("shapes match the dimensions");
    random_basis_change(&m, rng.gen())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{make_flash, AlgebraParams, FlashShape};

    #[test]
    fn zero_module_stays_zero() {
        let z = Module::zero(AlgebraParams::default());
        assert!(random_basis_change(&z, 7).is_zero());
    }

    #[test]
    fn deterministic_and_valid() {
        let p = AlgebraParams::default();
        let m = crate::module::counterexample_stage(3, &p).unwrap();
        let a = random_basis_change(&m, 42);
        assert_eq!(a, random_basis_change(&m, 42));
        assert!(a.is_valid());
        assert_eq!(a.dims(), m.dims());
        assert!(a.labels().is_none());
        let one = make_flash(FlashShape::m(1), &p).unwrap();
        assert!(random_basis_change(&one, 1).is_valid());
    }

    #[test]
    fn random_b_modules_are_valid() {
        let p = AlgebraParams::default();
        for seed in 0..40 {
            let m = random_variant_b_module(&p, 6, 6, seed);
            assert!(m.is_valid());
            assert!((1..=6).contains(&m.total_dim()));
            assert_eq!(m, random_variant_b_module(&p, 6, 6, seed));
        }
    }
}
