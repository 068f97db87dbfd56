use std::collections::BTreeMap;

use super::Decomposition;
use crate::field::Elem;
use crate::linalg::Matrix;
use crate::module::{Generator, Module};

/// Outcome of checking a decomposition certificate; empty `problems` means it holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verification {
    pub problems: Vec<String>,
}

impl Verification {
    pub fn holds(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Checks that the realization vectors form a degreewise basis of `m` and
/// that each summand's vectors satisfy exactly the canonical relations of
/// its shape (so each summand spans a submodule isomorphic to the shape).
pub fn verify_decomposition(m: &Module, d: &Decomposition) -> Verification {
    let f = m.params().field();
    let mut problems = Vec::new();
    let mut per_degree: BTreeMap<i64, Vec<Vec<Elem>>> = BTreeMap::new();

    for (si, s) in d.summands.iter().enumerate() {
        let Some((basis, acts)) = s.shape.canonical(m.params()) else {
            problems.push(format!("summand {si}: shape {} has no finite realization", s.shape));
            continue;
        };
        if basis.len() != s.vectors.len() {
            problems.push(format!("summand {si} ({}): {} vectors for a {}-dimensional shape", s.shape, s.vectors.len(), basis.len()));
            continue;
        }
        let mut bad = false;
        for (b, (deg, v)) in basis.iter().zip(&s.vectors) {
            if b.degree != *deg || v.len() != m.dim(*deg) {
                problems.push(format!("summand {si} ({}): vector for {} has degree {deg}, length {}", s.shape, b.label, v.len()));
                bad = true;
            }
        }
        if bad {
            continue;
        }
        // expected images from the canonical action table
        for g in Generator::BOTH {
            let k = m.params().degree(g);
            let mut expected: Vec<Vec<Elem>> =
                basis.iter().map(|b| vec![f.zero(); m.dim(b.degree + k)]).collect();
            for (ag, src, tgt, c) in &acts {
                if *ag == g {
                    let target = &s.vectors[*tgt].1;
                    for (e, t) in expected[*src].iter_mut().zip(target) {
                        *e = f.add(e, &f.mul(c, t));
                    }
                }
            }
            for (i, (deg, v)) in s.vectors.iter().enumerate() {
                let actual = m.action_or_zero(g, *deg).mul_vec(v);
                if actual != expected[i] {
                    problems.push(format!("summand {si} ({}): {g}·{} does not match the canonical relation", s.shape, basis[i].label));
                }
            }
        }
        for (deg, v) in &s.vectors {
            per_degree.entry(*deg).or_default().push(v.clone());
        }
    }

    for deg in m.degrees().chain(per_degree.keys().copied()).collect::<std::collections::BTreeSet<_>>() {
        let vs = per_degree.get(&deg).map_or(&[][..], Vec::as_slice);
        let n = m.dim(deg);
        if vs.len() != n {
            problems.push(format!("degree {deg}: {} realization vectors for dimension {n}", vs.len()));
        } else if n > 0 && Matrix::from_columns(f, n, vs).rank() != n {
            problems.push(format!("degree {deg}: realization vectors are linearly dependent"));
        }
    }
    Verification { problems }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::module::{counterexample_stage, random_basis_change, AlgebraParams};

    #[test]
    fn tampering_is_detected() {
        let p = AlgebraParams::default();
        let m = random_basis_change(&counterexample_stage(2, &p).unwrap(), 3);
        let d = decompose(&m).unwrap();
        assert!(verify_decomposition(&m, &d).holds());

        let mut zeroed = d.clone();
        let f = p.field();
        for e in zeroed.summands[0].vectors[0].1.iter_mut() {
            *e = f.zero();
        }
        assert!(!verify_decomposition(&m, &zeroed).holds());

        // swap the realizations of two same-degree bottoms from different summands
        let mut swapped = d.clone();
        let (a, b) = (1, 2);
        let va = swapped.summands[a].vectors[0].clone();
        let vb = swapped.summands[b].vectors[0].clone();
        assert_eq!(va.0, vb.0);
        swapped.summands[a].vectors[0] = vb;
        swapped.summands[b].vectors[0] = va;
        let v = verify_decomposition(&m, &swapped);
        assert!(!v.holds());
        assert!(v.problems.iter().any(|p| p.contains("canonical relation")));
    }
}
