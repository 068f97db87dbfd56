use std::collections::BTreeMap;

use crate::linalg::{kernel, Matrix};
use crate::module::{Generator, GradedMap, Module};

/// A basis of the degree-preserving module maps `src -> dst`.
///
/// Unknowns are the blocks `X_d : src_d -> dst_d`; the constraints are
/// `dst.g · X_d = X_{d+|g|} · src.g` for both generators and every degree.
/// Each returned map has a part for every degree in `src`'s support.
pub fn hom_space(src: &Module, dst: &Module) -> Vec<GradedMap> {
    let f = src.params().field();
    let mut offsets: BTreeMap<i64, usize> = BTreeMap::new();
    let mut n = 0;
    for d in src.degrees() {
        offsets.insert(d, n);
        n += dst.dim(d) * src.dim(d);
    }
    // entry (r, c) of X_d
    let var = |d: i64, r: usize, c: usize| offsets[&d] + r * src.dim(d) + c;

    let mut rows = Vec::new();
    for g in Generator::BOTH {
        let k = src.params().degree(g);
        for d in src.degrees() {
            let t = d + k;
            let (a_dst, a_src) = (dst.action_or_zero(g, d), src.action_or_zero(g, d));
            for r in 0..dst.dim(t) {
                for c in 0..src.dim(d) {
                    let mut row = vec![f.zero(); n];
                    for j in 0..dst.dim(d) {
                        let v = var(d, j, c);
                        row[v] = f.add(&row[v], a_dst.get(r, j));
                    }
                    if offsets.contains_key(&t) {
                        for j in 0..src.dim(t) {
                            let v = var(t, r, j);
                            row[v] = f.sub(&row[v], a_src.get(j, c));
                        }
                    }
                    if row.iter().any(|e| !f.is_zero(e)) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let system = if rows.is_empty() { Matrix::zeros(f, 0, n) } else { Matrix::from_rows(f, n, rows) };
    kernel(&system)
        .vectors()
        .into_iter()
        .map(|v| {
            GradedMap::new(
                src.degrees()
                    .map(|d| {
                        let mut x = Matrix::zeros(f, dst.dim(d), src.dim(d));
                        for r in 0..dst.dim(d) {
                            for c in 0..src.dim(d) {
                                x.set(r, c, v[var(d, r, c)].clone());
                            }
                        }
                        (d, x)
                    })
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{direct_sum, make_flash, AlgebraParams, FlashShape};

    fn flash(s: FlashShape) -> Module {
        make_flash(s, &AlgebraParams::default()).unwrap()
    }

    #[test]
    fn endomorphisms_of_flashes() {
        // every degree of M(1) is one-dimensional and connected to the rest
        assert_eq!(hom_space(&flash(FlashShape::m(1)), &flash(FlashShape::m(1))).len(), 1);
        let s = flash(FlashShape::simple(0));
        assert_eq!(hom_space(&s, &s).len(), 1);
        let p = AlgebraParams::default();
        let two = direct_sum(&p, &[s.clone(), s.clone()]).unwrap();
        assert_eq!(hom_space(&two, &two).len(), 4);
    }

    #[test]
    fn maps_between_different_flashes() {
        // the simple top y0 of M(0) receives the simple at degree 3
        let s3 = flash(FlashShape::simple(3));
        let m0 = flash(FlashShape::m(0));
        assert_eq!(hom_space(&s3, &m0).len(), 1);
        // but the simple cannot map onto the generator of M(0)
        assert_eq!(hom_space(&m0, &flash(FlashShape::simple(0))).len(), 1);
        assert_eq!(hom_space(&flash(FlashShape::simple(0)), &m0).len(), 0);
    }
}
