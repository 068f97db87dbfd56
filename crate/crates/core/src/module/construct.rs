use std::collections::BTreeMap;

use super::{AlgebraParams, FlashKind, FlashShape, Generator, GradedDims, Module, ModuleError, Variant};
use crate::linalg::Matrix;

/// The canonical module of a finite flash shape (or a free generator over
/// variant A), with labels `x_i`, `y_i` (`y-1` for a left top).
pub fn make_flash(shape: FlashShape, params: &AlgebraParams) -> Result<Module, ModuleError> {
    match shape.kind {
        FlashKind::RightInfinite { .. } => return Err(ModuleError::InfiniteShape),
        FlashKind::FreeGenerator if params.variant() != Variant::A => return Err(ModuleError::FreeNeedsVariantA),
        _ => {}
    }
    let (basis, acts) = shape.canonical(params).expect("finite shape");
    Module::from_basis(params.clone(), &basis, &acts)
}

/// The free module of rank one on a generator of degree `gen_degree`.
pub fn make_free(gen_degree: i64, params: &AlgebraParams) -> Result<Module, ModuleError> {
    make_flash(FlashShape::free(gen_degree), params)
}

/// Block-diagonal sum. When there is more than one summand, labels get a
/// `_k` suffix naming the summand they came from.
pub fn direct_sum(params: &AlgebraParams, summands: &[Module]) -> Result<Module, ModuleError> {
    if summands.iter().any(|m| m.params() != params) {
        return Err(ModuleError::MismatchedParams);
    }
    if summands.len() == 1 {
        return Ok(summands[0].clone());
    }
    let f = params.field();
    let mut dims = GradedDims::new();
    for m in summands {
        for (d, n) in m.dims().iter() {
            dims.add(d, n);
        }
    }
    let labelled = summands.iter().all(|m| m.labels().is_some() || m.is_zero());
    let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut maps: [BTreeMap<i64, Matrix>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for (gi, g) in Generator::BOTH.into_iter().enumerate() {
        let k = params.degree(g);
        for (d, n) in dims.iter() {
            maps[gi].insert(d, Matrix::zeros(f, dims.get(d + k), n));
        }
    }
    // running offsets per degree
    let mut offset: BTreeMap<i64, usize> = BTreeMap::new();
    for (idx, m) in summands.iter().enumerate() {
        for (gi, g) in Generator::BOTH.into_iter().enumerate() {
            let k = params.degree(g);
            for (d, _) in m.dims().iter() {
                let a = m.action_or_zero(g, d);
                let (r0, c0) = (offset.get(&(d + k)).copied().unwrap_or(0), offset.get(&d).copied().unwrap_or(0));
                let target = maps[gi].get_mut(&d).expect("degree in support");
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        target.set(r0 + r, c0 + c, a.get(r, c).clone());
                    }
                }
            }
        }
        for (d, n) in m.dims().iter() {
            if labelled {
                let ls = labels.entry(d).or_default();
                for i in 0..n {
                    ls.push(format!("{}_{idx}", m.label(d, i).unwrap_or("v")));
                }
            }
            *offset.entry(d).or_insert(0) += n;
        }
    }
    let [e1, e2] = maps;
    Module::from_parts(params.clone(), dims, e1, e2, labelled.then_some(labels))
}

/// Translates every degree by `by`.
pub fn shift(m: &Module, by: i64) -> Module {
    let (e1, e2) = m.raw_actions();
    let mv = |maps: &BTreeMap<i64, Matrix>| maps.iter().map(|(d, a)| (d + by, a.clone())).collect();
    let labels = m.labels().map(|l| l.iter().map(|(d, v)| (d + by, v.clone())).collect());
    Module::from_parts(m.params().clone(), m.dims().shifted(by), mv(e1), mv(e2), labels)
        .expect("shift preserves shapes")
}

/// The quotient of `m` by everything in degrees above `max_degree`.
pub fn truncate_above(m: &Module, max_degree: i64) -> Module {
    let dims: GradedDims = m.dims().iter().filter(|(d, _)| *d <= max_degree).collect();
    let (e1, e2) = m.raw_actions();
    let f = m.params().field();
    let cut = |maps: &BTreeMap<i64, Matrix>, k: i64| -> BTreeMap<i64, Matrix> {
        maps.iter()
            .filter(|(d, _)| **d <= max_degree)
            .map(|(d, a)| {
                let a = if d + k > max_degree { Matrix::zeros(f, 0, a.cols()) } else { a.clone() };
                (*d, a)
            })
            .collect()
    };
    let labels = m.labels().map(|l| l.iter().filter(|(d, _)| **d <= max_degree).map(|(d, v)| (*d, v.clone())).collect());
    Module::from_parts(
        m.params().clone(),
        dims,
        cut(e1, m.params().deg_e1()),
        cut(e2, m.params().deg_e2()),
        labels,
    )
    .expect("truncation preserves shapes")
}

/// `M(0) ⊕ M(1) ⊕ ... ⊕ M(n)`, every summand based at degree 0.
pub fn counterexample_stage(n: usize, params: &AlgebraParams) -> Result<Module, ModuleError> {
    let parts = (0..=n).map(|k| make_flash(FlashShape::m(k), params)).collect::<Result<Vec<_>, _>>()?;
    direct_sum(params, &parts)
}

/// A truncation of the right-infinite flash `L(∞, ε)` together with the
/// finite shapes the truncation actually realizes.
#[derive(Debug, Clone)]
pub struct TruncatedFlash {
    pub module: Module,
    pub realized: Vec<FlashShape>,
}

/// `L(∞, left_top)` based at degree 0, with all degrees above `max_degree` cut.
///
/// The result is a single flash `L(m, ε, 0)` whenever the last kept bottom
/// still has its connecting top; otherwise that bottom splits off as a simple.
pub fn truncated_infinite_flash(left_top: bool, max_degree: i64, params: &AlgebraParams) -> Result<TruncatedFlash, ModuleError> {
    let (d1, d2, g) = (params.deg_e1(), params.deg_e2(), params.gap());
    if max_degree < 0 {
        return Ok(TruncatedFlash { module: Module::zero(params.clone()), realized: Vec::new() });
    }
    let bottoms = (max_degree / g + 1) as usize;
    // enough bottoms that every kept degree is covered, then cut
    let full = make_flash(FlashShape::finite(bottoms, left_top, true, 0), params)?;
    let module = truncate_above(&full, max_degree);

    let connected = (0..bottoms.saturating_sub(1)).take_while(|&i| i as i64 * g + d2 <= max_degree).count();
    let mut realized = vec![FlashShape::finite(connected + 1, left_top && d1 <= max_degree, false, 0)];
    for i in connected + 1..bottoms {
        realized.push(FlashShape::simple(i as i64 * g));
    }
    Ok(TruncatedFlash { module, realized })
}
