use thiserror::Error;

use super::matrix::Matrix;
use crate::field::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("map has {rows} rows but the target subspace lives in dimension {ambient}")]
    DimensionMismatch { rows: usize, ambient: usize },
    #[error("quotient requested by a space that is not contained in the numerator")]
    NotContained,
}

/// A subspace of `field^ambient`, stored as the unique reduced
/// column-echelon basis (pivot entries 1, pivot rows cleared). Two
/// `Subspace` values are equal iff they are the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, ambient, 0), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Subspace {
        Self::row_span(&m.transpose())
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Elem>]) -> Subspace {
        Self::column_span(&Matrix::from_columns(field, ambient, vectors))
    }

    fn row_span(rows: &Matrix) -> Subspace {
        let ech = rows.echelon();
        let k = ech.pivots.len();
        let idx: Vec<usize> = (0..k).collect();
        let basis = ech.reduced.transpose().select_columns(&idx);
        Subspace { ambient: rows.cols(), basis, pivots: ech.pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis, one vector per column.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.columns()
    }

    /// Coordinate positions of the leading entries of the canonical basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.mul_vec(&coords);
        (back.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.vectors().iter().all(|v| other.contains(v))
    }

    /// Rows of the returned matrix span the linear functionals vanishing on
    /// this subspace, so its kernel is exactly this subspace.
    pub fn annihilator(&self) -> Matrix {
        let ker = kernel(&self.basis.transpose());
        ker.basis.transpose()
    }

    /// Standard basis indices completing this subspace to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Image of this subspace under `m`.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::column_span(&m.mul(&self.basis))
    }
}

/// Column space of `m` in canonical form.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::column_span(m)
}

/// Null space `{v : m v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let f = m.field();
    let ech = m.echelon();
    let n = m.cols();
    let mut vectors = Vec::new();
    for free in (0..n).filter(|c| !ech.pivots.contains(c)) {
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (r, &p) in ech.pivots.iter().enumerate() {
            v[p] = f.neg(ech.reduced.get(r, free));
        }
        vectors.push(v);
    }
    Subspace::span(f, n, &vectors)
}

/// `{v : m v ∈ u}`.
pub fn preimage_space(m: &Matrix, u: &Subspace) -> Result<Subspace, LinalgError> {
    if u.ambient() != m.rows() {
        return Err(LinalgError::DimensionMismatch { rows: m.rows(), ambient: u.ambient() });
    }
    if u.is_full() {
        return Ok(Subspace::full(m.field(), m.cols()));
    }
    Ok(kernel(&u.annihilator().mul(m)))
}

fn check_ambient(u: &Subspace, v: &Subspace) -> Result<(), LinalgError> {
    if u.ambient() != v.ambient() {
        return Err(LinalgError::AmbientMismatch { left: u.ambient(), right: v.ambient() });
    }
    Ok(())
}

pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace, LinalgError> {
    check_ambient(u, v)?;
    if u.is_full() {
        return Ok(v.clone());
    }
    if v.is_full() {
        return Ok(u.clone());
    }
    Ok(kernel(&u.annihilator().vstack(&v.annihilator())))
}

pub fn sum_space(u: &Subspace, v: &Subspace) -> Result<Subspace, LinalgError> {
    check_ambient(u, v)?;
    Ok(Subspace::column_span(&u.basis().hstack(v.basis())))
}

/// `dim u - dim v`, requiring `v ⊆ u`.
pub fn quotient_dim(u: &Subspace, v: &Subspace) -> Result<usize, LinalgError> {
    check_ambient(u, v)?;
    if !v.is_subspace_of(u) {
        return Err(LinalgError::NotContained);
    }
    Ok(u.dim() - v.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::Prime(2)
    }

    fn vecs(f: Field, vs: &[&[i64]]) -> Vec<Vec<Elem>> {
        vs.iter().map(|v| v.iter().map(|&x| f.from_i64(x)).collect()).collect()
    }

    #[test]
    fn kernel_examples() {
        let f = f2();
        assert_eq!(kernel(&Matrix::zeros(f, 2, 2)), Subspace::full(f, 2));
        assert_eq!(kernel(&Matrix::identity(f, 2)), Subspace::zero(f, 2));
        let k = kernel(&Matrix::from_i64(f, &[&[1, 1]]));
        assert_eq!(k, Subspace::span(f, 2, &vecs(f, &[&[1, 1]])));
    }

    #[test]
    fn image_examples() {
        let f = f2();
        assert_eq!(image(&Matrix::zeros(f, 2, 3)), Subspace::zero(f, 2));
        let m = Matrix::from_i64(f, &[&[1, 0], &[1, 0]]);
        assert_eq!(image(&m), Subspace::span(f, 2, &vecs(f, &[&[1, 1]])));
        assert_eq!(image(&Matrix::identity(f, 3)), Subspace::full(f, 3));
    }

    #[test]
    fn preimage_examples() {
        let f = f2();
        let m = Matrix::from_i64(f, &[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(preimage_space(&m, &Subspace::full(f, 2)).unwrap(), Subspace::full(f, 3));
        assert_eq!(preimage_space(&m, &Subspace::zero(f, 2)).unwrap(), kernel(&m));
        let id = Matrix::identity(f, 2);
        let u = Subspace::span(f, 2, &vecs(f, &[&[1, 0]]));
        assert_eq!(preimage_space(&id, &u).unwrap(), u);
        assert!(matches!(
            preimage_space(&m, &Subspace::zero(f, 3)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lattice_examples() {
        let f = f2();
        let u = Subspace::span(f, 3, &vecs(f, &[&[1, 0, 0], &[0, 1, 0]]));
        let v = Subspace::span(f, 3, &vecs(f, &[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(intersect(&u, &u).unwrap(), u);
        assert_eq!(intersect(&u, &v).unwrap(), Subspace::span(f, 3, &vecs(f, &[&[0, 1, 0]])));
        assert_eq!(sum_space(&u, &v).unwrap(), Subspace::full(f, 3));
        assert_eq!(quotient_dim(&Subspace::full(f, 3), &Subspace::zero(f, 3)).unwrap(), 3);
        assert_eq!(quotient_dim(&u, &v), Err(LinalgError::NotContained));
        assert!(intersect(&u, &Subspace::zero(f, 2)).is_err());
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let q = Field::Rationals;
        let a = Subspace::span(q, 3, &vecs(q, &[&[1, 2, 3], &[0, 1, 1]]));
        let b = Subspace::span(q, 3, &vecs(q, &[&[1, 3, 4], &[2, 5, 7], &[1, 1, 2]]));
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn coordinates_roundtrip() {
        let q = Field::Rationals;
        let a = Subspace::span(q, 3, &vecs(q, &[&[1, 2, 3], &[0, 1, 1]]));
        let v = vecs(q, &[&[2, 5, 7]]).remove(0);
        let c = a.coordinates(&v).unwrap();
        assert_eq!(a.basis().mul_vec(&c), v);
        assert!(a.coordinates(&vecs(q, &[&[0, 0, 1]])[0]).is_none());
    }
}
