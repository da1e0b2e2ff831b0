use alloc::vec;
use alloc::vec::Vec;

use super::{charpoly, poly, Matrix, Vector};
use crate::error::{Error, Result};
use crate::field::Field;

/// `P` with `P A P^-1 = [[0, -det A], [1, tr A]]` for a nonscalar 2x2 `A`.
///
/// Uses the first of `e1, e2, e1 + e2` that is not an eigenvector.
pub fn companion_similarity_2x2<F: Field>(a: &Matrix<F>) -> Result<Matrix<F>> {
    if a.n() != 2 {
        return Err(Error::SizeMismatch(a.n(), 2));
    }
    if a.is_scalar() {
        return Err(Error::ScalarInput);
    }
    let f = a.field();
    let (o, z) = (f.one(), f.zero());
    let candidates = [
        vec![o.clone(), z.clone()],
        vec![z, o.clone()],
        vec![o.clone(), o],
    ];
    for v in candidates {
        let av = a.mul_vec(&v);
        let q = Matrix::from_columns(f.clone(), &[v, av])?;
        if let Ok(p) = q.inverse() {
            return Ok(p);
        }
    }
    // A nonscalar 2x2 matrix cannot have all three as eigenvectors.
    unreachable!("nonscalar matrix with e1, e2, e1+e2 all eigenvectors")
}

/// `P` with `P A P^-1 = diag(spectrum)`.
///
/// The spectrum must be the full list of eigenvalues with multiplicity and
/// `A` must be diagonalizable; eigenvectors come from kernel bases of
/// `A - lambda I`, assigned to the positions of `lambda` in order.
pub fn diagonalize_known_spectrum<F: Field>(
    a: &Matrix<F>,
    spectrum: &[F::Elem],
) -> Result<Matrix<F>> {
    let f = a.field();
    let n = a.n();
    if spectrum.len() != n {
        return Err(Error::SizeMismatch(spectrum.len(), n));
    }
    if charpoly(a) != poly::from_roots(f, spectrum) {
        return Err(Error::SpectrumMismatch);
    }
    let mut cols: Vec<Option<Vector<F>>> = vec![None; n];
    for (i, lambda) in spectrum.iter().enumerate() {
        if cols[i].is_some() {
            continue;
        }
        let positions: Vec<usize> = (i..n).filter(|&j| spectrum[j] == *lambda).collect();
        let basis = a.sub_scalar(lambda).kernel();
        if basis.len() != positions.len() {
            return Err(Error::SpectrumMismatch);
        }
        for (pos, v) in positions.into_iter().zip(basis) {
            cols[pos] = Some(v);
        }
    }
    let cols: Vec<Vector<F>> = cols.into_iter().map(Option::unwrap).collect();
    Matrix::from_columns(f.clone(), &cols)?.inverse()
}

/// The permutation matrix `P` with `P_{i, order[i]} = 1`, so that
/// `P diag(d) P^-1 = diag(d[order[0]], d[order[1]], ...)`.
pub fn permutation_matrix<F: Field>(field: &F, order: &[usize]) -> Matrix<F> {
    let n = order.len();
    let mut p = Matrix::zero(field.clone(), n);
    for (i, &j) in order.iter().enumerate() {
        p.set(i, j, field.one());
    }
    p
}

/// `order` with `from[order[i]] == to[i]`, if `to` is a rearrangement of `from`.
pub fn match_permutation<E: PartialEq>(from: &[E], to: &[E]) -> Option<Vec<usize>> {
    if from.len() != to.len() {
        return None;
    }
    let mut used = vec![false; from.len()];
    to.iter()
        .map(|t| {
            let j = (0..from.len()).find(|&j| !used[j] && from[j] == *t)?;
            used[j] = true;
            Some(j)
        })
        .collect()
}

/// Permutation `P` with `P diag(d) P^-1 = diag(target)`.
pub fn permutation_similarity<F: Field>(
    field: &F,
    d: &[F::Elem],
    target: &[F::Elem],
) -> Result<Matrix<F>> {
    let order = match_permutation(d, target).ok_or(Error::SpectrumMismatch)?;
    Ok(permutation_matrix(field, &order))
}
