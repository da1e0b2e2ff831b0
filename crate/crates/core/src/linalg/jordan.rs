use alloc::vec::Vec;

use super::{Echelon, Matrix, Vector};
use crate::error::{Error, Result};
use crate::field::Field;

/// Jordan data of a unipotent matrix: `transform * A * transform^-1 = form`.
#[derive(Clone, Debug)]
pub struct JordanData<F: Field> {
    /// Block sizes, nonincreasing.
    pub partition: Vec<usize>,
    pub transform: Matrix<F>,
    pub form: Matrix<F>,
}

/// Jordan form of a unipotent `A`, blocks largest first.
///
/// Chains are grown from the top of the kernel filtration of `N = A - I`
/// downwards; each chain `N^{j-1} v, ..., N v, v` becomes one block of columns.
pub fn unipotent_jordan<F: Field>(a: &Matrix<F>) -> Result<JordanData<F>> {
    let f = a.field().clone();
    let n = a.n();
    let nil = a.minus_identity();
    // kernels[j] = basis of ker N^j, until it is the whole space
    let mut kernels: Vec<Vec<Vector<F>>> = Vec::from([Vec::new()]);
    let mut power = Matrix::identity(f.clone(), n);
    while kernels.last().unwrap().len() < n {
        power = &power * &nil;
        let k = power.kernel();
        if k.len() == kernels.last().unwrap().len() {
            return Err(Error::NotUnipotent);
        }
        kernels.push(k);
    }
    let top = kernels.len() - 1;
    // (length, generator) in creation order
    let mut chains: Vec<(usize, Vector<F>)> = Vec::new();
    for j in (1..=top).rev() {
        let mut span = Echelon::new(f.clone());
        for v in &kernels[j - 1] {
            span.insert(v);
        }
        for (len, g) in &chains {
            let mut w = g.clone();
            for _ in 0..len - j {
                w = nil.mul_vec(&w);
            }
            span.insert(&w);
        }
        for v in &kernels[j] {
            if span.insert(v) {
                chains.push((j, v.clone()));
            }
        }
    }
    let mut cols: Vec<Vector<F>> = Vec::with_capacity(n);
    let mut partition = Vec::with_capacity(chains.len());
    for (len, g) in &chains {
        let mut chain = Vec::with_capacity(*len);
        let mut w = g.clone();
        for _ in 0..*len {
            chain.push(w.clone());
            w = nil.mul_vec(&w);
        }
        chain.reverse();
        cols.extend(chain);
        partition.push(*len);
    }
    let q = Matrix::from_columns(f.clone(), &cols)?;
    let transform = q.inverse()?;
    let blocks: Vec<Matrix<F>> = partition
        .iter()
        .map(|&s| Matrix::jordan_block(f.clone(), s, f.one()))
        .collect();
    let form = Matrix::block_diag(f, &blocks.iter().collect::<Vec<_>>());
    debug_assert_eq!(&(&transform * a) * &q, form);
    Ok(JordanData {
        partition,
        transform,
        form,
    })
}
