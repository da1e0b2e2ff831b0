use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn rref<F: Field>(f: &F, rows: &mut [Vec<F::Elem>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(p, r);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i == r || f.is_zero(&rows[i][c]) {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..cols {
                let t = f.mul(&factor, &rows[r][j]);
                rows[i][j] = f.sub(&rows[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_of_rows<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    rref(f, &mut rows, cols).len()
}

/// Kernel basis of the matrix with the given rows; one vector per free
/// column, with a 1 in that column.
pub fn kernel_basis<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>, cols: usize) -> Vec<Vec<F::Elem>> {
    let pivots = rref(f, &mut rows, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&rows[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// An incrementally built echelon basis for testing linear independence.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if f.is_zero(&w[*p]) {
                continue;
            }
            let factor = w[*p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` if it is independent of the current span; reports whether it was.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // keep earlier rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        self.rows.push((p, w));
        true
    }
}
