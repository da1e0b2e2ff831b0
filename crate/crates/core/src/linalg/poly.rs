//! Dense polynomials with ascending coefficients, and the characteristic
//! and minimal polynomials of a matrix.

use alloc::vec;
use alloc::vec::Vec;

use super::{Echelon, Matrix};
use crate::field::Field;

/// Coefficients `c0 + c1 x + ...`, trailing zeros trimmed.
pub type Poly<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(f: &F, p: &mut Poly<F>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

/// `prod (x - r)` over `roots`.
pub fn from_roots<F: Field>(f: &F, roots: &[F::Elem]) -> Poly<F> {
    roots.iter().fold(vec![f.one()], |acc, r| {
        mul(f, &acc, &[f.neg(r), f.one()])
    })
}

/// `p(A)` by Horner's rule.
pub fn eval_matrix<F: Field>(p: &[F::Elem], a: &Matrix<F>) -> Matrix<F> {
    let f = a.field();
    let mut acc = Matrix::zero(f.clone(), a.n());
    for c in p.iter().rev() {
        acc = &acc * a;
        for i in 0..a.n() {
            let v = f.add(acc.get(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}

/// Characteristic polynomial `det(xI - A)`, monic of degree `n`.
///
/// Reduces to upper Hessenberg form by similarity, then expands along the
/// subdiagonal. Division-free apart from the pivots, so valid in every
/// characteristic.
pub fn charpoly<F: Field>(a: &Matrix<F>) -> Poly<F> {
    let f = a.field();
    let n = a.n();
    let mut h = a.rows();
    for m in 1..n.saturating_sub(1) {
        let c = m - 1;
        let Some(i) = (m..n).find(|&i| !f.is_zero(&h[i][c])) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = f.inv(&h[m][c]).expect("nonzero pivot");
        for i in m + 1..n {
            let u = f.mul(&h[i][c], &t);
            if f.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let s = f.mul(&u, &h[m][j]);
                h[i][j] = f.sub(&h[i][j], &s);
            }
            for row in h.iter_mut() {
                let s = f.mul(&u, &row[i]);
                row[m] = f.add(&row[m], &s);
            }
        }
    }
    // p[k] is the charpoly of the leading k x k block.
    let mut p: Vec<Poly<F>> = vec![vec![f.one()]];
    for m in 0..n {
        let mut next = mul(f, &p[m], &[f.neg(&h[m][m]), f.one()]);
        let mut t = f.one();
        for i in (0..m).rev() {
            t = f.mul(&t, &h[i + 1][i]);
            let coeff = f.mul(&h[i][m], &t);
            if f.is_zero(&coeff) {
                continue;
            }
            for (k, c) in p[i].iter().enumerate() {
                if k >= next.len() {
                    next.resize(k + 1, f.zero());
                }
                next[k] = f.sub(&next[k], &f.mul(&coeff, c));
            }
        }
        // degree m + 1, leading coefficient 1
        next.resize(m + 2, f.zero());
        p.push(next);
    }
    p.pop().unwrap()
}

/// Minimal polynomial: the first linear dependency among `I, A, A^2, ...`.
pub fn minpoly<F: Field>(a: &Matrix<F>) -> Poly<F> {
    let f = a.field();
    let n = a.n();
    let mut powers: Vec<Matrix<F>> = vec![Matrix::identity(f.clone(), n)];
    let mut span = Echelon::new(f.clone());
    span.insert(powers[0].entries());
    loop {
        let next = &powers[powers.len() - 1] * a;
        if span.contains(next.entries()) {
            let d = powers.len();
            // Solve sum c_i vec(A^i) = vec(A^d).
            let rows: Vec<Vec<F::Elem>> = (0..n * n)
                .map(|r| {
                    let mut row: Vec<F::Elem> =
                        powers.iter().map(|m| m.entries()[r].clone()).collect();
                    row.push(f.neg(&next.entries()[r]));
                    row
                })
                .collect();
            let kernel = super::kernel_basis(f, rows, d + 1);
            let v = kernel
                .into_iter()
                .find(|v| !f.is_zero(&v[d]))
                .expect("dependency with nonzero top coefficient");
            let scale = f.inv(&v[d]).unwrap();
            let mut out: Poly<F> = v.iter().map(|c| f.mul(c, &scale)).collect();
            // kernel vector encodes sum c_i A^i - c_d A^d = 0
            out[d] = f.one();
            for c in out.iter_mut().take(d) {
                *c = f.neg(c);
            }
            return out;
        }
        span.insert(next.entries());
        powers.push(next);
    }
}

/// Both polynomials at once.
pub fn char_min_poly<F: Field>(a: &Matrix<F>) -> (Poly<F>, Poly<F>) {
    (charpoly(a), minpoly(a))
}
