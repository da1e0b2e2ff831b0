use super::*;
use crate::field::{GaloisField, Rationals};
use proptest::prelude::*;

fn gf(q: u64) -> GaloisField {
    GaloisField::of_order(q).unwrap()
}

fn random_matrix(f: &GaloisField, n: usize, seed: &[u32]) -> Matrix<GaloisField> {
    let q = f.order();
    let data = (0..n * n).map(|i| seed[i % seed.len()].wrapping_mul(i as u32 + 7) % q).collect();
    Matrix::new(f.clone(), n, data).unwrap()
}

/// Leibniz expansion; independent of elimination.
fn leibniz_det<F: Field>(a: &Matrix<F>) -> F::Elem {
    let f = a.field();
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = f.zero();
    permute(&mut perm, 0, &mut |p| {
        let mut term = f.one();
        for (i, &j) in p.iter().enumerate() {
            term = f.mul(&term, a.get(i, j));
        }
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        if inversions % 2 == 1 {
            term = f.neg(&term);
        }
        total = f.add(&total, &term);
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

fn eval<F: Field>(f: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

#[test]
fn identity_and_inverse_basics() {
    let f = gf(7);
    let a = Matrix::from_i64(f.clone(), &[&[2, 3], &[1, 4]]);
    assert_eq!(a.det(), 5);
    let inv = a.inverse().unwrap();
    assert!((&a * &inv).is_identity());
    let s = Matrix::from_i64(f.clone(), &[&[1, 2], &[2, 4]]);
    assert_eq!(s.inverse().unwrap_err(), Error::Singular);
    assert_eq!(s.rank(), 1);
    assert_eq!(s.nullity(), 1);
    let k = s.kernel();
    assert_eq!(k.len(), 1);
    assert!(s.mul_vec(&k[0]).iter().all(|x| *x == 0));
}

#[test]
fn mismatched_operands_are_errors() {
    let a = Matrix::identity(gf(7), 2);
    let b = Matrix::identity(gf(7), 3);
    let c = Matrix::identity(gf(5), 2);
    assert_eq!(a.try_mul(&b).unwrap_err(), Error::SizeMismatch(2, 3));
    assert_eq!(a.try_mul(&c).unwrap_err(), Error::FieldMismatch);
    assert!(Matrix::new(gf(7), 2, vec![0; 3]).is_err());
}

#[test]
fn det_matches_leibniz() {
    for q in [2, 4, 7, 9] {
        let f = gf(q);
        for seed in 0..40u32 {
            let a = random_matrix(&f, 4, &[seed, seed * 3 + 1, seed ^ 5, 11]);
            assert_eq!(a.det(), leibniz_det(&a), "q={q} {a:?}");
        }
    }
}

#[test]
fn charpoly_matches_pointwise_determinant() {
    // Both sides are monic of degree n < q, so agreement at every point
    // of the field pins the polynomial.
    for q in [7u64, 8, 9, 11] {
        let f = gf(q);
        for n in 1..=5 {
            for seed in 0..15u32 {
                let a = random_matrix(&f, n, &[seed + 1, seed * 5 + 2, 3, seed ^ 9]);
                let p = charpoly(&a);
                assert_eq!(p.len(), n + 1);
                assert!(f.is_one(&p[n]));
                for t in f.iter() {
                    let lhs = eval(&f, &p, &t);
                    let m = Matrix::scalar(f.clone(), n, t).try_sub(&a).unwrap();
                    assert_eq!(lhs, leibniz_det(&m));
                }
            }
        }
    }
}

#[test]
fn charpoly_over_rationals() {
    let q = Rationals;
    let a = Matrix::from_i64(q, &[&[2, 1, 0], &[0, 3, 1], &[4, 0, 1]]);
    let p = charpoly(&a);
    // x^3 - 6x^2 + 11x - 10
    let expect: Vec<_> = [-10, 11, -6, 1].iter().map(|&v| q.from_i64(v)).collect();
    assert_eq!(p, expect);
}

#[test]
fn minpoly_examples() {
    let f = gf(5);
    assert_eq!(minpoly(&Matrix::identity(f.clone(), 3)), vec![4, 1]);
    let j = Matrix::jordan_block(f.clone(), 3, 1);
    // (x - 1)^3 = x^3 - 3x^2 + 3x - 1
    assert_eq!(minpoly(&j), vec![4, 3, 2, 1]);
    let d = Matrix::from_i64(f.clone(), &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
    // (x - 2)(x - 3) = x^2 - 5x + 6
    assert_eq!(minpoly(&d), vec![1, 0, 1]);
}

#[test]
fn jordan_of_block_sums() {
    let f = gf(7);
    let j = |s| Matrix::jordan_block(f.clone(), s, 1);
    let a = Matrix::block_diag(f.clone(), &[&j(1), &j(3), &j(2)]);
    let p = Matrix::from_i64(
        f.clone(),
        &[
            &[1, 2, 0, 0, 0, 1],
            &[0, 1, 3, 0, 0, 0],
            &[0, 0, 1, 4, 0, 0],
            &[0, 0, 0, 1, 5, 0],
            &[0, 0, 0, 0, 1, 6],
            &[2, 0, 0, 0, 0, 1],
        ],
    );
    let conj = a.conjugate_by(&p).unwrap();
    let data = unipotent_jordan(&conj).unwrap();
    assert_eq!(data.partition, vec![3, 2, 1]);
    assert_eq!(&(&data.transform * &conj) * &data.transform.inverse().unwrap(), data.form);
    assert_eq!(unipotent_jordan(&Matrix::diag(f.clone(), &[1, 2])).unwrap_err(), Error::NotUnipotent);
}

#[test]
fn companion_examples() {
    let f = gf(7);
    let b = Matrix::from_i64(f.clone(), &[&[0, -1], &[1, 3]]);
    assert!(companion_similarity_2x2(&b).unwrap().is_identity());
    let d = Matrix::from_i64(f.clone(), &[&[2, 0], &[0, 4]]);
    let p = companion_similarity_2x2(&d).unwrap();
    let c = d.conjugate_by(&p).unwrap();
    assert_eq!(c, Matrix::from_i64(f.clone(), &[&[0, -1], &[1, 6]]));
    assert_eq!(
        companion_similarity_2x2(&Matrix::identity(f, 2)).unwrap_err(),
        Error::ScalarInput
    );
}

#[test]
fn diagonalize_examples() {
    let f = gf(7);
    let a = Matrix::from_i64(f.clone(), &[&[4, 0], &[0, 2]]);
    let p = diagonalize_known_spectrum(&a, &[2, 4]).unwrap();
    assert_eq!(a.conjugate_by(&p).unwrap(), Matrix::diag(f.clone(), &[2, 4]));
    assert_eq!(
        diagonalize_known_spectrum(&a, &[2, 3]).unwrap_err(),
        Error::SpectrumMismatch
    );
    let j = Matrix::jordan_block(f.clone(), 2, 1);
    assert_eq!(
        diagonalize_known_spectrum(&j, &[1, 1]).unwrap_err(),
        Error::SpectrumMismatch
    );
    // repeated eigenvalues
    let b = Matrix::from_i64(f.clone(), &[&[1, 2, 0], &[0, -1, 0], &[0, 0, 1]]);
    let p = diagonalize_known_spectrum(&b, &[1, 6, 1]).unwrap();
    assert_eq!(
        b.conjugate_by(&p).unwrap(),
        Matrix::from_i64(f, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]])
    );
}

#[test]
fn permutation_reorders_diagonal() {
    let f = gf(11);
    let d = [2, 3, 5, 3];
    let target = [3, 5, 3, 2];
    let p = permutation_similarity(&f, &d, &target).unwrap();
    let m = Matrix::diag(f.clone(), &d).conjugate_by(&p).unwrap();
    assert_eq!(m, Matrix::diag(f.clone(), &target));
    assert!(permutation_similarity(&f, &d, &[1, 2, 3, 4]).is_err());
}

/// The strictly block upper triangular pattern with `B` on the first block
/// superdiagonal and `C` on the second.
fn pattern_even<F: Field>(f: &F, k: usize, b: &Matrix<F>, c: &Matrix<F>) -> Matrix<F> {
    let mut a = Matrix::zero(f.clone(), 2 * k);
    for i in 0..k {
        for (off, blk) in [(1, b), (2, c)] {
            if i + off < k {
                for r in 0..2 {
                    for s in 0..2 {
                        a.set(2 * i + r, 2 * (i + off) + s, blk.get(r, s).clone());
                    }
                }
            }
        }
    }
    a
}

/// `pattern_even` bordered by a last column holding `Cx` and `Bx` in its
/// last four rows above the corner.
fn pattern_odd<F: Field>(f: &F, l: usize, b: &Matrix<F>, c: &Matrix<F>, x: &[F::Elem]) -> Matrix<F> {
    let n = 2 * l + 1;
    let mut a = Matrix::zero(f.clone(), n);
    if l > 1 {
        let e = pattern_even(f, l, b, c);
        for i in 0..2 * l {
            for j in 0..2 * l {
                a.set(i, j, e.get(i, j).clone());
            }
        }
        let cx = c.mul_vec(x);
        a.set(2 * l - 4, n - 1, cx[0].clone());
        a.set(2 * l - 3, n - 1, cx[1].clone());
    }
    let bx = b.mul_vec(x);
    a.set(2 * l - 2, n - 1, bx[0].clone());
    a.set(2 * l - 1, n - 1, bx[1].clone());
    a
}

#[test]
fn block_power_patterns() {
    for q in [5, 7] {
        let f = gf(q);
        let b = Matrix::from_i64(f.clone(), &[&[-1, 1], &[0, 1]]);
        let c = Matrix::from_i64(f.clone(), &[&[0, 0], &[-1, 1]]);
        let x = vec![1, 0];
        for k in 2..=4 {
            let a = pattern_even(&f, k, &b, &c);
            assert!(a.pow(k as u64).is_zero());
            let top = a.pow(k as u64 - 1);
            let bk = b.pow(k as u64 - 1);
            for i in 0..2 * k {
                for j in 0..2 * k {
                    let expect = if i < 2 && j >= 2 * k - 2 { *bk.get(i, j + 2 - 2 * k) } else { 0 };
                    assert_eq!(*top.get(i, j), expect);
                }
            }
        }
        for l in 1..=4 {
            let a = pattern_odd(&f, l, &b, &c, &x);
            let n = 2 * l + 1;
            assert!(a.pow(l as u64 + 1).is_zero());
            let top = a.pow(l as u64);
            let corner = b.pow(l as u64).mul_vec(&x);
            for i in 0..n {
                for j in 0..n {
                    let expect = if j == n - 1 && i < 2 { corner[i] } else { 0 };
                    assert_eq!(*top.get(i, j), expect);
                }
            }
        }
    }
}

fn arb_matrix(q: u32, n: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..q, n * n)
}

proptest! {
    #[test]
    fn cayley_hamilton(data in arb_matrix(9, 4)) {
        let f = gf(9);
        let a = Matrix::new(f, 4, data).unwrap();
        prop_assert!(poly::eval_matrix(&charpoly(&a), &a).is_zero());
        let m = minpoly(&a);
        prop_assert!(poly::eval_matrix(&m, &a).is_zero());
        prop_assert!(m.len() <= 5);
    }

    #[test]
    fn det_is_multiplicative(x in arb_matrix(8, 3), y in arb_matrix(8, 3)) {
        let f = gf(8);
        let a = Matrix::new(f.clone(), 3, x).unwrap();
        let b = Matrix::new(f.clone(), 3, y).unwrap();
        prop_assert_eq!((&a * &b).det(), f.mul(&a.det(), &b.det()));
    }

    #[test]
    fn rank_nullity(data in arb_matrix(3, 4)) {
        let a = Matrix::new(gf(3), 4, data).unwrap();
        let k = a.kernel();
        prop_assert_eq!(a.rank() + k.len(), 4);
        for v in &k {
            prop_assert!(a.mul_vec(v).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn jordan_of_upper_unitriangular(data in arb_matrix(5, 5)) {
        let f = gf(5);
        let mut a = Matrix::identity(f.clone(), 5);
        for i in 0..5 {
            for j in i + 1..5 {
                a.set(i, j, data[i * 5 + j]);
            }
        }
        let jd = unipotent_jordan(&a).unwrap();
        prop_assert_eq!(jd.partition.iter().sum::<usize>(), 5);
        prop_assert_eq!(jd.partition.len(), a.minus_identity().nullity());
        prop_assert!(jd.partition.windows(2).all(|w| w[0] >= w[1]));
        let back = &(&jd.transform * &a) * &jd.transform.inverse().unwrap();
        prop_assert_eq!(back, jd.form);
    }
}
