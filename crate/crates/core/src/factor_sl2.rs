//! Commutator factorizations in `SL_2`.
//!
//! A nonscalar `A` is a single commutator exactly when `tr A = 2 + alpha^2`
//! with `alpha != 0`; everything else is reduced to that case by splitting
//! into two factors with chosen spectra, or handled by an explicit identity
//! for `-I`.

use alloc::format;
use alloc::vec;

use crate::error::{Error, Result};
use crate::field::{square_ne_inverse_witness, sum_of_two_nonzero_squares, Field};
use crate::linalg::{companion_similarity_2x2, diagonalize_known_spectrum, minpoly, unipotent_jordan, Matrix};
use crate::oracle::{derived_subgroup, enumerate_group, DEFAULT_BUDGET};
use crate::spectrum_split::{spectrum_split, SpectrumPrescription};
use crate::unipotent::{CommutatorPair, Factorization};

fn require_sl2<F: Field>(a: &Matrix<F>) -> Result<()> {
    if a.n() != 2 {
        return Err(Error::SizeMismatch(a.n(), 2));
    }
    if !a.field().is_one(&a.det()) {
        return Err(Error::NotSpecialLinear);
    }
    Ok(())
}

/// `Some(alpha)` with `alpha != 0`, `alpha^2 = tr A - 2`, when `A` is a single
/// commutator; `None` otherwise.
pub fn single_commutator_test<F: Field>(a: &Matrix<F>) -> Result<Option<F::Elem>> {
    if a.n() != 2 {
        return Err(Error::SizeMismatch(a.n(), 2));
    }
    if a.is_scalar() {
        return Err(Error::ScalarInput);
    }
    let f = a.field();
    let d = f.sub(&a.trace(), &f.from_i64(2));
    if f.is_zero(&d) {
        return Ok(None);
    }
    Ok(f.sqrt(&d))
}

/// One pair for a nonscalar `A` with `tr A = 2 + alpha^2`, `alpha != 0`.
pub fn trace_construction<F: Field>(a: &Matrix<F>, alpha: &F::Elem) -> Result<Factorization<F>> {
    let f = a.field();
    let a2 = f.square(alpha);
    let t = f.add(&f.from_i64(2), &a2);
    if a.n() != 2 || a.is_scalar() || f.is_zero(alpha) || a.trace() != t || !f.is_one(&a.det()) {
        return Err(Error::PreconditionViolated(
            "nonscalar SL2 matrix with trace 2 + alpha^2, alpha nonzero".into(),
        ));
    }
    let p = companion_similarity_2x2(a)?;
    let ai = f.inv(alpha).expect("nonzero");
    let s = f.mul(&ai, &f.add(&f.add(&a2, alpha), &f.one()));
    let (o, z) = (f.one(), f.zero());
    let x = Matrix::new(f.clone(), 2, vec![o.clone(), a2, z, o.clone()])?;
    let y = Matrix::new(
        f.clone(),
        2,
        vec![
            f.sub(&o, &s),
            f.neg(&f.mul(&f.mul(&s, &s), alpha)),
            ai,
            f.add(&o, &s),
        ],
    )?;
    let pair = CommutatorPair::new(x, y)?;
    let tag = format!("trace(alpha={})", f.token(alpha));
    let cert = Factorization::from_pairs(f.clone(), 2, vec![pair], tag)?;
    let out = cert.conjugate(&p.inverse()?)?;
    debug_assert_eq!(&out.target, a);
    Ok(out)
}

/// One pair for `diag(a, a^-1)` when `a` is a square other than `0, 1, -1`.
pub fn diag_commutator<F: Field>(field: &F, a: &F::Elem) -> Result<Factorization<F>> {
    let f = field;
    if f.is_zero(a) || f.is_one(a) || f.is_one(&f.neg(a)) {
        return Err(Error::DegenerateValue);
    }
    let b = f.sqrt(a).ok_or(Error::NotASquare)?;
    let alpha = f.sub(&b, &f.inv(&b).expect("nonzero"));
    let d = Matrix::diag(f.clone(), &[a.clone(), f.inv(a).expect("nonzero")]);
    Ok(trace_construction(&d, &alpha)?.tagged(format!("diag_square(a={})", f.token(a))))
}

/// Certificate for `-I_2`.
pub fn neg_identity<F: Field>(field: &F) -> Result<Factorization<F>> {
    let f = field;
    if f.characteristic() == 2 {
        return Ok(Factorization::identity(f.clone(), 2));
    }
    let q = f.size();
    if q == Some(2) {
        return Err(Error::UnsupportedFieldSize(2));
    }
    let minus_one = f.neg(&f.one());
    let small = matches!(q, Some(3 | 5));
    if let (Some(a), false) = (f.sqrt(&minus_one), small) {
        let b = square_ne_inverse_witness(f)?;
        let ab = f.mul(&a, &f.inv(&b).expect("nonzero"));
        let first = diag_commutator(f, &f.square(&b))?;
        let second = diag_commutator(f, &f.square(&ab))?;
        let cert = first.then(&second)?;
        return Ok(cert.tagged(format!("neg_identity_square(a={},b={})", f.token(&a), f.token(&b))));
    }
    if let Some((a, b)) = sum_of_two_nonzero_squares(f, &minus_one) {
        let two = f.from_i64(2);
        let alpha = f.mul(&two, &a);
        let beta = f.mul(&two, &b);
        let al2 = f.square(&alpha);
        let low = f.sub(&f.mul(&two, &al2), &f.one());
        let m1 = Matrix::new(f.clone(), 2, vec![two.clone(), f.one(), low.clone(), al2.clone()])?;
        let m2 = Matrix::new(f.clone(), 2, vec![f.neg(&al2), f.one(), low, f.neg(&two)])?;
        debug_assert_eq!((&m1 * &m2).scalar_value(), Some(minus_one));
        let cert = trace_construction(&m1, &alpha)?.then(&trace_construction(&m2, &beta)?)?;
        return Ok(cert.tagged(format!("neg_identity_two_squares(a={},b={})", f.token(&a), f.token(&b))));
    }
    let cert = if q == Some(5) {
        // -I = J2(-1) J2(1)
        let j_minus = Matrix::jordan_block(f.clone(), 2, minus_one.clone());
        let j_plus = Matrix::jordan_block(f.clone(), 2, f.one());
        trace_construction(&j_minus, &f.one())?.then(&factor_sl2(&j_plus)?)?
    } else {
        // -I = diag(b^2, b^-2) (-diag(b^2, b^-2))^-1
        let b = square_ne_inverse_witness(f)?;
        let b2 = f.square(&b);
        let d = Matrix::diag(f.clone(), &[b2.clone(), f.inv(&b2).expect("nonzero")]);
        diag_commutator(f, &b2)?.then(&factor_sl2(&d.neg())?.invert()?)?
    };
    Ok(cert.tagged("neg_identity_three"))
}

/// Split a nonscalar non-single `A` into two factors, each a single commutator.
fn two_commutators<F: Field>(a: &Matrix<F>) -> Result<Factorization<F>> {
    let f = a.field();
    if f.size() == Some(5) {
        return f5_split(a);
    }
    let b = square_ne_inverse_witness(f)?;
    let b2 = f.square(&b);
    let spectrum = vec![b2.clone(), f.inv(&b2).expect("nonzero")];
    let p = SpectrumPrescription::new(spectrum.clone(), spectrum.clone());
    let parts = spectrum_split(a, &p)?;
    let mut certs = vec![];
    for part in [&parts.b, &parts.c] {
        let q = diagonalize_known_spectrum(part, &spectrum)?;
        certs.push(diag_commutator(f, &b2)?.conjugate(&q.inverse()?)?);
    }
    let cert = certs[0].then(&certs[1])?;
    debug_assert_eq!(&cert.target, a);
    Ok(cert.tagged(format!("sl2_split(b={})", f.token(&b))).tagged(p.tag(f, parts.backtracks)))
}

/// `GF(5)`: split with both spectra `{-1, -1}`.
fn f5_split<F: Field>(a: &Matrix<F>) -> Result<Factorization<F>> {
    let f = a.field();
    let minus_one = f.neg(&f.one());
    let spectrum = vec![minus_one.clone(), minus_one.clone()];
    let p = SpectrumPrescription::new(spectrum.clone(), spectrum);
    let parts = spectrum_split(a, &p)?;
    let tag = p.tag(f, parts.backtracks);
    let nonscalar = |m: &Matrix<F>| minpoly(m).len() == 3;
    if nonscalar(&parts.b) && nonscalar(&parts.c) {
        // both similar to J2(-1): trace -2 = 2 + 1^2
        let cert = trace_construction(&parts.b, &f.one())?.then(&trace_construction(&parts.c, &f.one())?)?;
        return Ok(cert.tagged("f5_split(both)").tagged(tag));
    }
    // One part is -I, so A is unipotent: A = Q^-1 J2(1) Q with J2(1) = D^2.
    let jd = unipotent_jordan(a)?;
    let d = Matrix::from_i64(f.clone(), &[&[-1, 2], &[0, -1]]);
    let single = trace_construction(&d, &f.one())?;
    let cert = single.then(&single)?.conjugate(&jd.transform.inverse()?)?;
    debug_assert_eq!(&cert.target, a);
    Ok(cert.tagged("f5_split(square)"))
}

/// Membership in the derived subgroup of `SL_2(F)` for `|F| <= 3`.
fn in_small_derived_subgroup<F: Field>(a: &Matrix<F>) -> Result<bool> {
    let t = enumerate_group(a.field(), 2, DEFAULT_BUDGET)?;
    let id = t.id_of(a).ok_or(Error::NotSpecialLinear)?;
    Ok(derived_subgroup(&t).contains(&id))
}

/// Dispatcher for `SL_2`.
pub fn factor_sl2<F: Field>(a: &Matrix<F>) -> Result<Factorization<F>> {
    require_sl2(a)?;
    let f = a.field();
    let small = f.size().filter(|&q| q <= 3);
    if let Some(q) = small {
        if !in_small_derived_subgroup(a)? {
            return Err(Error::OutsideDerivedSubgroup);
        }
        let cert = factor_sl2_routes(a)?;
        debug_assert!((cert.pair_count() as u64) < q);
        return Ok(cert.tagged(format!("small_field_derived(q={q})")));
    }
    factor_sl2_routes(a)
}

fn factor_sl2_routes<F: Field>(a: &Matrix<F>) -> Result<Factorization<F>> {
    let f = a.field();
    if let Some(c) = a.scalar_value() {
        if f.is_one(&c) {
            return Ok(Factorization::identity(f.clone(), 2));
        }
        // det 1 and scalar: c = -1, characteristic not 2
        return neg_identity(f);
    }
    if let Some(alpha) = single_commutator_test(a)? {
        return trace_construction(a, &alpha);
    }
    match f.size() {
        Some(q) if q <= 3 => Err(Error::OutsideDerivedSubgroup),
        _ => two_commutators(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaloisField, Rationals};
    use crate::unipotent::{classify_u2_sl2, verify, U2Tag};
    use alloc::vec::Vec;

    fn gf(q: u64) -> GaloisField {
        GaloisField::of_order(q).unwrap()
    }

    fn all_sl2(f: &GaloisField) -> Vec<Matrix<GaloisField>> {
        let t = enumerate_group(f, 2, DEFAULT_BUDGET).unwrap();
        (0..t.order()).map(|i| t.element(i)).collect()
    }

    #[test]
    fn single_test_examples() {
        let f = gf(7);
        let a = Matrix::from_i64(f.clone(), &[&[0, 6], &[1, 3]]);
        assert_eq!(single_commutator_test(&a).unwrap(), Some(1));
        let j = Matrix::jordan_block(f.clone(), 2, 1);
        assert_eq!(single_commutator_test(&j).unwrap(), None);
        let f5 = gf(5);
        let jm = Matrix::jordan_block(f5.clone(), 2, 4);
        assert_eq!(single_commutator_test(&jm).unwrap(), Some(1));
        assert_eq!(
            single_commutator_test(&Matrix::identity(f5, 2)).unwrap_err(),
            Error::ScalarInput
        );
    }

    #[test]
    fn trace_construction_examples() {
        let f = gf(7);
        let a = Matrix::from_i64(f.clone(), &[&[0, 6], &[1, 3]]);
        let cert = trace_construction(&a, &1).unwrap();
        assert_eq!(cert.pairs[0].x, Matrix::from_i64(f.clone(), &[&[1, 1], &[0, 1]]));
        assert_eq!(cert.pairs[0].y, Matrix::from_i64(f.clone(), &[&[5, 5], &[1, 4]]));
        assert_eq!(cert.route, vec!["trace(alpha=1)"]);
        let f2 = gf(2);
        let a = Matrix::from_i64(f2.clone(), &[&[0, 1], &[1, 1]]);
        assert!(verify(&trace_construction(&a, &1).unwrap()).passed());
        assert!(matches!(
            trace_construction(&a, &0),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn y_is_triangular_iff_alpha_root_of_cubic() {
        for q in [4, 7, 9] {
            let f = gf(q);
            for alpha in f.iter().filter(|a| *a != 0) {
                let t = f.add(&f.from_i64(2), &f.square(&alpha));
                let a = Matrix::new(f.clone(), 2, vec![0, f.neg(&f.one()), f.one(), t]).unwrap();
                let cert = trace_construction(&a, &alpha).unwrap();
                // undo the (trivial) companion conjugation
                assert_eq!(cert.target, a);
                let x = classify_u2_sl2(&cert.pairs[0].x).unwrap();
                let y = classify_u2_sl2(&cert.pairs[0].y).unwrap();
                assert_ne!(x.tag, U2Tag::TypeII);
                let cubic = f.add(&f.add(&f.square(&alpha), &alpha), &f.one());
                assert_eq!(y.tag != U2Tag::TypeII, f.is_zero(&cubic), "q={q} alpha={alpha}");
            }
        }
    }

    #[test]
    fn diag_examples() {
        let f = gf(7);
        let cert = diag_commutator(&f, &2).unwrap();
        assert_eq!(cert.target, Matrix::diag(f.clone(), &[2, 4]));
        assert!(verify(&cert).passed());
        let f5 = gf(5);
        // 4 = -1 here, so diag(4, 4^-1) = -I is excluded
        assert_eq!(diag_commutator(&f5, &4).unwrap_err(), Error::DegenerateValue);
        let f9 = gf(9);
        let a = f9.square(&f9.from_coeffs(&[1, 1]).unwrap());
        assert!(verify(&diag_commutator(&f9, &a).unwrap()).passed());
        assert_eq!(diag_commutator(&f5, &2).unwrap_err(), Error::NotASquare);
        assert_eq!(diag_commutator(&f5, &1).unwrap_err(), Error::DegenerateValue);
    }

    #[test]
    fn neg_identity_counts() {
        for (q, count) in [(3, 2), (4, 0), (5, 3), (7, 2), (9, 2), (11, 2), (13, 2), (25, 2)] {
            let f = gf(q);
            let cert = neg_identity(&f).unwrap();
            assert!(verify(&cert).passed(), "q={q}");
            assert_eq!(cert.pair_count(), count, "q={q} {:?}", cert.route);
        }
        let q = Rationals;
        let cert = neg_identity(&q).unwrap();
        assert!(verify(&cert).passed());
        assert_eq!(cert.pair_count(), 3);
    }

    #[test]
    fn gf3_neg_identity_matrices() {
        let f = gf(3);
        let cert = neg_identity(&f).unwrap();
        let first = cert.pairs[0].value().unwrap();
        assert_eq!(first, Matrix::from_i64(f.clone(), &[&[2, 1], &[1, 1]]));
    }

    #[test]
    fn exhaustive_bounds() {
        for (q, bound) in [(4, 2), (5, 3), (7, 2), (8, 2), (9, 2)] {
            let f = gf(q);
            for a in all_sl2(&f) {
                let cert = factor_sl2(&a).unwrap();
                assert!(verify(&cert).passed(), "q={q} {a:?}");
                assert!(cert.pair_count() <= bound, "q={q} {a:?} {:?}", cert.route);
            }
        }
    }

    #[test]
    fn small_fields() {
        for q in [2, 3] {
            let f = gf(q);
            let t = enumerate_group(&f, 2, DEFAULT_BUDGET).unwrap();
            let d = derived_subgroup(&t);
            for id in 0..t.order() {
                let a = t.element(id);
                match factor_sl2(&a) {
                    Ok(cert) => {
                        assert!(d.contains(&id));
                        assert!(verify(&cert).passed());
                        assert!((cert.pair_count() as u64) < q);
                    }
                    Err(e) => {
                        assert_eq!(e, Error::OutsideDerivedSubgroup);
                        assert!(!d.contains(&id));
                    }
                }
            }
        }
        let f = gf(2);
        assert_eq!(
            factor_sl2(&Matrix::jordan_block(f, 2, 1)).unwrap_err(),
            Error::OutsideDerivedSubgroup
        );
    }

    #[test]
    fn f5_unipotent_route() {
        let f = gf(5);
        let cert = factor_sl2(&Matrix::jordan_block(f, 2, 1)).unwrap();
        assert_eq!(cert.pair_count(), 2);
        assert!(verify(&cert).passed());
    }

    #[test]
    fn rationals() {
        let q = Rationals;
        let d = Matrix::diag(q, &[q.ratio(4, 1), q.ratio(1, 4)]);
        let cert = factor_sl2(&d).unwrap();
        assert_eq!(cert.pair_count(), 1);
        assert!(verify(&cert).passed());
        let a = Matrix::from_i64(q, &[&[2, 1], &[1, 1]]);
        let cert = factor_sl2(&a).unwrap();
        assert!(verify(&cert).passed());
        assert!(cert.pair_count() <= 2);
    }

    #[test]
    fn not_special_linear() {
        let f = gf(7);
        assert_eq!(
            factor_sl2(&Matrix::diag(f, &[2, 2])).unwrap_err(),
            Error::NotSpecialLinear
        );
    }
}
