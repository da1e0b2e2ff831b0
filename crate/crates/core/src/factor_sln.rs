//! Commutator factorizations in `SL_n` for `n > 2`, and the top-level
//! dispatcher for every size.
//!
//! Nonscalar matrices go through a prescribed-spectrum split `A = BC`: with
//! diagonalizable parts when the field has enough squares, with unipotent
//! parts otherwise. Scalar matrices are split into diagonal factors by hand.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::factor_sl2::{diag_commutator, factor_sl2, neg_identity};
use crate::field::{square_class_pairing, sum_of_two_nonzero_squares, Field};
use crate::linalg::{diagonalize_known_spectrum, permutation_matrix, unipotent_jordan, Matrix};
use crate::spectrum_split::{spectrum_split, SpectrumPrescription};
use crate::unipotent::{CommutatorPair, Factorization};

/// Field data that decides how many commutator pairs the dispatcher promises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundSelector {
    pub n: usize,
    pub characteristic: u64,
    /// `None` for infinite fields.
    pub size: Option<u64>,
    pub minus_one_square: bool,
    pub minus_one_two_squares: bool,
}

impl BoundSelector {
    pub fn for_field<F: Field>(field: &F, n: usize) -> Self {
        let minus_one = field.neg(&field.one());
        BoundSelector {
            n,
            characteristic: field.characteristic(),
            size: field.size(),
            minus_one_square: field.sqrt(&minus_one).is_some(),
            minus_one_two_squares: sum_of_two_nonzero_squares(field, &minus_one).is_some(),
        }
    }

    /// Maximum number of pairs in a certificate; `None` where nothing is promised
    /// (`n > 2` over fields with at most 3 elements).
    pub fn max_pairs(&self) -> Option<usize> {
        let small = self.size.filter(|&q| q <= 3);
        if self.n < 2 {
            return Some(0);
        }
        if self.n == 2 {
            // over GF(2) and GF(3) this covers the derived subgroup only
            if let Some(q) = small {
                return Some(q as usize - 1);
            }
            let square_route = self.minus_one_square && self.size != Some(5);
            let two = self.characteristic == 2 || square_route || self.minus_one_two_squares;
            return Some(if two { 2 } else { 3 });
        }
        if small.is_some() {
            return None;
        }
        let half = (self.n / 2) as u64;
        match self.size {
            Some(q) if self.characteristic == 2 && q >= 2 * half + 2 => Some(2),
            Some(q) if q >= 4 * half + 5 => Some(3),
            None => Some(3),
            Some(_) => Some(4),
        }
    }

    /// Each commutator of square-zero unipotents is a product of two of them.
    pub fn max_u2_factors(&self) -> Option<usize> {
        self.max_pairs().map(|p| 2 * p)
    }

    /// Short name of the case that produced the promise.
    pub fn case(&self) -> &'static str {
        let small = self.size.is_some_and(|q| q <= 3);
        let half = (self.n / 2) as u64;
        match (self.n, self.size) {
            (0 | 1, _) => "trivial",
            (2, _) if small => "sl2_derived_subgroup",
            (2, _) => "sl2",
            (_, _) if small => "unsupported",
            (_, Some(q)) if self.characteristic == 2 && q >= 2 * half + 2 => "char2_large",
            (_, Some(q)) if q >= 4 * half + 5 => "large_field",
            (_, None) => "large_field",
            _ => "general",
        }
    }
}

/// The 3x3 pair whose commutator is `[1] ⊕ J_2(1)`.
pub fn i_plus_j21<F: Field>(field: &F) -> Result<Factorization<F>> {
    let x = Matrix::from_i64(field.clone(), &[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]);
    let y = Matrix::from_i64(field.clone(), &[&[1, 0, 0], &[-1, 1, 0], &[0, 0, 1]]);
    Factorization::from_pairs(field.clone(), 3, vec![CommutatorPair::new(x, y)?], "i_plus_j21")
}

/// `I_before ⊕ [1] ⊕ J_2(1) ⊕ I_after` as one pair.
pub fn i_plus_j21_padded<F: Field>(field: &F, before: usize, after: usize) -> Result<Factorization<F>> {
    let mut parts = Vec::new();
    if before > 0 {
        parts.push(Factorization::identity(field.clone(), before));
    }
    parts.push(i_plus_j21(field)?);
    if after > 0 {
        parts.push(Factorization::identity(field.clone(), after));
    }
    Factorization::direct_sum_all(field.clone(), &parts)
}

/// The pair `(X_n, Y_n)` of direct sums of `J_2(1)` blocks, offset by one
/// position against each other.
pub fn jn1_pair_matrices<F: Field>(field: &F, n: usize) -> (Matrix<F>, Matrix<F>) {
    let one = Matrix::identity(field.clone(), 1);
    let j2 = Matrix::jordan_block(field.clone(), 2, field.one());
    let blocks = |lead: bool, count: usize, trail: bool| {
        let mut v: Vec<&Matrix<F>> = Vec::new();
        if lead {
            v.push(&one);
        }
        v.extend(core::iter::repeat_n(&j2, count));
        if trail {
            v.push(&one);
        }
        Matrix::block_diag(field.clone(), &v)
    };
    if n.is_multiple_of(2) {
        (blocks(true, (n - 2) / 2, true), blocks(false, n / 2, false))
    } else {
        (blocks(true, (n - 1) / 2, false), blocks(false, (n - 1) / 2, true))
    }
}

/// Two pairs whose product is exactly `J_n(1)`, `n > 2`.
///
/// `[X_n, Y_n]` has two Jordan blocks of sizes `ceil(n/2)` and `floor(n/2)`;
/// a second pair `I ⊕ J_2(1) ⊕ I` straddling the block boundary glues
/// them into a single block.
pub fn jn1_factor<F: Field>(field: &F, n: usize) -> Result<Factorization<F>> {
    if n <= 2 {
        return Err(Error::PreconditionViolated(format!("J_n(1) route needs n > 2, got {n}")));
    }
    let (x, y) = jn1_pair_matrices(field, n);
    let first = Factorization::from_pairs(field.clone(), n, vec![CommutatorPair::new(x, y)?], "jn1_split")?;
    let split = unipotent_jordan(&first.target)?;
    let (a, b) = (n.div_ceil(2), n / 2);
    if split.partition != [a, b] {
        return Err(Error::ConstructionFailed(0));
    }
    let first = first.conjugate(&split.transform)?;
    let glued = first.then(&i_plus_j21_padded(field, a - 2, b - 1)?)?;
    let whole = unipotent_jordan(&glued.target)?;
    if whole.partition != [n] {
        return Err(Error::ConstructionFailed(0));
    }
    let cert = glued.conjugate(&whole.transform)?;
    debug_assert_eq!(cert.target, Matrix::jordan_block(field.clone(), n, field.one()));
    Ok(cert.tagged(format!("jn1(n={n})")))
}

/// Certificate for a unipotent matrix, block by block on its Jordan form.
fn unipotent_cert<F: Field>(m: &Matrix<F>) -> Result<Factorization<F>> {
    let f = m.field();
    let jd = unipotent_jordan(m)?;
    let blocks = jd
        .partition
        .iter()
        .map(|&s| match s {
            1 => Ok(Factorization::identity(f.clone(), 1)),
            2 => factor_sl2(&Matrix::jordan_block(f.clone(), 2, f.one())),
            _ => jn1_factor(f, s),
        })
        .collect::<Result<Vec<_>>>()?;
    let cert = Factorization::direct_sum_all(f.clone(), &blocks)?;
    if cert.target != jd.form {
        return Err(Error::ConstructionFailed(0));
    }
    cert.conjugate(&jd.transform.inverse()?)
}

/// Certificate for a diagonal matrix whose entries split into `1`s and
/// inverse pairs `(e, e^-1)`, including `(-1, -1)`. Each pair becomes a
/// 2x2 block handled by the `SL_2` dispatcher.
fn diagonal_cert<F: Field>(field: &F, entries: &[F::Elem]) -> Result<Factorization<F>> {
    let n = entries.len();
    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        if field.is_one(&entries[i]) {
            order.push(i);
            blocks.push(Factorization::identity(field.clone(), 1));
            continue;
        }
        let inv = field.inv(&entries[i]).ok_or(Error::Singular)?;
        let j = (i + 1..n)
            .find(|&j| !used[j] && entries[j] == inv)
            .ok_or_else(|| Error::PreconditionViolated("diagonal entries do not pair up".into()))?;
        used[j] = true;
        order.extend([i, j]);
        blocks.push(factor_sl2(&Matrix::diag(field.clone(), &[entries[i].clone(), inv]))?);
    }
    let cert = Factorization::direct_sum_all(field.clone(), &blocks)?;
    cert.conjugate(&permutation_matrix(field, &order).inverse()?)
}

fn pow<F: Field>(f: &F, a: &F::Elem, e: i64) -> F::Elem {
    f.pow_i64(a, e).expect("nonzero base")
}

/// Certificate for `lambda I_n`; requires `lambda^n = 1`.
pub fn scalar_factor<F: Field>(field: &F, lambda: &F::Elem, n: usize) -> Result<Factorization<F>> {
    let f = field;
    if n < 2 {
        return Err(Error::PreconditionViolated(format!("scalar route needs n >= 2, got {n}")));
    }
    if !f.is_one(&f.pow(lambda, n as u64)) {
        return Err(Error::NotSpecialLinear);
    }
    if f.is_one(lambda) {
        return Ok(Factorization::identity(f.clone(), n));
    }
    if n == 2 {
        return factor_sl2(&Matrix::scalar(f.clone(), 2, lambda.clone()));
    }
    let cert = if n % 2 == 1 {
        scalar_odd(f, lambda, n)?
    } else if f.size() == Some(5) {
        scalar_f5(f, lambda, n)?
    } else if f.characteristic() != 2 && f.size().is_none_or(|q| q > 2 * n as u64 + 1) {
        scalar_large_field(f, lambda, n)?
    } else {
        scalar_even(f, lambda, n)?
    };
    debug_assert_eq!(cert.target, Matrix::scalar(f.clone(), n, lambda.clone()));
    Ok(cert)
}

/// Odd `n`: two diagonal factors whose entries are all powers of
/// `lambda = (lambda^((n+1)/2))^2`, hence squares, and never `-1`.
fn scalar_odd<F: Field>(f: &F, lambda: &F::Elem, n: usize) -> Result<Factorization<F>> {
    let k = (n / 2) as i64;
    let mut b = Vec::with_capacity(n);
    let mut c = Vec::with_capacity(n);
    for i in 1..=k {
        b.extend([pow(f, lambda, i), pow(f, lambda, -i)]);
        c.extend([pow(f, lambda, 1 - i), pow(f, lambda, 1 + i)]);
    }
    b.push(f.one());
    c.push(lambda.clone());
    let cert = diagonal_cert(f, &b)?.then(&diagonal_cert(f, &c)?)?;
    let root = pow(f, lambda, (n as i64 + 1) / 2);
    Ok(cert.tagged(format!("scalar_odd(b={})", f.token(&root))))
}

/// Even `n`: `B = ⊕ diag(l^(2i-1), l^(1-2i))`, `C = ⊕ diag(l^(2-2i), l^(2i))`.
/// The entries of `C` are squares, so `C` costs one pair unless `-1` occurs.
fn scalar_even<F: Field>(f: &F, lambda: &F::Elem, n: usize) -> Result<Factorization<F>> {
    let k = (n / 2) as i64;
    let mut b = Vec::with_capacity(n);
    let mut c = Vec::with_capacity(n);
    for i in 1..=k {
        b.extend([pow(f, lambda, 2 * i - 1), pow(f, lambda, 1 - 2 * i)]);
        c.extend([pow(f, lambda, 2 - 2 * i), pow(f, lambda, 2 * i)]);
    }
    let cert = diagonal_cert(f, &b)?.then(&diagonal_cert(f, &c)?)?;
    Ok(cert.tagged("scalar_even"))
}

/// Even `n`, more than `2n + 1` elements: shift both factors by
/// `D = diag(a^2, a^-2)` with `a^(2n) != 1`, which keeps every 2x2 block
/// away from `-I`.
fn scalar_large_field<F: Field>(f: &F, lambda: &F::Elem, n: usize) -> Result<Factorization<F>> {
    let a = f
        .scan()
        .filter(|a| !f.is_zero(a))
        .find(|a| !f.is_one(&f.pow(a, 2 * n as u64)))
        .ok_or(Error::FieldTooSmall(f.size().unwrap_or(0)))?;
    let a2 = f.square(&a);
    let a2i = f.inv(&a2).expect("nonzero");
    let k = (n / 2) as i64;
    let mut b = Vec::with_capacity(n);
    let mut c = Vec::with_capacity(n);
    for i in 1..=k {
        let s = pow(f, lambda, 2 * i - 1);
        b.extend([f.mul(&s, &a2), f.mul(&s, &a2i)]);
        let t = pow(f, lambda, 2 - 2 * i);
        c.extend([f.mul(&t, &a2i), f.mul(&t, &a2)]);
    }
    let cert = diagonal_cert(f, &b)?.then(&diagonal_cert(f, &c)?)?;
    Ok(cert.tagged(format!("scalar_large_field(a={})", f.token(&a))))
}

/// `GF(5)`, even `n`.
fn scalar_f5<F: Field>(f: &F, lambda: &F::Elem, n: usize) -> Result<Factorization<F>> {
    let minus_one = f.neg(&f.one());
    if *lambda == minus_one {
        let block = neg_identity(f)?;
        let cert = Factorization::direct_sum_all(f.clone(), &vec![block; n / 2])?;
        return Ok(cert.tagged("scalar_f5(lambda=-1)"));
    }
    // lambda is 2 or 3 = 2^-1; both have order 4, so 4 | n
    let two = f.from_i64(2);
    let block = two_i4_f5(f)?;
    let cert = Factorization::direct_sum_all(f.clone(), &vec![block; n / 4])?;
    let cert = if *lambda == two { cert } else { cert.invert()? };
    Ok(cert.tagged(format!("scalar_f5(lambda={})", f.token(lambda))))
}

/// `D` and `E` with `DE` similar to `diag(1, -1, 1, -1)` over `GF(5)`.
pub fn f5_sign_pair<F: Field>(f: &F) -> Result<(Factorization<F>, Factorization<F>)> {
    let j = Matrix::jordan_block(f.clone(), 2, f.neg(&f.one()));
    let e = i1_padded(f, &factor_sl2(&j)?)?;
    let d = e.conjugate(&permutation_matrix(f, &[0, 1, 3, 2]))?;
    Ok((d, e))
}

fn i1_padded<F: Field>(f: &F, c: &Factorization<F>) -> Result<Factorization<F>> {
    let one = Factorization::identity(f.clone(), 1);
    Factorization::direct_sum_all(f.clone(), &[one.clone(), c.clone(), one])
}

/// `2 I_4 = (B ⊕ B) C` over `GF(5)` with `B = diag(2, 3)`, `C = diag(1, -1, 1, -1)`.
fn two_i4_f5<F: Field>(f: &F) -> Result<Factorization<F>> {
    let b = factor_sl2(&Matrix::diag(f.clone(), &[f.from_i64(2), f.from_i64(3)]))?;
    let bb = b.direct_sum(&b)?;
    let (d, e) = f5_sign_pair(f)?;
    let de = d.then(&e)?;
    let signs = [1, -1, 1, -1].map(|v| f.from_i64(v));
    let q = diagonalize_known_spectrum(&de.target, &signs)?;
    bb.then(&de.conjugate(&q)?)
}

/// Inverse pairs of nonexceptional squares, if the field has `count` of them.
fn square_pairs<F: Field>(f: &F, count: usize) -> Option<Vec<(F::Elem, F::Elem)>> {
    if matches!(f.size(), Some(2 | 3 | 5)) {
        return None;
    }
    square_class_pairing(f).ok()?.take_pairs(count)
}

/// Certificate for a nonscalar `A` in `SL_n(F)`, `n > 2`, `|F| >= 4`.
pub fn nonscalar_factor<F: Field>(a: &Matrix<F>) -> Result<Factorization<F>> {
    let f = a.field();
    let n = a.n();
    if n <= 2 {
        return Err(Error::PreconditionViolated(format!("nonscalar route needs n > 2, got {n}")));
    }
    if let Some(q) = f.size().filter(|&q| q <= 3) {
        return Err(Error::UnsupportedFieldSize(q));
    }
    if !f.is_one(&a.det()) {
        return Err(Error::NotSpecialLinear);
    }
    if a.is_scalar() {
        return Err(Error::ScalarInput);
    }
    let cert = match square_pairs(f, n / 2) {
        Some(pairs) => split_diagonalizable(a, &pairs)?,
        None => split_unipotent(a)?,
    };
    debug_assert_eq!(&cert.target, a);
    Ok(cert)
}

/// Both factors get the spectrum `{1?, a_1, a_1^-1, ...}` of distinct squares,
/// so each is diagonalizable and one pair.
fn split_diagonalizable<F: Field>(a: &Matrix<F>, pairs: &[(F::Elem, F::Elem)]) -> Result<Factorization<F>> {
    let f = a.field();
    let mut spectrum = Vec::with_capacity(a.n());
    let mut blocks = Vec::new();
    if a.n() % 2 == 1 {
        spectrum.push(f.one());
        blocks.push(Factorization::identity(f.clone(), 1));
    }
    for (s, si) in pairs {
        spectrum.extend([s.clone(), si.clone()]);
        blocks.push(diag_commutator(f, s)?);
    }
    let diag = Factorization::direct_sum_all(f.clone(), &blocks)?;
    let p = SpectrumPrescription::new(spectrum.clone(), spectrum.clone());
    let parts = spectrum_split(a, &p)?;
    let mut certs = Vec::with_capacity(2);
    for part in [&parts.b, &parts.c] {
        let q = diagonalize_known_spectrum(part, &spectrum)?;
        certs.push(diag.conjugate(&q.inverse()?)?);
    }
    let cert = certs[0].then(&certs[1])?;
    let tag = format!("nonscalar_two(k={})", pairs.len());
    Ok(cert.tagged(p.tag(f, parts.backtracks)).tagged(tag))
}

/// Both factors unipotent; each costs at most two pairs.
fn split_unipotent<F: Field>(a: &Matrix<F>) -> Result<Factorization<F>> {
    let f = a.field();
    let ones = vec![f.one(); a.n()];
    let p = SpectrumPrescription::new(ones.clone(), ones);
    let parts = spectrum_split(a, &p)?;
    let cert = unipotent_cert(&parts.b)?.then(&unipotent_cert(&parts.c)?)?;
    Ok(cert.tagged(p.tag(f, parts.backtracks)).tagged("nonscalar_unipotent"))
}

/// Top-level dispatcher: any `A` with determinant 1.
///
/// The pair count is checked against [`BoundSelector::max_pairs`].
pub fn factor<F: Field>(a: &Matrix<F>) -> Result<Factorization<F>> {
    let f = a.field();
    let n = a.n();
    if !f.is_one(&a.det()) {
        return Err(Error::NotSpecialLinear);
    }
    let cert = match n {
        0 | 1 => Factorization::identity(f.clone(), n),
        2 => factor_sl2(a)?,
        _ => {
            if let Some(q) = f.size().filter(|&q| q <= 3) {
                return Err(Error::UnsupportedFieldSize(q));
            }
            match a.scalar_value() {
                Some(lambda) => scalar_factor(f, &lambda, n)?,
                None => nonscalar_factor(a)?,
            }
        }
    };
    if let Some(bound) = BoundSelector::for_field(f, n).max_pairs() {
        if cert.pair_count() > bound {
            return Err(Error::BoundExceeded {
                pairs: cert.pair_count(),
                bound,
            });
        }
    }
    debug_assert_eq!(&cert.target, a);
    Ok(cert)
}

/// Human-readable one-line summary of a certificate's route.
pub fn route_summary<F: Field>(cert: &Factorization<F>) -> String {
    cert.route.join(" > ")
}
