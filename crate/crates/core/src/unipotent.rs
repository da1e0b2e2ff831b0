//! Unipotent predicates, the commutator `[X, Y] = X Y X^-1 Y^-1`, and
//! certificates: ordered lists of commutator pairs of square-zero-minus-identity
//! matrices together with the target they multiply out to.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{product, Matrix};

/// Smallest `k` with `(A - I)^k = 0`, or `None` when `A` is not unipotent.
pub fn unipotent_index<F: Field>(a: &Matrix<F>) -> Option<u32> {
    let nil = a.minus_identity();
    let mut power = Matrix::identity(a.field().clone(), a.n());
    for k in 0..=a.n() as u32 {
        if power.is_zero() {
            return Some(k);
        }
        power = &power * &nil;
    }
    None
}

/// `(A - I)^k = 0` and `(A - I)^(k-1) != 0`.
pub fn is_unipotent_index<F: Field>(a: &Matrix<F>, k: u32) -> bool {
    k >= 1 && unipotent_index(a) == Some(k)
}

/// `A != I` and `(A - I)^2 = 0`.
pub fn is_u2<F: Field>(a: &Matrix<F>) -> bool {
    is_unipotent_index(a, 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum U2Tag {
    TypeIUpper,
    TypeILower,
    TypeII,
}

/// A 2x2 U2 matrix written as `[[1 + a, b], [c, 1 - a]]` with `a^2 + bc = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U2Type<F: Field> {
    pub tag: U2Tag,
    pub a: F::Elem,
    pub b: F::Elem,
    pub c: F::Elem,
}

pub fn classify_u2_sl2<F: Field>(m: &Matrix<F>) -> Result<U2Type<F>> {
    if m.n() != 2 || !is_u2(m) {
        return Err(Error::NotU2);
    }
    let f = m.field();
    let a = f.sub(m.get(0, 0), &f.one());
    let b = m.get(0, 1).clone();
    let c = m.get(1, 0).clone();
    let tag = if !f.is_zero(&a) {
        U2Tag::TypeII
    } else if f.is_zero(&c) {
        U2Tag::TypeIUpper
    } else {
        U2Tag::TypeILower
    };
    Ok(U2Type { tag, a, b, c })
}

pub fn commutator<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Result<Matrix<F>> {
    let xi = x.inverse()?;
    let yi = y.inverse()?;
    let xy = x.try_mul(y)?;
    Ok(&(&xy * &xi) * &yi)
}

/// One factor `[X, Y]` of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorPair<F: Field> {
    pub x: Matrix<F>,
    pub y: Matrix<F>,
}

impl<F: Field> CommutatorPair<F> {
    /// Checked constructor: both members must be U2.
    pub fn new(x: Matrix<F>, y: Matrix<F>) -> Result<Self> {
        if x.n() != y.n() {
            return Err(Error::SizeMismatch(x.n(), y.n()));
        }
        if !is_u2(&x) || !is_u2(&y) {
            return Err(Error::NotU2);
        }
        Ok(CommutatorPair { x, y })
    }

    pub fn value(&self) -> Result<Matrix<F>> {
        commutator(&self.x, &self.y)
    }

    pub fn conjugate(&self, p: &Matrix<F>, pinv: &Matrix<F>) -> Self {
        CommutatorPair {
            x: &(p * &self.x) * pinv,
            y: &(p * &self.y) * pinv,
        }
    }
}

/// A certificate: `target = prod [X_i, Y_i]` in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub target: Matrix<F>,
    pub pairs: Vec<CommutatorPair<F>>,
    pub route: Vec<String>,
}

impl<F: Field> Factorization<F> {
    /// The empty certificate for `I_n`.
    pub fn identity(field: F, n: usize) -> Self {
        Factorization {
            target: Matrix::identity(field, n),
            pairs: Vec::new(),
            route: alloc::vec![String::from("identity")],
        }
    }

    /// Builds a certificate whose target is the product of `pairs`.
    pub fn from_pairs(
        field: F,
        n: usize,
        pairs: Vec<CommutatorPair<F>>,
        route: impl Into<String>,
    ) -> Result<Self> {
        let mut target = Matrix::identity(field, n);
        for p in &pairs {
            target = target.try_mul(&p.value()?)?;
        }
        Ok(Factorization {
            target,
            pairs,
            route: alloc::vec![route.into()],
        })
    }

    pub fn field(&self) -> &F {
        self.target.field()
    }

    pub fn n(&self) -> usize {
        self.target.n()
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Prepends a route tag.
    pub fn tagged(mut self, tag: impl Into<String>) -> Self {
        self.route.insert(0, tag.into());
        self
    }

    /// Certificate for `target^-1`: pairs reversed, members swapped.
    pub fn invert(&self) -> Result<Self> {
        Ok(Factorization {
            target: self.target.inverse()?,
            pairs: self
                .pairs
                .iter()
                .rev()
                .map(|p| CommutatorPair {
                    x: p.y.clone(),
                    y: p.x.clone(),
                })
                .collect(),
            route: self.route.clone(),
        })
    }

    /// Certificate for `P target P^-1`.
    pub fn conjugate(&self, p: &Matrix<F>) -> Result<Self> {
        if p.n() != self.n() {
            return Err(Error::SizeMismatch(p.n(), self.n()));
        }
        let pinv = p.inverse()?;
        Ok(Factorization {
            target: &(p * &self.target) * &pinv,
            pairs: self.pairs.iter().map(|q| q.conjugate(p, &pinv)).collect(),
            route: self.route.clone(),
        })
    }

    /// Certificate for `target ⊕ other.target` with `max(r, s)` pairs.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let f = self.field();
        if f != other.field() {
            return Err(Error::FieldMismatch);
        }
        let (n1, n2) = (self.n(), other.n());
        let i1 = Matrix::identity(f.clone(), n1);
        let i2 = Matrix::identity(f.clone(), n2);
        let count = self.pairs.len().max(other.pairs.len());
        let mut pairs = Vec::with_capacity(count);
        for k in 0..count {
            let (x1, y1) = self.pairs.get(k).map_or((&i1, &i1), |p| (&p.x, &p.y));
            let (x2, y2) = other.pairs.get(k).map_or((&i2, &i2), |p| (&p.x, &p.y));
            let x = Matrix::block_diag(f.clone(), &[x1, x2]);
            let y = Matrix::block_diag(f.clone(), &[y1, y2]);
            if x.is_identity() && y.is_identity() {
                continue;
            }
            if !is_u2(&x) || !is_u2(&y) {
                return Err(Error::IllegalPair);
            }
            pairs.push(CommutatorPair { x, y });
        }
        let mut route: Vec<String> = self
            .route
            .iter()
            .chain(other.route.iter())
            .filter(|t| *t != "identity")
            .cloned()
            .collect();
        if route.is_empty() {
            route.push(String::from("identity"));
        }
        Ok(Factorization {
            target: Matrix::block_diag(f.clone(), &[&self.target, &other.target]),
            pairs,
            route,
        })
    }

    /// Block-diagonal sum of many certificates, in order.
    pub fn direct_sum_all(field: F, parts: &[Self]) -> Result<Self> {
        let mut iter = parts.iter();
        let Some(first) = iter.next() else {
            return Ok(Factorization::identity(field, 0));
        };
        iter.try_fold(first.clone(), |acc, p| acc.direct_sum(p))
    }

    /// Certificate for `self.target * other.target`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        let target = self.target.try_mul(&other.target)?;
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        let mut route = self.route.clone();
        route.extend(other.route.iter().cloned());
        Ok(Factorization {
            target,
            pairs,
            route,
        })
    }

    /// Product of certificates in order.
    pub fn concat(field: F, n: usize, parts: &[Self]) -> Result<Self> {
        parts
            .iter()
            .try_fold(Factorization::identity(field, n), |acc, p| acc.then(p))
            .map(|mut f| {
                if !parts.is_empty() {
                    f.route.remove(0);
                }
                f
            })
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub ok: bool,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.ok { "ok  " } else { "FAIL" }, c.message)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn describe_u2<F: Field>(name: &str, m: &Matrix<F>) -> Option<String> {
    match unipotent_index(m) {
        Some(2) => None,
        Some(k) => Some(format!("{name} not U2 (index {k})")),
        None => Some(format!("{name} not U2 (not unipotent)")),
    }
}

/// Recomputes everything a certificate claims; never fails, only reports.
pub fn verify<F: Field>(cert: &Factorization<F>) -> Report {
    let f = cert.field();
    let n = cert.n();
    let mut checks = Vec::new();
    let mut acc = Some(Matrix::identity(f.clone(), n));
    for (i, p) in cert.pairs.iter().enumerate() {
        let i = i + 1;
        if p.x.field() != f || p.y.field() != f || p.x.n() != n || p.y.n() != n {
            checks.push(Check {
                ok: false,
                message: format!("pair {i}: shape or field does not match the target"),
            });
            acc = None;
            continue;
        }
        for (name, m) in [("X", &p.x), ("Y", &p.y)] {
            let problem = describe_u2(name, m);
            checks.push(Check {
                ok: problem.is_none(),
                message: format!("pair {i}: {}", problem.unwrap_or_else(|| format!("{name} is U2"))),
            });
        }
        match p.value() {
            Ok(v) => {
                let det_ok = f.is_one(&v.det());
                checks.push(Check {
                    ok: det_ok,
                    message: format!(
                        "pair {i}: commutator determinant {}",
                        if det_ok { "is 1" } else { "is not 1" }
                    ),
                });
                acc = acc.map(|a| &a * &v);
            }
            Err(_) => {
                checks.push(Check {
                    ok: false,
                    message: format!("pair {i}: singular member"),
                });
                acc = None;
            }
        }
    }
    let product_ok = acc.is_some_and(|a| a == cert.target);
    checks.push(Check {
        ok: product_ok,
        message: String::from(if product_ok {
            "product equals target"
        } else {
            "product mismatch"
        }),
    });
    Report { checks }
}

/// `[X, Y] = X * (Y X^-1 Y^-1)`: at most two U2 factors per pair.
pub fn expand_to_u2_product<F: Field>(cert: &Factorization<F>) -> Result<Vec<Matrix<F>>> {
    let mut out = Vec::with_capacity(2 * cert.pairs.len());
    for p in &cert.pairs {
        let second = &(&p.y * &p.x.inverse()?) * &p.y.inverse()?;
        out.push(p.x.clone());
        out.push(second);
    }
    debug_assert_eq!(product(cert.field(), cert.n(), out.iter()), cert.target);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use alloc::vec;
    use proptest::prelude::*;

    fn gf(q: u64) -> GaloisField {
        GaloisField::of_order(q).unwrap()
    }

    fn m(f: &GaloisField, rows: &[&[i64]]) -> Matrix<GaloisField> {
        Matrix::from_i64(f.clone(), rows)
    }

    fn all_sl2(f: &GaloisField) -> Vec<Matrix<GaloisField>> {
        let q = f.order();
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        let mat = Matrix::new(f.clone(), 2, vec![a, b, c, d]).unwrap();
                        if f.is_one(&mat.det()) {
                            out.push(mat);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn index_examples() {
        let f = gf(5);
        assert!(is_unipotent_index(&Matrix::jordan_block(f.clone(), 2, 1), 2));
        assert!(!is_unipotent_index(&Matrix::identity(f.clone(), 3), 2));
        assert!(is_unipotent_index(&Matrix::identity(f.clone(), 3), 1));
        assert!(is_unipotent_index(&m(&f, &[&[2, 1], &[-1, 0]]), 2));
        assert!(is_unipotent_index(&Matrix::jordan_block(f.clone(), 3, 1), 3));
        assert_eq!(unipotent_index(&Matrix::diag(f, &[1, 2])), None);
    }

    #[test]
    fn classify_examples() {
        let f = gf(5);
        let t = classify_u2_sl2(&m(&f, &[&[1, 3], &[0, 1]])).unwrap();
        assert_eq!((t.tag, t.b), (U2Tag::TypeIUpper, 3));
        let t = classify_u2_sl2(&m(&f, &[&[1, 0], &[2, 1]])).unwrap();
        assert_eq!((t.tag, t.c), (U2Tag::TypeILower, 2));
        let t = classify_u2_sl2(&m(&f, &[&[2, 1], &[4, 0]])).unwrap();
        assert_eq!((t.tag, t.a, t.b, t.c), (U2Tag::TypeII, 1, 1, 4));
        assert_eq!(classify_u2_sl2(&Matrix::identity(f, 2)).unwrap_err(), Error::NotU2);
    }

    #[test]
    fn commutator_examples() {
        let f = gf(7);
        let i = Matrix::identity(f.clone(), 2);
        assert!(commutator(&i, &i).unwrap().is_identity());
        let x = m(&f, &[&[1, 1], &[0, 1]]);
        let y = m(&f, &[&[5, 5], &[1, 4]]);
        assert_eq!(commutator(&x, &y).unwrap(), m(&f, &[&[0, 6], &[1, 3]]));
        let x = m(&f, &[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]);
        let y = m(&f, &[&[1, 0, 0], &[-1, 1, 0], &[0, 0, 1]]);
        let expect = Matrix::block_diag(
            f.clone(),
            &[&Matrix::identity(f.clone(), 1), &Matrix::jordan_block(f.clone(), 2, 1)],
        );
        assert_eq!(commutator(&x, &y).unwrap(), expect);
        assert_eq!(
            commutator(&x, &Matrix::zero(f, 3)).unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn u2_census_matches_parameterization() {
        for q in [2, 3, 4, 5, 7] {
            let f = gf(q);
            let brute = all_sl2(&f).iter().filter(|a| is_u2(a)).count();
            // solutions of a^2 + bc = 0 other than (0, 0, 0)
            let mut param = 0;
            for a in f.iter() {
                for b in f.iter() {
                    for c in f.iter() {
                        if (a, b, c) != (0, 0, 0) && f.is_zero(&f.add(&f.square(&a), &f.mul(&b, &c))) {
                            param += 1;
                        }
                    }
                }
            }
            assert_eq!(brute, param, "q={q}");
            assert_eq!(brute as u64, q * q - 1, "q={q}");
        }
    }

    #[test]
    fn scalar_rigidity() {
        for q in [3, 5] {
            let f = gf(q);
            let u2: Vec<_> = all_sl2(&f).into_iter().filter(is_u2).collect();
            for x in &u2 {
                for y in &u2 {
                    let v = commutator(x, y).unwrap();
                    if let Some(c) = v.scalar_value() {
                        assert!(f.is_one(&c), "q={q} scalar {v:?}");
                    }
                }
            }
        }
    }

    fn sample_cert(f: &GaloisField) -> Factorization<GaloisField> {
        let x = m(f, &[&[1, 1], &[0, 1]]);
        let y = m(f, &[&[5, 5], &[1, 4]]);
        let p1 = CommutatorPair::new(x, y).unwrap();
        let p2 = CommutatorPair::new(m(f, &[&[1, 0], &[3, 1]]), m(f, &[&[2, 1], &[-1, 0]])).unwrap();
        Factorization::from_pairs(f.clone(), 2, vec![p1, p2], "sample").unwrap()
    }

    #[test]
    fn verify_detects_problems() {
        let f = gf(7);
        let cert = sample_cert(&f);
        assert!(verify(&cert).passed());
        let mut bad = cert.clone();
        bad.pairs[0].y = Matrix::identity(f.clone(), 2);
        let r = verify(&bad);
        assert!(!r.passed());
        assert!(r.failures().any(|c| c.message.contains("Y not U2 (index 1)")));
        let mut swapped = cert.clone();
        swapped.pairs.swap(0, 1);
        assert_ne!(swapped.pairs[0].value().unwrap(), swapped.pairs[1].value().unwrap());
        let r = verify(&swapped);
        assert!(r.failures().any(|c| c.message == "product mismatch"));
    }

    #[test]
    fn transports() {
        let f = gf(7);
        let cert = sample_cert(&f);
        let inv = cert.invert().unwrap();
        assert!(verify(&inv).passed());
        assert_eq!(inv.target, cert.target.inverse().unwrap());
        assert_eq!(inv.invert().unwrap(), cert);
        let p = m(&f, &[&[2, 1], &[1, 1]]);
        let c = cert.conjugate(&p).unwrap();
        assert!(verify(&c).passed());
        assert_eq!(c.conjugate(&p.inverse().unwrap()).unwrap(), cert);
        let single = Factorization::from_pairs(f.clone(), 2, cert.pairs[..1].to_vec(), "one").unwrap();
        let sum = cert.direct_sum(&single).unwrap();
        assert_eq!(sum.pair_count(), 2);
        assert!(verify(&sum).passed());
        assert_eq!(sum.target, Matrix::block_diag(f.clone(), &[&cert.target, &single.target]));
        let prod = cert.then(&single).unwrap();
        assert_eq!(prod.pair_count(), 3);
        assert!(verify(&prod).passed());
    }

    #[test]
    fn expansion_lengths() {
        let f = gf(7);
        let cert = sample_cert(&f);
        let factors = expand_to_u2_product(&cert).unwrap();
        assert_eq!(factors.len(), 4);
        assert!(factors.iter().all(is_u2));
        assert_eq!(product(&f, 2, factors.iter()), cert.target);
        assert!(expand_to_u2_product(&Factorization::identity(f, 2)).unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn random_pairs_have_det_one(a in 0u32..9, b in 0u32..9, s in 1u32..9, t in 0u32..9) {
            let f = gf(9);
            // conjugates of J2(1) by [[s, t], [a, b]] when invertible
            let p = Matrix::new(f.clone(), 2, vec![s, t, a, b]).unwrap();
            prop_assume!(!f.is_zero(&p.det()));
            let x = Matrix::jordan_block(f.clone(), 2, f.one()).conjugate_by(&p).unwrap();
            let y = Matrix::jordan_block(f.clone(), 2, f.one()).transpose();
            prop_assert!(is_u2(&x));
            let v = commutator(&x, &y).unwrap();
            prop_assert!(f.is_one(&v.det()));
            let second = &(&y * &x.inverse().unwrap()) * &y.inverse().unwrap();
            prop_assert!(is_u2(&second));
        }
    }
}
