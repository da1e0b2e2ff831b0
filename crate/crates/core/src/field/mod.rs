//! Exact arithmetic over `GF(p)`, `GF(p^k)` and `Q`, plus the small
//! number-theoretic searches the factorization routes branch on.

mod galois;
mod rational;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

pub use galois::{builtin_modulus, is_prime, poly_is_irreducible, GaloisField, MAX_TABLE_ORDER};
pub use rational::Rationals;

use crate::error::{Error, Result};

/// A field whose elements are plain values; the field object carries the
/// context (modulus, tables) needed to operate on them.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// 0 for `Q`.
    fn characteristic(&self) -> u64;
    /// `None` for infinite fields.
    fn size(&self) -> Option<u64>;
    /// Every element exactly once, in the deterministic witness-search order.
    /// Finite fields use the canonical total order; the iterator is endless over `Q`.
    fn scan(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_>;
    /// Some `b` with `b^2 = a`: the first root in canonical order for finite
    /// fields, the nonnegative root over `Q`.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Text token: decimal residue, `(c0,c1,...)`, or `a/b`.
    fn token(&self, a: &Self::Elem) -> String;
    /// Field spec string: `GF(7)`, `GF(9;1,0,1)`, `Q`.
    fn describe(&self) -> String;

    fn is_ordered(&self) -> bool {
        false
    }

    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Signed power; `None` when `a = 0` and `e < 0`.
    fn pow_i64(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(&ai, e.unsigned_abs()))
        }
    }
}

/// Runtime choice between the supported fields.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Finite(GaloisField),
    Rational(Rationals),
}

/// Which constructor `make_field` should use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Prime,
    Extension,
    Rational,
}

/// Builds and validates a field descriptor.
pub fn make_field(kind: FieldKind, p: u64, k: u32, modulus: Option<&[u32]>) -> Result<AnyField> {
    match kind {
        FieldKind::Prime => Ok(AnyField::Finite(GaloisField::prime(p)?)),
        FieldKind::Extension => Ok(AnyField::Finite(GaloisField::extension(p, k, modulus)?)),
        FieldKind::Rational => Ok(AnyField::Rational(Rationals)),
    }
}

impl AnyField {
    pub fn describe(&self) -> String {
        match self {
            AnyField::Finite(f) => f.describe(),
            AnyField::Rational(q) => q.describe(),
        }
    }

    pub fn size(&self) -> Option<u64> {
        match self {
            AnyField::Finite(f) => f.size(),
            AnyField::Rational(_) => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            AnyField::Finite(f) => f.characteristic(),
            AnyField::Rational(_) => 0,
        }
    }
}

/// Binary and unary field operations for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Neg,
}

/// An element bundled with the field it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement<F: Field> {
    pub field: F,
    pub value: F::Elem,
}

impl<F: Field> FieldElement<F> {
    pub fn new(field: F, value: F::Elem) -> Self {
        FieldElement { field, value }
    }
}

impl<F: Field> fmt::Display for FieldElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.token(&self.value))
    }
}

/// Checked arithmetic on owned elements. Unary ops ignore `b`.
pub fn arith<F: Field>(
    a: &FieldElement<F>,
    b: &FieldElement<F>,
    op: ArithOp,
) -> Result<FieldElement<F>> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let value = match op {
        ArithOp::Add => f.add(&a.value, &b.value),
        ArithOp::Sub => f.sub(&a.value, &b.value),
        ArithOp::Mul => f.mul(&a.value, &b.value),
        ArithOp::Div => f.div(&a.value, &b.value).ok_or(Error::DivisionByZero)?,
        ArithOp::Inv => f.inv(&a.value).ok_or(Error::DivisionByZero)?,
        ArithOp::Neg => f.neg(&a.value),
    };
    Ok(FieldElement::new(f.clone(), value))
}

/// How many rationals the bounded searches over `Q` look at.
const RATIONAL_SCAN_LIMIT: usize = 4096;

/// Nonzero `a, b` with `a^2 + b^2 = target`, first hit in scan order.
///
/// Exhaustive over finite fields. Over an ordered field a negative target
/// has no such representation; nonnegative targets over `Q` get a bounded scan.
pub fn sum_of_two_nonzero_squares<F: Field>(
    field: &F,
    target: &F::Elem,
) -> Option<(F::Elem, F::Elem)> {
    if field.is_ordered() && field.is_negative(target) {
        return None;
    }
    let limit = if field.size().is_some() {
        usize::MAX
    } else {
        RATIONAL_SCAN_LIMIT
    };
    field
        .scan()
        .take(limit)
        .filter(|a| !field.is_zero(a))
        .find_map(|a| {
            let rest = field.sub(target, &field.square(&a));
            if field.is_zero(&rest) {
                return None;
            }
            field.sqrt(&rest).map(|b| (a, b))
        })
}

/// First `b != 0` in scan order with `b^2 != b^-2`.
pub fn square_ne_inverse_witness<F: Field>(field: &F) -> Result<F::Elem> {
    if let Some(q) = field.size() {
        if matches!(q, 2 | 3 | 5) {
            return Err(Error::FieldTooSmall(q));
        }
    }
    let one = field.one();
    field
        .scan()
        .filter(|b| !field.is_zero(b))
        .find(|b| field.pow(b, 4) != one)
        .ok_or(Error::FieldTooSmall(field.size().unwrap_or(0)))
}

/// The nonzero squares split into an exceptional set and mutually inverse pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClassData<F: Field> {
    field: F,
    /// All nonzero squares in canonical order; `None` over infinite fields.
    pub squares: Option<Vec<F::Elem>>,
    /// `{1}`, or `{-1, 1}` when `-1` is a square in odd characteristic.
    pub exceptional: Vec<F::Elem>,
    /// `(a, a^-1)` pairs for finite fields, ordered by first member.
    pub pairs: Vec<(F::Elem, F::Elem)>,
}

impl<F: Field> SquareClassData<F> {
    /// Number of available pairs; `None` means unbounded.
    pub fn pair_count(&self) -> Option<usize> {
        self.squares.as_ref().map(|_| self.pairs.len())
    }

    /// The first `count` pairs. Over `Q` the pairs `(m^2, m^-2)`, `m = 2, 3, ...`
    /// are generated on demand.
    pub fn take_pairs(&self, count: usize) -> Option<Vec<(F::Elem, F::Elem)>> {
        if self.squares.is_some() {
            return (count <= self.pairs.len()).then(|| self.pairs[..count].to_vec());
        }
        let f = &self.field;
        Some(
            (2..)
                .take(count)
                .map(|m: i64| {
                    let sq = f.square(&f.from_i64(m));
                    let inv = f.inv(&sq).expect("nonzero");
                    (sq, inv)
                })
                .collect(),
        )
    }
}

/// Partitions the nonzero squares into `E` and inverse pairs.
pub fn square_class_pairing<F: Field>(field: &F) -> Result<SquareClassData<F>> {
    let one = field.one();
    let minus_one = field.neg(&one);
    let char2 = field.characteristic() == 2;
    let Some(q) = field.size() else {
        // Over Q, -1 is not a square, so E = {1}.
        return Ok(SquareClassData {
            field: field.clone(),
            squares: None,
            exceptional: alloc::vec![one],
            pairs: Vec::new(),
        });
    };
    if matches!(q, 2 | 3 | 5) {
        return Err(Error::FieldTooSmall(q));
    }
    let mut squares: Vec<F::Elem> = field
        .scan()
        .filter(|a| !field.is_zero(a))
        .map(|a| field.square(&a))
        .collect();
    squares.sort();
    squares.dedup();
    let mut exceptional = Vec::new();
    if !char2 && squares.contains(&minus_one) {
        exceptional.push(minus_one.clone());
    }
    exceptional.push(one.clone());
    exceptional.sort();
    let mut used: Vec<F::Elem> = exceptional.clone();
    let mut pairs = Vec::new();
    for s in &squares {
        if used.contains(s) {
            continue;
        }
        let inv = field.inv(s).expect("nonzero square");
        used.push(s.clone());
        used.push(inv.clone());
        pairs.push((s.clone(), inv));
    }
    Ok(SquareClassData {
        field: field.clone(),
        squares: Some(squares),
        exceptional,
        pairs,
    })
}

/// `true` iff `a` is a nonzero square.
pub fn is_nonzero_square<F: Field>(field: &F, a: &F::Elem) -> bool {
    !field.is_zero(a) && field.sqrt(a).is_some()
}
