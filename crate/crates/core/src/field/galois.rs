use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use super::Field;
use crate::error::{Error, Result};

/// Largest field built with log/antilog tables.
pub const MAX_TABLE_ORDER: u64 = 1 << 20;

/// Fields up to this order also get a full addition table.
const ADD_TABLE_ORDER: u32 = 256;

/// Built-in moduli, ascending coefficients, monic.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[1, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
];

/// Looks up the fixed modulus for `GF(p^k)`, if one is built in.
pub fn builtin_modulus(p: u32, k: u32) -> Option<&'static [u32]> {
    BUILTIN_MODULI
        .iter()
        .find(|(bp, bk, _)| *bp == p && *bk == k)
        .map(|(_, _, m)| *m)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A finite field `GF(p)` or `GF(p^k) = GF(p)[x]/(m(x))`.
///
/// Elements are `u32` codes in `[0, q)`. For extension fields the code of
/// `c0 + c1 x + ... + c_{k-1} x^{k-1}` is `c0 p^{k-1} + c1 p^{k-2} + ... + c_{k-1}`,
/// so integer order on codes is the lexicographic order on coefficient
/// vectors `(c0, c1, ...)`, which is the canonical element order.
#[derive(Clone)]
pub struct GaloisField(Arc<Inner>);

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    // Extension fields only.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Vec<u32>,
}

impl GaloisField {
    /// The prime field `GF(p)`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::FieldTooLarge(p));
        }
        let p = p as u32;
        Ok(GaloisField(Arc::new(Inner {
            p,
            k: 1,
            q: p,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add: Vec::new(),
        })))
    }

    /// `GF(p^k)`, using the built-in modulus when `modulus` is `None`.
    pub fn extension(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        let order = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if order > MAX_TABLE_ORDER as u128 {
            return Err(Error::FieldTooLarge(order.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let modulus: Vec<u32> = match modulus {
            Some(m) => m.to_vec(),
            None => {
                if k == 1 {
                    return Self::prime(p as u64);
                }
                builtin_modulus(p, k)
                    .ok_or(Error::NoBuiltinModulus { p, k })?
                    .to_vec()
            }
        };
        if modulus.len() != k as usize + 1 {
            return Err(Error::BadModulus(alloc::format!(
                "expected {} coefficients, got {}",
                k + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus("coefficient not reduced mod p".into()));
        }
        if modulus[k as usize] != 1 {
            return Err(Error::BadModulus("modulus must be monic".into()));
        }
        if k == 1 {
            // Any monic linear polynomial gives the prime field.
            return Self::prime(p as u64);
        }
        if !poly_is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        Ok(GaloisField(Arc::new(Inner::build_extension(p, k, modulus))))
    }

    /// `GF(q)` for a prime power `q`, using the built-in modulus.
    pub fn of_order(q: u64) -> Result<Self> {
        let p = (2..=q)
            .find(|d| q.is_multiple_of(*d))
            .ok_or(Error::NotPrime(q))?;
        let mut k = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrime(q));
        }
        Self::extension(p, k, None)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, ascending degree (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Coefficient vector `(c0, ..., c_{k-1})` of an element.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        self.0.coeffs(a)
    }

    /// Builds an element from its coefficient vector; `None` if out of range.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Option<u32> {
        if coeffs.len() != self.0.k as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return None;
        }
        Some(self.0.encode(coeffs))
    }

    /// Element from a code in `[0, q)`.
    pub fn element(&self, code: u32) -> Option<u32> {
        (code < self.0.q).then_some(code)
    }

    /// All elements in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let one = self.one();
        let mut x = a;
        let mut ord = 1u64;
        while x != one {
            x = self.mul(&x, &a);
            ord += 1;
        }
        Some(ord)
    }

    /// Text form used by the field-spec grammar: `GF(7)` or `GF(9;1,0,1)`.
    pub fn spec_string(&self) -> String {
        if self.0.k == 1 {
            alloc::format!("GF({})", self.0.p)
        } else {
            let mut s = alloc::format!("GF({};", self.0.q);
            for (i, c) in self.0.modulus.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{c}");
            }
            s.push(')');
            s
        }
    }
}

impl Inner {
    fn build_extension(p: u32, k: u32, modulus: Vec<u32>) -> Inner {
        let q = p.pow(k);
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add: Vec::new(),
        };
        inner.neg = (0..q)
            .map(|a| {
                let c: Vec<u32> = inner.coeffs(a).iter().map(|&x| (p - x) % p).collect();
                inner.encode(&c)
            })
            .collect();
        // Primitive element: first canonical element whose powers exhaust the group.
        let one = inner.encode_scalar(1);
        let mut exp = Vec::with_capacity(q as usize - 1);
        for g in 1..q {
            exp.clear();
            let gc = inner.coeffs(g);
            let mut x = inner.coeffs(one);
            loop {
                exp.push(inner.encode(&x));
                x = poly_mulmod(&x, &gc, &inner.modulus, p);
                if inner.encode(&x) == one {
                    break;
                }
            }
            if exp.len() == q as usize - 1 {
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        inner.exp = exp;
        inner.log = log;
        if q <= ADD_TABLE_ORDER {
            let mut add = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = inner.add_digits(a, b);
                }
            }
            inner.add = add;
        }
        inner
    }

    fn coeffs(&self, mut a: u32) -> Vec<u32> {
        let k = self.k as usize;
        let mut c = vec![0u32; k];
        for i in (0..k).rev() {
            c[i] = a % self.p;
            a /= self.p;
        }
        c
    }

    fn encode(&self, c: &[u32]) -> u32 {
        c.iter().fold(0u32, |acc, &x| acc * self.p + x)
    }

    fn encode_scalar(&self, s: u32) -> u32 {
        s * self.p.pow(self.k - 1)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for d in (k..2 * k).rev() {
        let lead = prod[d];
        if lead == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &m) in modulus.iter().take(k).enumerate() {
            let sub = lead * m as u64 % p64;
            prod[d - k + i] = (prod[d - k + i] + p64 - sub) % p64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|x| x as u32).collect()
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p); ascending coefficients.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dm;
        for (i, &c) in m.iter().take(dm).enumerate() {
            let sub = lead * c as u64 % p64;
            r[shift + i] = (r[shift + i] + p64 - sub) % p64;
        }
    }
    r.into_iter().map(|x| x as u32).collect()
}

/// Exhaustive trial division by every monic polynomial of degree `1..=deg/2`.
pub fn poly_is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let quo = r / new_r;
        (t, new_t) = (new_t, t - quo * new_t);
        (r, new_r) = (new_r, r - quo * new_r);
    }
    if t < 0 {
        t += p as i64;
    }
    t as u64
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl Field for GaloisField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        if self.0.k == 1 {
            1
        } else {
            self.0.encode_scalar(1)
        }
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let i = &*self.0;
        if i.k == 1 {
            ((*a as u64 + *b as u64) % i.p as u64) as u32
        } else if !i.add.is_empty() {
            i.add[(*a * i.q + *b) as usize]
        } else {
            i.add_digits(*a, *b)
        }
    }

    fn neg(&self, a: &u32) -> u32 {
        let i = &*self.0;
        if i.k == 1 {
            if *a == 0 {
                0
            } else {
                i.p - *a
            }
        } else {
            i.neg[*a as usize]
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        let i = &*self.0;
        if i.k == 1 {
            ((*a as u64 * *b as u64) % i.p as u64) as u32
        } else if *a == 0 || *b == 0 {
            0
        } else {
            let s = i.log[*a as usize] as u64 + i.log[*b as usize] as u64;
            i.exp[(s % (i.q as u64 - 1)) as usize]
        }
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let i = &*self.0;
        if i.k == 1 {
            Some(mod_inverse(*a as u64, i.p as u64) as u32)
        } else {
            let l = i.log[*a as usize];
            let n = i.q - 1;
            Some(i.exp[((n - l) % n) as usize])
        }
    }

    fn from_i64(&self, v: i64) -> u32 {
        let r = v.rem_euclid(self.0.p as i64) as u32;
        if self.0.k == 1 {
            r
        } else {
            self.0.encode_scalar(r)
        }
    }

    fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    fn size(&self) -> Option<u64> {
        Some(self.0.q as u64)
    }

    fn scan(&self) -> Box<dyn Iterator<Item = u32> + '_> {
        Box::new(0..self.0.q)
    }

    fn sqrt(&self, a: &u32) -> Option<u32> {
        (0..self.0.q).find(|b| self.mul(b, b) == *a)
    }

    fn token(&self, a: &u32) -> String {
        if self.0.k == 1 {
            alloc::format!("{a}")
        } else {
            let c = self.0.coeffs(*a);
            let mut s = String::from("(");
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{x}");
            }
            s.push(')');
            s
        }
    }

    fn describe(&self) -> String {
        self.spec_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_multiplication_forced_by_modulus() {
        let f = GaloisField::extension(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let g = f.from_coeffs(&[0, 1]).unwrap();
        let g_plus_1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(&g, &g), g_plus_1);
        assert_eq!(f.order(), 4);
    }

    #[test]
    fn gf9_with_x2_plus_1() {
        // x^2 + 1 has no root mod 3: 1, 2, 2 for x = 0, 1, 2.
        for x in 0..3u32 {
            assert_ne!((x * x + 1) % 3, 0);
        }
        let f = GaloisField::extension(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f.order(), 9);
        let i = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.mul(&i, &i), f.from_i64(-1));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over GF(2).
        assert_eq!(
            GaloisField::extension(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus(2))
        );
        // x^2 + 1 = (x - 2)(x - 3) over GF(5).
        assert_eq!(
            GaloisField::extension(5, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus(5))
        );
        // degree 4 with only quadratic factors: (x^2+x+1)^2 over GF(2)
        assert_eq!(
            GaloisField::extension(2, 4, Some(&[1, 0, 1, 0, 1])),
            Err(Error::ReducibleModulus(2))
        );
    }

    #[test]
    fn construction_errors() {
        assert_eq!(GaloisField::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(
            GaloisField::extension(7, 2, None),
            Err(Error::NoBuiltinModulus { p: 7, k: 2 })
        );
        assert!(matches!(
            GaloisField::extension(3, 2, Some(&[1, 0, 2])),
            Err(Error::BadModulus(_))
        ));
    }

    #[test]
    fn builtin_moduli_are_irreducible() {
        for &(p, k, m) in BUILTIN_MODULI {
            assert!(poly_is_irreducible(m, p), "GF({p}^{k})");
            let f = GaloisField::extension(p as u64, k, None).unwrap();
            assert_eq!(f.order(), p.pow(k));
        }
    }

    #[test]
    fn prime_inverse() {
        let f = GaloisField::prime(5).unwrap();
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn tokens() {
        let f = GaloisField::extension(3, 2, None).unwrap();
        let e = f.from_coeffs(&[2, 1]).unwrap();
        assert_eq!(f.token(&e), "(2,1)");
        assert_eq!(f.spec_string(), "GF(9;1,0,1)");
        assert_eq!(GaloisField::prime(7).unwrap().spec_string(), "GF(7)");
    }

    #[test]
    fn canonical_order_is_lexicographic_on_coefficients() {
        let f = GaloisField::extension(2, 2, None).unwrap();
        let listed: Vec<Vec<u32>> = f.iter().map(|a| f.coeffs(a)).collect();
        assert_eq!(listed, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
