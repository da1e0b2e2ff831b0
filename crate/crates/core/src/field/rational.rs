use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Field;

/// The rational numbers with arbitrary-precision entries.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Rationals {
    pub fn ratio(&self, num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl fmt::Debug for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Q")
    }
}

impl fmt::Display for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Q")
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Enumerates every rational once, by height `h = max(|num|, den)`:
/// `0`, then for each `h` the integers `h, -h` followed by the proper
/// fractions of that height in increasing numerator order, each with its negative.
struct RationalScan {
    height: i64,
    num: i64,
    stage: u8,
}

impl Iterator for RationalScan {
    type Item = BigRational;

    fn next(&mut self) -> Option<BigRational> {
        loop {
            match self.stage {
                0 => {
                    self.stage = 1;
                    self.height = 1;
                    return Some(BigRational::zero());
                }
                1 => {
                    self.stage = 2;
                    return Some(BigRational::from_integer(self.height.into()));
                }
                2 => {
                    self.stage = 3;
                    self.num = 1;
                    return Some(BigRational::from_integer((-self.height).into()));
                }
                3 => {
                    // num / height with num < height, gcd 1
                    if self.num >= self.height {
                        self.height += 1;
                        self.stage = 1;
                        continue;
                    }
                    let n = self.num;
                    if n.gcd(&self.height) != 1 {
                        self.num += 1;
                        continue;
                    }
                    self.stage = 4;
                    return Some(BigRational::new(n.into(), self.height.into()));
                }
                _ => {
                    let n = self.num;
                    self.num += 1;
                    self.stage = 3;
                    return Some(BigRational::new((-n).into(), self.height.into()));
                }
            }
        }
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn scan(&self) -> Box<dyn Iterator<Item = BigRational> + '_> {
        Box::new(RationalScan {
            height: 0,
            num: 0,
            stage: 0,
        })
    }

    /// Nonnegative root when one exists.
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        let n = exact_sqrt(a.numer())?;
        let d = exact_sqrt(a.denom())?;
        Some(BigRational::new(n, d))
    }

    fn token(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            alloc::format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn describe(&self) -> String {
        "Q".into()
    }

    fn is_ordered(&self) -> bool {
        true
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}
