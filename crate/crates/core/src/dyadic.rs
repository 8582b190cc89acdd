//! Exact dyadic rationals.
//!
//! Orbifold Euler characteristics and Charney-Davis sums live in Z[1/2], so
//! a numerator plus a power-of-two denominator is all the arithmetic this
//! crate ever needs. Values are kept in lowest terms: the numerator is odd
//! unless the exponent is zero, and zero is stored as `0 / 2^0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A rational number of the form `num / 2^exp` in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u64,
}

impl Dyadic {
    /// Builds `num / 2^exp` and reduces it to canonical form.
    pub fn new(num: impl Into<BigInt>, exp: u64) -> Self {
        let mut d = Dyadic {
            num: num.into(),
            exp,
        };
        d.reduce();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: 0,
        }
    }

    /// `(-1/2)^k`, the weight attached to a codimension-`k` stratum.
    pub fn neg_half_pow(k: u64) -> Self {
        let num = if k.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        Dyadic { num, exp: k }
    }

    /// `(1/2)^k`.
    pub fn half_pow(k: u64) -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: k,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic {
            num: n.into(),
            exp: 0,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    /// Exact integer value, if the value is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.exp == 0 {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// Multiplies by an integer.
    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        Dyadic::new(&self.num * k.into(), self.exp)
    }

    /// Divides by `2^k`.
    pub fn shift_down(&self, k: u64) -> Self {
        if self.num.is_zero() {
            Dyadic::zero()
        } else {
            Dyadic {
                num: self.num.clone(),
                exp: self.exp + k,
            }
        }
    }

    /// Multiplies by `2^k` (exact; may stay fractional).
    pub fn shift_up(&self, k: u64) -> Self {
        if k >= self.exp {
            Dyadic {
                num: &self.num << (k - self.exp),
                exp: 0,
            }
        } else {
            Dyadic {
                num: self.num.clone(),
                exp: self.exp - k,
            }
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && !self.num.bit(0) {
            self.num >>= 1;
            self.exp -= 1;
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        // Compare num1 * 2^e2 with num2 * 2^e1.
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp);
        let b = &other.num << (e - other.exp);
        a.cmp(&b)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let a = &self.num << (e - self.exp);
        let b = &rhs.num << (e - rhs.exp);
        Dyadic::new(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}
