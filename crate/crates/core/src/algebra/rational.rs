//! Reduced rationals over `i128`.
//!
//! Every value arising in this crate has small numerators and denominators
//! (orbit indices up to about 10^6, denominators from circle endpoints), so a
//! fixed-width representation is sufficient. Arithmetic overflow is treated as
//! an invariant violation and panics with a clear message instead of wrapping.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;

/// A rational number `num / den` with `den > 0` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

const OVERFLOW: &str = "rational arithmetic overflowed i128";

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num / den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = n.checked_neg().expect(OVERFLOW);
            d = d.checked_neg().expect(OVERFLOW);
        }
        Rational { num: n, den: d }
    }

    pub const fn from_integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn signum(&self) -> i32 {
        self.num.signum() as i32
    }

    pub fn abs(&self) -> Self {
        Rational { num: self.num.checked_abs().expect(OVERFLOW), den: self.den }
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.num, &self.den)
    }

    pub fn recip(&self) -> Self {
        Rational::new(self.den, self.num)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n as i128)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        let l = self.den.lcm(&rhs.den);
        let a = self.num.checked_mul(l / self.den).expect(OVERFLOW);
        let b = rhs.num.checked_mul(l / rhs.den).expect(OVERFLOW);
        Rational::new(a.checked_add(b).expect(OVERFLOW), l)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: self.num.checked_neg().expect(OVERFLOW), den: self.den }
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        // cross-reduce first to keep intermediates small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (g1, g2) = (g1.max(1), g2.max(1));
        let n = (self.num / g1).checked_mul(rhs.num / g2).expect(OVERFLOW);
        let d = (self.den / g2).checked_mul(rhs.den / g1).expect(OVERFLOW);
        Rational::new(n, d)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        self * rhs.recip()
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.num.checked_mul(other.den).expect(OVERFLOW);
        let b = other.num.checked_mul(self.den).expect(OVERFLOW);
        a.cmp(&b)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
